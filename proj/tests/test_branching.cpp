#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vbranch/branching.hpp"

#include <algorithm>

using namespace vb;

namespace {

BranchingContext context(const PairSpec& spec, const std::string& parabolic) {
  auto pair = build_pair(spec);
  return make_context(pair, named_parabolic(pair.g, pair.datum, parabolic));
}

Integer total(const WeightMultiset& m) {
  Integer s = 0;
  for (const auto& [w, k] : m) s += k;
  return s;
}

}  // namespace

TEST_CASE("symmetric powers") {
  std::vector<RVector> two{{-1, 0}, {0, -1}};
  auto s2 = sym_power_character(two, 2);
  CHECK(s2 == WeightMultiset{{{-2, 0}, 1}, {{-1, -1}, 1}, {{0, -2}, 1}});
  std::vector<RVector> one{{3, -1}};
  CHECK(sym_power_character(one, 4) == WeightMultiset{{{12, -4}, 1}});
  std::vector<RVector> siegel{{-2, 0}, {-1, -1}, {0, -2}};
  auto s = sym_power_character(siegel, 2);
  CHECK(s.size() == 5);
  CHECK(total(s) == 6);
  CHECK(s.at({-2, -2}) == 2);
  CHECK(sym_power_character(siegel, 0) == WeightMultiset{{{0, 0}, 1}});
}

TEST_CASE("restricted finite modules") {
  auto borel = context(PairSpec::sl_s_glgl(2, 2), "borel");
  RVector lam{Rational(1, 3), 0, 0, Rational(-1, 3)};
  auto f = restrict_finite_module(borel, lam);
  CHECK(f == WeightMultiset{{borel.pair.restrict_weight(lam), 1}});

  auto heis = context(PairSpec::sl_s_glgl(2, 2), "heisenberg");
  auto v = make_verma(heis);
  CHECK(v.scalar_type);
  CHECK(restrict_finite_module(heis, v.lambda).size() == 1);

  auto siegel = context(PairSpec::sp_down_gl(2), "siegel");
  auto fs = restrict_finite_module(siegel, {1, -1});
  CHECK(total(fs) == 3);
  auto fr = restrict_finite_module(siegel, {2, -1});
  CHECK(total(fr) == 4);
  CHECK(fr.size() == 4);
  CHECK_THROWS_AS(restrict_finite_module(siegel, {-1, 1}), PreconditionError);
  CHECK_THROWS_AS(make_verma(siegel, {0, 1}), PreconditionError);
}

TEST_CASE("character decomposition") {
  auto torus = context(PairSpec::sl_s_glgl(1, 1), "borel");
  WeightMultiset any{{{1, -1}, 2}, {{3, -3}, 1}};
  auto dec = decompose_character(any, torus.l_prime);
  CHECK(dec.size() == 2);

  auto a1 = root_datum(build_classical({Family::A, 1}));
  WeightMultiset adj_plus_triv{{{1, -1}, 1}, {{0, 0}, 2}, {{-1, 1}, 1}};
  auto d2 = decompose_character(adj_plus_triv, a1);
  REQUIRE(d2.size() == 2);
  CHECK(d2[0] == std::pair<RVector, Integer>{{1, -1}, 1});
  CHECK(d2[1] == std::pair<RVector, Integer>{{0, 0}, 1});

  auto siegel = context(PairSpec::sp_down_gl(2), "siegel");
  std::vector<RVector> w{{-2, 0}, {-1, -1}, {0, -2}};
  auto d3 = decompose_character(sym_power_character(w, 2), siegel.l_prime);
  CHECK(d3 == std::vector<std::pair<RVector, Integer>>{{{0, -4}, 1}, {{-2, -2}, 1}});

  WeightMultiset broken{{{1, -1}, 1}};
  CHECK_THROWS_AS(decompose_character(broken, a1), InternalError);
  WeightMultiset lopsided{{{1, -1}, 1}, {{0, 0}, 1}};
  CHECK_THROWS_AS(decompose_character(lopsided, a1), InternalError);
}

TEST_CASE("decomposition round trip") {
  auto ctx = context(PairSpec::sp_down_gl(3), "siegel");
  auto s = sym_power_series(ctx.u_minus_anti, 3, 3);
  for (const auto& chi : s) {
    WeightMultiset back;
    for (const auto& [hw, m] : decompose_character(chi, ctx.l_prime))
      for (const auto& [w, k] : freudenthal_character(ctx.l_prime, hw)) back[w] += m * k;
    CHECK(back == chi);
  }
  auto c3 = root_datum(build_classical({Family::C, 3}));
  auto ch = tensor(freudenthal_character(c3, {1, 0, 0}), freudenthal_character(c3, {1, 1, 0}));
  WeightMultiset back;
  for (const auto& [hw, m] : decompose_character(ch, c3))
    for (const auto& [w, k] : freudenthal_character(c3, hw)) back[w] += m * k;
  CHECK(back == ch);
}

TEST_CASE("branching: gl2 to gl1 + gl1") {
  auto ctx = context(PairSpec::gl_down_gl(1, 1), "borel");
  auto t = branch_multiplicities(ctx, make_verma(ctx), 3);
  CHECK(t.as_map() == std::map<RVector, Integer>{{{0, 0}, 1}, {{-1, 1}, 1}, {{-2, 2}, 1}, {{-3, 3}, 1}});
  CHECK(t.multiplicity_free());
  for (const auto& e : t.entries) CHECK(e.degree == -e.delta_displacement[0]);
}

TEST_CASE("branching: so5 to so4") {
  auto ctx = context(PairSpec::so_down_so(4), "borel");
  auto t = branch_multiplicities(ctx, make_verma(ctx), 2);
  CHECK(t.entries.size() == 6);
  CHECK(t.multiplicity_free());
  CHECK(t.as_map() == closed_form_law(LawFamily::BD, 2, 0, 2).as_map());
  CHECK_FALSE(t.assumptions.empty());
}

TEST_CASE("branching: Heisenberg, scalar type, sl4 to s(gl2 + gl2)") {
  auto ctx = context(PairSpec::sl_s_glgl(2, 2), "heisenberg");
  auto t = branch_multiplicities(ctx, make_verma(ctx), 2);
  CHECK(t.multiplicity_free());
  CHECK(t.entries.size() > 1);
}

TEST_CASE("incompatible triples are rejected") {
  auto pair = build_pair(PairSpec::group_case({Family::A, 1}));
  auto p = parabolic_from_eps(pair.g, pair.datum, {Rational(1, 2), Rational(-1, 2), Rational(-1, 2), Rational(1, 2)});
  try {
    make_context(pair, p);
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()) == "restriction not discretely decomposable for this embedding");
  }
}

TEST_CASE("character identity") {
  auto gl2 = context(PairSpec::gl_down_gl(1, 1), "borel");
  CHECK(verify_character_identity(gl2, make_verma(gl2), 4));

  auto so5 = context(PairSpec::so_down_so(4), "borel");
  auto v = make_verma(so5);
  CHECK(verify_character_identity(so5, v, 3));
  auto table = branch_multiplicities(so5, v, so5.degree_cap(3));
  auto bad = table;
  bad.entries[1].multiplicity += 1;
  CHECK_FALSE(verify_character_identity(so5, v, bad, 3));
  auto dropped = table;
  auto in_range = std::find_if(dropped.entries.rbegin(), dropped.entries.rend(),
                               [&](const BranchingEntry& e) { return e.level <= 3 && e.degree > 0; });
  REQUIRE(in_range != dropped.entries.rend());
  dropped.entries.erase(std::next(in_range).base());
  CHECK_FALSE(verify_character_identity(so5, v, dropped, 3));

  auto siegel = context(PairSpec::sp_down_gl(2), "siegel");
  CHECK(verify_character_identity(siegel, make_verma(siegel, {2, -1}), 4));
  auto so6 = context(PairSpec::so_down_so(5), "levi:1");
  CHECK(verify_character_identity(so6, make_verma(so6, {1, 0, 0}), 3));
  auto gc = context(PairSpec::group_case({Family::A, 2}), "levi:1,3");
  CHECK(verify_character_identity(gc, make_verma(gc, {Rational(1, 3), Rational(1, 3), Rational(-2, 3),
                                                      Rational(1, 3), Rational(1, 3), Rational(-2, 3)}), 3));
}

TEST_CASE("finiteness bound") {
  for (auto [spec, par, lam] : std::vector<std::tuple<PairSpec, std::string, RVector>>{
           {PairSpec::sl_s_glgl(2, 2), "heisenberg", {}},
           {PairSpec::sp_down_gl(2), "siegel", {2, -1}},
           {PairSpec::so_down_so(5), "borel", {}},
           {PairSpec::group_case({Family::A, 1}), "borel", {}}}) {
    CAPTURE(spec.id());
    auto ctx = context(spec, par);
    auto v = make_verma(ctx, lam);
    const int N = 3;
    auto small = branch_multiplicities(ctx, v, N), big = branch_multiplicities(ctx, v, N + 2);
    auto bm = big.as_map();
    for (const auto& e : small.entries) {
      CHECK(e.degree <= e.max_degree);
      if (e.complete) CHECK(bm.at(e.delta_displacement) == e.multiplicity);
    }
    for (const auto& e : big.entries) {
      CHECK(e.degree <= e.max_degree);
      if (e.max_degree <= N) CHECK(small.as_map().count(e.delta_displacement));
    }
  }
}

TEST_CASE("strongly orthogonal roots") {
  auto siegel = context(PairSpec::sp_down_gl(2), "siegel");
  auto nu = strongly_orthogonal_sequence(siegel.u_minus_anti, restricted_root_set(siegel), siegel.pair.j_prime);
  CHECK(nu == std::vector<RVector>{{0, -2}, {-2, 0}});
  std::vector<RVector> single{{1, -1}};
  CHECK(strongly_orthogonal_sequence(single, {}, siegel.pair.j_prime) == single);
  CHECK(strongly_orthogonal_sequence({}, {}, siegel.pair.j_prime).empty());

  auto grass = context(PairSpec::sl_s_glgl(2, 2), "levi:1,3");
  CHECK(grass.u_minus_anti.size() == 4);
  CHECK(strongly_orthogonal_sequence(grass.u_minus_anti, restricted_root_set(grass), grass.pair.j_prime).size() == 2);
}

TEST_CASE("Schmid decompositions") {
  auto siegel = context(PairSpec::sp_down_gl(2), "siegel");
  auto rep = schmid_decomposition(siegel, 2);
  std::set<RVector> upto2;
  for (int d = 0; d <= 2; ++d) upto2.insert(rep.D[d].begin(), rep.D[d].end());
  CHECK(upto2 == std::set<RVector>{{0, 0}, {0, -2}, {0, -4}, {-2, -2}});
  CHECK(rep.multiplicity_free);
  CHECK(rep.matches_D);

  auto grass = context(PairSpec::sl_s_glgl(2, 2), "levi:1,3");
  auto r2 = schmid_decomposition(grass, 3);
  CHECK(r2.multiplicity_free);
  CHECK(r2.matches_D);

  auto r0 = schmid_decomposition(siegel, 0);
  CHECK(r0.D[0] == std::set<RVector>{{0, 0}});

  auto heis = context(PairSpec::sl_s_glgl(2, 2), "heisenberg");
  CHECK_THROWS_WITH_AS(schmid_decomposition(heis, 2), "abelian-nilradical hypothesis violated", PreconditionError);
}

TEST_CASE("scalar type over a multiplicity-free space gives D") {
  auto ctx = context(PairSpec::sp_down_gl(3), "siegel");
  const int N = 3;
  auto rep = schmid_decomposition(ctx, N);
  auto t = branch_multiplicities(ctx, make_verma(ctx), N);
  std::map<RVector, Integer> expect;
  for (const auto& [d, ws] : rep.D)
    for (const auto& w : ws) expect[w] = 1;
  CHECK(t.as_map() == expect);
}

TEST_CASE("closed form laws") {
  auto aa = closed_form_law(LawFamily::AA, 1, 1, 2).as_map();
  CHECK(aa == std::map<RVector, Integer>{{{0, 0}, 1}, {{-1, 1}, 1}, {{-2, 2}, 1}});
  auto bd = closed_form_law(LawFamily::BD, 2, 0, 1).as_map();
  CHECK(bd == std::map<RVector, Integer>{{{0, 0}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}});
  auto db = closed_form_law(LawFamily::DB, 2, 0, 1).as_map();
  CHECK(db == bd);
  auto aa3 = closed_form_law(LawFamily::AA, 2, 2, 1).as_map();
  CHECK(aa3 == std::map<RVector, Integer>{{{0, 0, 0}, 1}, {{-1, 1, 0}, 1}, {{0, -1, 1}, 1}});
  CHECK_THROWS_AS(closed_form_law(LawFamily::AA, 2, 4, 1), PreconditionError);
  CHECK(parse_law("DB") == LawFamily::DB);
  CHECK_THROWS_AS(parse_law("CC"), PreconditionError);
}

TEST_CASE("engine reproduces the explicit laws") {
  for (int n = 1; n <= 2; ++n)
    for (int l = 1; l <= n + 1; ++l) {
      auto pair = build_pair(law_pair(LawFamily::AA, n, l));
      auto ctx = make_context(pair, named_parabolic(pair.g, pair.datum, "borel"));
      CHECK(branch_multiplicities(ctx, make_verma(ctx), 3).as_map() == closed_form_law(LawFamily::AA, n, l, 3).as_map());
    }
  auto pair = build_pair(law_pair(LawFamily::DB, 2, 0));
  auto ctx = make_context(pair, named_parabolic(pair.g, pair.datum, "borel"));
  CHECK(branch_multiplicities(ctx, make_verma(ctx), 3).as_map() == closed_form_law(LawFamily::DB, 2, 0, 3).as_map());
}

TEST_CASE("genericity") {
  auto sl2 = context(PairSpec::sl_s_glgl(1, 1), "borel");
  auto t = branch_multiplicities(sl2, make_verma(sl2), 0);
  CHECK(genericity_check(sl2, {Rational(-1, 4), Rational(1, 4)}, t).simple_certified);
  CHECK_FALSE(genericity_check(sl2, {0, 0}, t).simple_certified);

  auto so5 = context(PairSpec::so_down_so(4), "borel");
  auto bd = branch_multiplicities(so5, make_verma(so5), 2);
  CHECK(genericity_check(so5, {Rational(1, 2), Rational(1, 3)}, bd).distinct_infchar);
  CHECK_FALSE(genericity_check(so5, {0, 0}, bd).distinct_infchar);
}

TEST_CASE("mf scan") {
  auto scan = mf_scan(3);
  bool saw_sl3 = false, saw_so5 = false, saw_sl4 = false;
  for (const auto& e : scan) {
    if (e.spec.id() == "sl_s_glgl:p=2,q=1") {
      saw_sl3 = true;
      CHECK(e.dim_g - e.dim_fixed == 4);
      CHECK(e.passes);
    }
    if (e.spec.id() == "so_down_so:m=4") {
      saw_so5 = true;
      CHECK(e.passes);
    }
    if (e.spec.id() == "sl_s_glgl:p=2,q=2") {
      saw_sl4 = true;
      CHECK(e.dim_g - e.dim_fixed == 8);
      CHECK(e.rank_g + e.rank_fixed == 6);
      CHECK_FALSE(e.passes);
    }
  }
  CHECK(saw_sl3);
  CHECK(saw_so5);
  CHECK(saw_sl4);
  CHECK_THROWS_AS(mf_scan(7), PreconditionError);
}
