// One PASS/FAIL line per acceptance criterion.  Exit status is the number of
// failures.

#include "vbranch/branching.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

using namespace vb;

namespace {

std::ostringstream note;

bool expect(bool ok, const std::string& what) {
  if (!ok) note << what << "; ";
  return ok;
}

std::multiset<int> gk_dims(const OrbitCensusReport& r) {
  std::multiset<int> out;
  for (const auto& e : r.representatives) out.insert(e.gk_dim);
  return out;
}

OrbitCensusReport census(const PairSpec& spec, const std::string& parabolic) {
  auto pair = build_pair(spec);
  return closed_orbit_census(pair, named_subset(pair.datum, parabolic));
}

// Catalog instances whose g has rank at most 4.
std::vector<PairSpec> small_catalog() {
  std::vector<PairSpec> out;
  for (int n = 1; n <= 3; ++n)
    for (int l = 1; l <= n + 1; ++l) out.push_back(PairSpec::gl_down_gl(n, l));
  for (int p = 1; p <= 4; ++p)
    for (int q = 1; p + q <= 5; ++q) out.push_back(PairSpec::sl_s_glgl(p, q));
  for (int m = 4; m <= 8; ++m) out.push_back(PairSpec::so_down_so(m));
  for (int n = 2; n <= 4; ++n) out.push_back(PairSpec::sp_down_gl(n));
  for (auto t : {ClassicalType{Family::A, 1}, ClassicalType{Family::A, 2}, ClassicalType{Family::B, 2},
                 ClassicalType{Family::C, 2}})
    out.push_back(PairSpec::group_case(t));
  return out;
}

std::vector<std::vector<std::size_t>> all_subsets(std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

bool c1() {
  auto r = census(PairSpec::sl_s_glgl(2, 2), "borel");
  return expect(r.closed_count == 6, "closed_count " + std::to_string(r.closed_count));
}

bool c2() {
  bool ok = true;
  for (auto [p, q] : {std::pair{2, 2}, std::pair{2, 3}}) {
    auto r = census(PairSpec::sl_s_glgl(p, q), "heisenberg");
    ok &= expect(r.closed_count == 4, "count at " + std::to_string(p) + "," + std::to_string(q));
    ok &= expect(gk_dims(r) == std::multiset<int>{2 * p - 3, p + q - 2, p + q - 2, 2 * q - 3},
                 "gk dims at " + std::to_string(p) + "," + std::to_string(q));
  }
  return ok;
}

bool c3() {
  bool ok = true;
  for (int n = 2; n <= 4; ++n) {
    auto r = census(PairSpec::sp_down_gl(n), "siegel");
    std::multiset<int> want;
    for (int j = 0; j <= n; ++j) want.insert(j * (n - j));
    ok &= expect(r.closed_count == static_cast<std::size_t>(n + 1), "count n=" + std::to_string(n));
    ok &= expect(gk_dims(r) == want, "gk dims n=" + std::to_string(n));
  }
  return ok;
}

bool c4() {
  bool ok = true;
  for (int n = 1; n <= 3; ++n)
    ok &= expect(census(PairSpec::gl_down_gl(n, 1), "borel").closed_count == static_cast<std::size_t>(n + 1),
                 "gl n=" + std::to_string(n));
  for (int n = 2; n <= 3; ++n)
    ok &= expect(census(PairSpec::so_down_so(2 * n), "borel").closed_count == 2, "so odd n=" + std::to_string(n));
  ok &= expect(census(PairSpec::so_down_so(5), "borel").closed_count == 1, "so6 down so5");
  return ok;
}

bool law_matches(LawFamily f, int n, int l, int N) {
  auto pair = build_pair(law_pair(f, n, l));
  auto ctx = make_context(pair, named_parabolic(pair.g, pair.datum, "borel"));
  auto t = branch_multiplicities(ctx, make_verma(ctx), N);
  bool ok = t.as_map() == closed_form_law(f, n, l, N).as_map() && t.multiplicity_free();
  return expect(ok, law_name(f) + " n=" + std::to_string(n) + " l=" + std::to_string(l));
}

bool c5() {
  bool ok = true;
  for (int n = 1; n <= 3; ++n)
    for (int l = 1; l <= n + 1; ++l) ok &= law_matches(LawFamily::AA, n, l, 4);
  for (int n = 2; n <= 3; ++n) ok &= law_matches(LawFamily::BD, n, 0, 4);
  ok &= law_matches(LawFamily::DB, 2, 0, 4);
  return ok;
}

bool c6() {
  bool ok = true;
  int triples = 0, mutations = 0;
  for (const auto& spec : small_catalog()) {
    auto pair = build_pair(spec);
    for (const auto& subset : all_subsets(pair.datum.simple.size())) {
      auto p = parabolic_from_simple_subset(pair.g, pair.datum, subset);
      if (!compatibility_report(p, pair).compatible) continue;
      auto ctx = make_context(pair, p);
      auto v = make_verma(ctx);
      auto t = branch_multiplicities(ctx, v, ctx.degree_cap(4));
      ++triples;
      ok &= expect(verify_character_identity(ctx, v, t, 4), spec.id() + " " + p.name);
      for (auto& e : t.entries)
        if (e.level <= 4) {
          e.multiplicity += 1;
          ++mutations;
          ok &= expect(!verify_character_identity(ctx, v, t, 4), "mutation accepted " + spec.id() + " " + p.name);
          break;
        }
    }
  }
  note << triples << " triples, " << mutations << " mutations; ";
  return ok && triples > 0;
}

struct SweepRow {
  std::string where;
  bool borel = false, closed = false, spot_check = false, tau_stable = false, levi = false;
};

// Every W-translate of every standard parabolic of small_catalog(), once.
const std::vector<SweepRow>& sweep() {
  static const std::vector<SweepRow> rows = [] {
    std::vector<SweepRow> out;
    for (const auto& spec : small_catalog()) {
      auto pair = build_pair(spec);
      for (const auto& subset : all_subsets(pair.datum.simple.size()))
        for (const auto& p : weyl_translates(pair.g, pair.datum, subset)) {
          auto rep = closedness_report(p, pair);
          SweepRow row;
          row.where = spec.id() + " H=" + to_string(p.h);
          row.borel = p.is_borel();
          row.closed = rep.closed;
          row.spot_check = nilpotent_elements_spot_check(rep.pr_u, pair, 20240601, 20);
          if (row.borel) row.tau_stable = compatibility_report(p, pair).tau_stable;
          row.levi = rep.closed && rep.levi_decomposition_verified &&
                     rep.p_tau.dim() == rep.l_tau.dim() + rep.pr_u.dim() &&
                     rep.gk_dim == static_cast<int>(rep.pr_u.dim());
          out.push_back(std::move(row));
        }
    }
    return out;
  }();
  return rows;
}

bool c7() {
  bool ok = true;
  for (const auto& r : sweep()) {
    ok &= expect(r.closed == r.spot_check, "spot check " + r.where);
    if (r.borel) ok &= expect(r.closed == r.tau_stable, "borel tau-stability " + r.where);
  }
  note << sweep().size() << " parabolics; ";
  return ok;
}

bool c8() {
  bool ok = true;
  int closed = 0;
  for (const auto& r : sweep())
    if (r.closed) {
      ++closed;
      ok &= expect(r.levi, "levi " + r.where);
    }
  note << closed << " closed; ";
  return ok && closed > 0;
}

bool c9() {
  std::set<std::string> passing, want;
  for (const auto& e : mf_scan(5))
    if (e.passes) passing.insert(e.spec.id());
  for (int n = 1; n <= 5; ++n) want.insert(PairSpec::sl_s_glgl(n, 1).id());
  for (int m = 4; (m + 1) / 2 <= 5; ++m) want.insert(PairSpec::so_down_so(m).id());
  return expect(passing == want, "passing set differs");
}

bool schmid_ok(const PairSpec& spec, const std::string& parabolic) {
  auto pair = build_pair(spec);
  auto ctx = make_context(pair, named_parabolic(pair.g, pair.datum, parabolic));
  auto rep = schmid_decomposition(ctx, 4);
  return expect(rep.multiplicity_free && rep.matches_D, spec.id());
}

bool c10() {
  bool ok = true;
  for (int n = 2; n <= 3; ++n) ok &= schmid_ok(PairSpec::sp_down_gl(n), "siegel");
  ok &= schmid_ok(PairSpec::sl_s_glgl(2, 2), "levi:1,3");
  return ok;
}

bool c11() {
  bool ok = true;
  for (auto t : {ClassicalType{Family::A, 3}, ClassicalType{Family::B, 2}, ClassicalType{Family::C, 3},
                 ClassicalType{Family::D, 4}}) {
    auto g = build_classical(t);
    auto basis = g.algebra.matrices();
    bool jacobi = true;
    for (std::size_t i = 0; i < basis.size(); i += 3)
      for (std::size_t j = 1; j < basis.size(); j += 2)
        for (std::size_t k = 0; k < basis.size(); k += 5) {
          const auto &x = basis[i], &y = basis[j], &z = basis[k];
          jacobi &= (bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))).is_zero();
        }
    ok &= expect(jacobi, "jacobi " + t.name());

    auto datum = root_datum(g);
    for (const auto& hw : std::vector<RVector>{RVector(datum.rho.size(), 0), datum.rho}) {
      Integer total = 0;
      for (const auto& [w, m] : freudenthal_character(datum, hw)) total += m;
      ok &= expect(total == weyl_dimension(datum, hw), "weyl dimension " + t.name());
    }
    std::optional<RVector> dominant_root;
    for (std::size_t i = 0; i < datum.roots.size(); ++i)
      if (datum.is_positive(i) && is_dominant_integral(datum, datum.roots[i].weight)) dominant_root = datum.roots[i].weight;
    ok &= expect(dominant_root.has_value(), "no dominant root " + t.name());
    if (dominant_root) {
      const RVector& hw = *dominant_root;
      auto ch = tensor(freudenthal_character(datum, hw), freudenthal_character(datum, hw));
      WeightMultiset back;
      for (const auto& [h, m] : decompose_character(ch, datum))
        for (const auto& [w, k] : freudenthal_character(datum, h)) back[w] += m * k;
      ok &= expect(back == ch, "round trip " + t.name());
    }
  }

  for (const auto& [spec, parabolic] : std::vector<std::pair<PairSpec, std::string>>{
           {PairSpec::sl_s_glgl(2, 2), "heisenberg"}, {PairSpec::sp_down_gl(3), "siegel"},
           {PairSpec::so_down_so(6), "borel"}, {PairSpec::group_case({Family::B, 2}), "borel"}}) {
    auto pair = build_pair(spec);
    auto ctx = make_context(pair, named_parabolic(pair.g, pair.datum, parabolic));
    auto v = make_verma(ctx);
    const int N = 3;
    auto small = branch_multiplicities(ctx, v, N);
    auto big = branch_multiplicities(ctx, v, N + 2).as_map();
    for (const auto& e : small.entries) {
      ok &= expect(e.degree <= e.max_degree, "degree bound " + spec.id());
      if (e.complete) ok &= expect(big.count(e.delta_displacement) && big.at(e.delta_displacement) == e.multiplicity,
                                   "stability " + spec.id());
    }
    for (const auto& chi : sym_power_series(ctx.u_minus_anti, ctx.pair.j_prime.coords(), N)) {
      WeightMultiset back;
      for (const auto& [h, m] : decompose_character(chi, ctx.l_prime))
        for (const auto& [w, k] : freudenthal_character(ctx.l_prime, h)) back[w] += m * k;
      ok &= expect(back == chi, "sym power round trip " + spec.id());
    }
  }
  return ok;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<bool()>>> criteria{
      {"closed-orbit census, Borel, (sl4, s(gl2+gl2)) = 6", c1},
      {"closed-orbit census, Heisenberg, (2,2) and (2,3)", c2},
      {"closed-orbit census, Siegel, n = 2..4", c3},
      {"Borel census counts for gl, so odd, so even", c4},
      {"engine equals explicit laws AA, BD, DB at N = 4", c5},
      {"character identity at level 4 with mutation control", c6},
      {"condition (ii) agrees with nilpotency spot check; Borel tau-stability", c7},
      {"Levi decomposition and gk_dim = dim pr(u)", c8},
      {"mf_scan passing set, rank <= 5", c9},
      {"Schmid decompositions multiplicity free to degree 4", c10},
      {"property suites", c11},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    note.str("");
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criteria[i].second();
    } catch (const std::exception& e) {
      note << "exception: " << e.what() << "; ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !ok;
    std::printf("%s %2zu  %s  [%.1fs] %s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                note.str().c_str());
    std::fflush(stdout);
  }
  return failures;
}
