#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vbranch/pairs.hpp"

#include <set>

using namespace vb;

namespace {

std::set<RVector> positive_weights(const RootDatum& d) {
  std::set<RVector> out;
  for (auto i : d.positive) out.insert(d.roots[i].weight);
  return out;
}

Subspace lower_nilradical(const SymmetricPair& pair) {
  std::vector<Matrix> v;
  for (const auto& r : pair.datum.roots)
    if (pair.datum.torus.regular_value(r.weight) < 0) v.push_back(r.vector);
  const std::size_t n = pair.n();
  return Subspace::span(n * n, std::span<const Matrix>(v));
}

}  // namespace

TEST_CASE("catalog ids round trip") {
  for (std::string id : {"gl_down_gl:n=3,l=2", "sl_s_glgl:p=2,q=2", "so_down_so:m=4", "sp_down_gl:n=2",
                         "group_case:type=A2"})
    CHECK(PairSpec::parse(id).id() == id);
  CHECK_THROWS_AS(PairSpec::parse("su_pq:p=1"), PreconditionError);
  CHECK_THROWS_AS(PairSpec::parse("gl_down_gl:n=3,l=5"), PreconditionError);
  CHECK_THROWS_AS(PairSpec::parse("so_down_so:m=3"), PreconditionError);
  CHECK_THROWS_AS(PairSpec::parse("sp_down_gl:n=x"), PreconditionError);
  CHECK_THROWS_AS(PairSpec::parse("sl_s_glgl:p=2"), PreconditionError);
  try {
    PairSpec::parse("nonsense");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("sp_down_gl") != std::string::npos);
  }
}

TEST_CASE("fixed subalgebra dimensions") {
  auto a = build_pair(PairSpec::sl_s_glgl(2, 2));
  CHECK(a.g.dim() == 15);
  CHECK(a.fixed.dim() == 7);
  CHECK(build_pair(PairSpec::so_down_so(4)).fixed.dim() == 6);
  CHECK(build_pair(PairSpec::so_down_so(5)).fixed.dim() == 10);
  CHECK(build_pair(PairSpec::sp_down_gl(2)).fixed.dim() == 4);
  CHECK(build_pair(PairSpec::sp_down_gl(3)).fixed.dim() == 9);
  CHECK(build_pair(PairSpec::gl_down_gl(3, 2)).fixed.dim() == 10);
  CHECK(build_pair(PairSpec::group_case({Family::A, 2})).fixed.dim() == 8);
}

TEST_CASE("involution flags") {
  CHECK(build_pair(PairSpec::so_down_so(4)).tau.is_inner);
  CHECK_FALSE(build_pair(PairSpec::so_down_so(5)).tau.is_inner);
  CHECK_FALSE(build_pair(PairSpec::group_case({Family::A, 1})).tau.is_inner);
  CHECK(build_pair(PairSpec::sp_down_gl(2)).tau_trivial_on_cartan());
  CHECK_FALSE(build_pair(PairSpec::so_down_so(5)).tau_trivial_on_cartan());
}

TEST_CASE("structural invariants hold across the catalog") {
  std::vector<PairSpec> specs{PairSpec::gl_down_gl(1, 1), PairSpec::gl_down_gl(2, 2), PairSpec::gl_down_gl(3, 4),
                              PairSpec::sl_s_glgl(1, 1), PairSpec::sl_s_glgl(2, 1), PairSpec::sl_s_glgl(2, 2),
                              PairSpec::so_down_so(4), PairSpec::so_down_so(5), PairSpec::so_down_so(6),
                              PairSpec::sp_down_gl(2), PairSpec::sp_down_gl(3), PairSpec::group_case({Family::A, 1}),
                              PairSpec::group_case({Family::B, 2})};
  for (const auto& s : specs) {
    CAPTURE(s.id());
    auto pair = build_pair(s);
    auto v = validate_pair(pair, pair.g.dim() > 25);
    CHECK(v.involutive);
    CHECK(v.automorphism);
    CHECK(v.preserves_cartan);
    CHECK(v.dimensions_add);
    CHECK(v.killing_orthogonal);
    // j' is a Cartan of g^tau: its centralizer in g^tau is itself.
    CHECK(pair.restricted.cartan.dim() == pair.j_prime.rank());
    for (const auto& r : pair.restricted.roots) CHECK(r.space.dim() == 1);
    CHECK(pair.restricted.roots.size() + pair.j_prime.rank() == pair.fixed.dim());
  }
}

TEST_CASE("tau split") {
  auto pair = build_pair(PairSpec::so_down_so(4));
  auto whole = tau_split(pair, pair.g.algebra);
  CHECK(whole.plus == pair.fixed);
  CHECK(whole.minus == pair.minus);
  CHECK(whole.pr == pair.fixed);

  auto split = tau_split(pair, lower_nilradical(pair));
  CHECK(split.plus.dim() + split.minus.dim() == lower_nilradical(pair).dim());
  CHECK(split.pr == split.plus);
  std::vector<Matrix> tb{pair.j_prime.basis};
  auto ws = weight_decomposition(tb, split.minus);
  std::set<RVector> weights;
  for (const auto& w : ws) {
    CHECK(w.space.dim() == 1);
    weights.insert(pair.j_prime.weight_from_basis_values(w.weight));
  }
  CHECK(weights == std::set<RVector>{{-1, 0}, {0, -1}});

  // so6 > so5: n_-^{-tau} has weights -e1, -e2 on j'.
  auto d = build_pair(PairSpec::so_down_so(5));
  auto sd = tau_split(d, lower_nilradical(d));
  std::set<RVector> wd;
  for (const auto& w : weight_decomposition(d.j_prime.basis, sd.minus)) {
    CHECK(w.space.dim() == 1);
    wd.insert(d.j_prime.weight_from_basis_values(w.weight));
  }
  CHECK(wd == std::set<RVector>{{-1, 0}, {0, -1}});

  // A root space moved by tau: e1 - e2 in the group case.
  auto gc = build_pair(PairSpec::group_case({Family::A, 1}));
  const auto& root = gc.datum.roots[gc.datum.simple[0]];
  auto s1 = tau_split(gc, root.space);
  CHECK(s1.plus.dim() == 0);
  CHECK(s1.minus.dim() == 0);
  CHECK(s1.pr.dim() == 1);
}

TEST_CASE("restricted root data") {
  auto b = build_pair(PairSpec::so_down_so(5));
  CHECK(positive_weights(b.restricted) == std::set<RVector>{{1, -1}, {1, 1}, {1, 0}, {0, 1}});
  CHECK(b.j_prime.coords() == 2);

  auto a = build_pair(PairSpec::sl_s_glgl(2, 2));
  CHECK(a.restricted.positive.size() == 2);
  CHECK(a.restricted.semisimple_rank() == 2);
  CHECK(a.j_prime.rank() == 3);

  auto gc = build_pair(PairSpec::group_case({Family::A, 1}));
  CHECK(gc.restricted.positive.size() == 1);
  CHECK(gc.j_prime.rank() == 1);

  auto c = build_pair(PairSpec::sp_down_gl(3));
  CHECK(c.restricted.semisimple_rank() == 2);
  CHECK(c.j_prime.rank() == 3);
  CHECK(positive_weights(c.restricted) == std::set<RVector>{{1, -1, 0}, {1, 0, -1}, {0, 1, -1}});

  // so_{m+1} > so_m alternates B and D.
  auto d4 = build_pair(PairSpec::so_down_so(6));
  CHECK(d4.restricted.roots.size() == 12);  // D3
  auto b3 = build_pair(PairSpec::so_down_so(7));
  CHECK(b3.restricted.roots.size() == 18);  // B3
}

TEST_CASE("weight restriction") {
  auto d = build_pair(PairSpec::so_down_so(5));
  CHECK(d.restrict_weight({1, 2, 3}) == RVector{1, 2});
  auto gc = build_pair(PairSpec::group_case({Family::A, 1}));
  CHECK(gc.restrict_weight({Rational(1, 2), Rational(-1, 2), 0, 0}) == RVector{Rational(1, 2), Rational(-1, 2)});
}
