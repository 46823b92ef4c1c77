#include "vbranch/parabolic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace vb {

namespace {

Subspace span_of(std::size_t n, const std::vector<Matrix>& v) {
  return Subspace::span(n * n, std::span<const Matrix>(v));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

int parse_index(const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw PreconditionError("bad simple-root index '" + s + "'");
  }
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

ParabolicData parabolic_from_H(const AlgebraRealization& g, const RootDatum& datum, const Matrix& H) {
  const std::size_t n = g.matrix_dim;
  if (H.dim() != n) throw PreconditionError("parabolic: H has the wrong size");
  if (!H.is_diagonal()) throw PreconditionError("parabolic: H must lie in the diagonal Cartan (general hyperbolic H is not supported)");
  Subspace cartan = span_of(n, g.cartan_basis);
  if (!cartan.contains(H)) throw PreconditionError("parabolic: H is not in the Cartan subalgebra");
  ParabolicData p;
  p.H = H;
  p.h = datum.torus.eps_values(H);
  std::vector<Matrix> l = g.cartan_basis, up, um;
  for (std::size_t i = 0; i < datum.roots.size(); ++i) {
    Rational v = dot(datum.roots[i].weight, p.h);
    if (v == 0) {
      p.levi_roots.push_back(i);
      l.push_back(datum.roots[i].vector);
    } else if (v > 0) {
      p.nilradical_roots.push_back(i);
      up.push_back(datum.roots[i].vector);
    } else {
      p.opposite_roots.push_back(i);
      um.push_back(datum.roots[i].vector);
    }
  }
  p.l = span_of(n, l);
  p.u_plus = span_of(n, up);
  p.u_minus = span_of(n, um);
  p.p = p.l + p.u_plus;
  p.name = "H:" + to_string(p.h);
  return p;
}

ParabolicData parabolic_from_eps(const AlgebraRealization& g, const RootDatum& datum, const RVector& h) {
  if (h.size() != datum.torus.coords())
    throw PreconditionError("parabolic: expected " + std::to_string(datum.torus.coords()) + " epsilon values");
  Matrix H = datum.torus.element_from_eps_values(h);
  if (datum.torus.eps_values(H) != h) throw PreconditionError("parabolic: " + to_string(h) + " is not in the Cartan");
  return parabolic_from_H(g, datum, H);
}

ParabolicData parabolic_from_simple_subset(const AlgebraRealization& g, const RootDatum& datum,
                                           const std::vector<std::size_t>& subset) {
  std::vector<bool> in(datum.simple.size(), false);
  for (auto s : subset) {
    if (s >= datum.simple.size()) throw PreconditionError("simple-root index out of range");
    in[s] = true;
  }
  std::vector<RVector> rows;
  RVector rhs;
  for (std::size_t k = 0; k < datum.simple.size(); ++k) {
    rows.push_back(datum.roots[datum.simple[k]].weight);
    rhs.push_back(in[k] ? 0 : 1);
  }
  RVector h = rows.empty() ? RVector(datum.torus.coords()) : solve_min_norm(rows, rhs);
  auto p = parabolic_from_eps(g, datum, h);
  std::ostringstream name;
  name << "levi:";
  bool first = true;
  for (std::size_t k = 0; k < in.size(); ++k)
    if (in[k]) {
      name << (first ? "" : ",") << k + 1;
      first = false;
    }
  p.name = subset.empty() ? "borel" : name.str();
  return p;
}

std::vector<std::size_t> named_subset(const RootDatum& datum, const std::string& name) {
  const std::size_t r = datum.simple.size();
  std::vector<std::size_t> out;
  if (name == "borel") return out;
  if (name == "full") {
    for (std::size_t k = 0; k < r; ++k) out.push_back(k);
    return out;
  }
  if (name == "heisenberg") {
    if (r < 2) throw PreconditionError("heisenberg parabolic needs semisimple rank >= 2");
    for (std::size_t k = 1; k + 1 < r; ++k) out.push_back(k);
    return out;
  }
  if (name == "siegel") {
    if (r < 1) throw PreconditionError("siegel parabolic needs a simple root");
    for (std::size_t k = 0; k + 1 < r; ++k) out.push_back(k);
    return out;
  }
  if (name.rfind("levi:", 0) == 0) {
    std::set<std::size_t> seen;
    for (const auto& item : split(name.substr(5), ',')) {
      if (item.empty()) continue;
      int k = parse_index(item);
      if (k < 1 || static_cast<std::size_t>(k) > r)
        throw PreconditionError("simple-root index " + item + " out of range 1.." + std::to_string(r));
      seen.insert(static_cast<std::size_t>(k - 1));
    }
    return {seen.begin(), seen.end()};
  }
  throw PreconditionError("unknown parabolic '" + name + "' (use borel, heisenberg, siegel, full, levi:i,j,... or H:h1,...)");
}

ParabolicData named_parabolic(const AlgebraRealization& g, const RootDatum& datum, const std::string& name) {
  if (name.rfind("H:", 0) == 0) {
    RVector h;
    for (const auto& item : split(name.substr(2), ',')) h.push_back(parse_rational(item));
    return parabolic_from_eps(g, datum, h);
  }
  auto p = parabolic_from_simple_subset(g, datum, named_subset(datum, name));
  if (name == "heisenberg" || name == "siegel" || name == "full") p.name = name;
  return p;
}

CompatibilityReport compatibility_report(const ParabolicData& p, const SymmetricPair& pair) {
  const std::size_t n = pair.n();
  if (p.H.dim() != n || p.p.ambient_dim() != n * n)
    throw PreconditionError("compatibility: parabolic and pair live on different Cartans");
  CompatibilityReport rep;
  std::vector<Matrix> moved;
  for (const auto& z : p.p.matrices()) moved.push_back(pair.tau.apply(z));
  rep.tau_stable = span_of(n, moved) == p.p;
  rep.compatible = rep.tau_stable;
  if (rep.compatible) {
    Matrix hf = pair.project(p.H);
    auto check = parabolic_from_H(pair.g, pair.datum, hf);
    if (!(check.p == p.p)) throw InternalError("tau-stable parabolic is not p((H + tau H)/2)");
    rep.H_fixed = hf;
    rep.h_fixed = check.h;
  }
  return rep;
}

ClosednessReport closedness_report(const ParabolicData& p, const SymmetricPair& pair) {
  const std::size_t n = pair.n();
  ClosednessReport rep;
  std::vector<Matrix> images;
  for (const auto& z : p.u_plus.matrices()) images.push_back(pair.project(z));
  rep.pr_u = span_of(n, images);
  rep.nilpotency = nilpotent_subalgebra_test(rep.pr_u, n);
  rep.closed = rep.nilpotency.bracket_closed && rep.nilpotency.nilpotent;
  if (!rep.closed) return rep;
  rep.l_tau = p.l.intersect(pair.fixed);
  rep.p_tau = p.p.intersect(pair.fixed);
  rep.levi_decomposition_verified = rep.p_tau.dim() == rep.l_tau.dim() + rep.pr_u.dim() &&
                                    rep.p_tau == rep.l_tau + rep.pr_u;
  rep.gk_dim = static_cast<int>(pair.fixed.dim() - rep.p_tau.dim());
  return rep;
}

bool nilpotent_elements_spot_check(const Subspace& pr_u, const SymmetricPair& pair, std::uint64_t seed, int samples) {
  const auto basis = pr_u.matrices();
  if (basis.empty()) return true;
  CoefficientStream rng(seed);
  for (int i = 0; i < samples; ++i)
    if (!nilpotent_element(pair.g, rng.combination(basis))) return false;
  return true;
}

std::vector<ParabolicData> weyl_translates(const AlgebraRealization& g, const RootDatum& datum,
                                           const std::vector<std::size_t>& subset) {
  const RVector h0 = parabolic_from_simple_subset(g, datum, subset).h;
  std::set<RVector> hs;
  for (const auto& w : weyl_group(datum)) hs.insert(w.apply(h0));
  std::vector<ParabolicData> out;
  std::set<Subspace> seen;
  for (auto it = hs.rbegin(); it != hs.rend(); ++it) {
    auto p = parabolic_from_eps(g, datum, *it);
    if (seen.insert(p.p).second) out.push_back(std::move(p));
  }
  return out;
}

OrbitCensusReport closed_orbit_census(const SymmetricPair& pair, const std::vector<std::size_t>& subset) {
  OrbitCensusReport rep;
  auto translates = weyl_translates(pair.g, pair.datum, subset);
  rep.total_parabolics_containing_j = translates.size();

  std::vector<ParabolicData> closed;
  std::vector<int> gk;
  for (auto& p : translates) {
    auto c = closedness_report(p, pair);
    if (!c.closed) continue;
    gk.push_back(*c.gk_dim);
    closed.push_back(std::move(p));
  }
  rep.closed_translates = closed.size();

  std::map<RVector, std::size_t> where;
  for (std::size_t i = 0; i < closed.size(); ++i) where[closed[i].h] = i;

  // s_beta on j^tau extended by the identity on j^{-tau}:
  // H -> H - beta(pr H) beta^vee.
  UnionFind uf(closed.size());
  const auto& rd = pair.restricted;
  for (std::size_t i = 0; i < closed.size(); ++i) {
    Matrix prh = pair.project(closed[i].H);
    for (auto b : rd.positive) {
      Rational c = pair.j_prime.evaluate(rd.roots[b].weight, prh);
      if (c == 0) continue;
      Matrix moved = closed[i].H - c * rd.roots[b].coroot;
      RVector hm = pair.datum.torus.eps_values(moved);
      auto it = where.find(hm);
      if (it == where.end())
        throw InternalError("census action leaves the closed translates at h = " + to_string(closed[i].h));
      uf.unite(i, it->second);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < closed.size(); ++i) classes[uf.find(i)].push_back(i);
  for (auto& [root, members] : classes) {
    std::size_t best = members.front();
    for (auto m : members)
      if (closed[best].h < closed[m].h) best = m;
    rep.representatives.push_back({closed[best].h, closed[best], gk[best], members.size()});
  }
  std::sort(rep.representatives.begin(), rep.representatives.end(),
            [](const CensusEntry& a, const CensusEntry& b) { return b.h < a.h; });
  rep.closed_count = rep.representatives.size();
  return rep;
}

std::size_t double_coset_count(const SymmetricPair& pair, const std::vector<std::size_t>& subset) {
  if (!pair.tau_trivial_on_cartan())
    throw PreconditionError("double coset oracle needs tau trivial on the Cartan");
  const RVector h0 = parabolic_from_simple_subset(pair.g, pair.datum, subset).h;
  std::set<RVector> orbit;
  for (const auto& w : weyl_group(pair.datum)) orbit.insert(w.apply(h0));
  const auto wp = weyl_group(pair.restricted);
  std::set<RVector> canon;
  for (const auto& h : orbit) {
    RVector best = h;
    for (const auto& w : wp) best = std::max(best, w.apply(h));
    canon.insert(best);
  }
  return canon.size();
}

TensorClosedness tensor_closedness(const ParabolicData& p1, const ParabolicData& p2, const RootDatum& datum) {
  if (p1.p.ambient_dim() != p2.p.ambient_dim() || p1.H.dim() != p2.H.dim())
    throw PreconditionError("tensor closedness: parabolics over different algebras");
  TensorClosedness rep;
  Subspace both = p1.p.intersect(p2.p);
  rep.intersection_parabolic = true;
  for (const auto& r : datum.roots) {
    if (both.contains(r.vector)) continue;
    auto neg = datum.find(-r.weight);
    if (!neg || !both.contains(datum.roots[*neg].vector)) {
      rep.intersection_parabolic = false;
      break;
    }
  }
  rep.closed = rep.intersection_parabolic;
  return rep;
}

}  // namespace vb
