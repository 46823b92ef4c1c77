#include "vbranch/liealg.hpp"

#include <algorithm>
#include <set>

namespace vb {

std::string ClassicalType::name() const {
  static const char letters[] = {'A', 'B', 'C', 'D'};
  return std::string(1, letters[static_cast<int>(family)]) + std::to_string(rank);
}

ClassicalType ClassicalType::parse(std::string_view text) {
  if (text.size() < 2) throw PreconditionError("bad classical type '" + std::string(text) + "'");
  ClassicalType t;
  switch (text[0]) {
    case 'A': case 'a': t.family = Family::A; break;
    case 'B': case 'b': t.family = Family::B; break;
    case 'C': case 'c': t.family = Family::C; break;
    case 'D': case 'd': t.family = Family::D; break;
    default: throw PreconditionError("unknown family in '" + std::string(text) + "'");
  }
  try {
    std::size_t used = 0;
    t.rank = std::stoi(std::string(text.substr(1)), &used);
    if (used != text.size() - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw PreconditionError("bad rank in '" + std::string(text) + "'");
  }
  return t;
}

// ---------------------------------------------------------------------------
// Torus

RVector Torus::eps_values(const Matrix& h) const {
  RVector v(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i)
    for (std::size_t d = 0; d < eps[i].size(); ++d)
      if (eps[i][d] != 0 && h(d, d) != 0) v[i] += eps[i][d] * h(d, d);
  return v;
}

Rational Torus::evaluate(const RVector& weight, const Matrix& h) const {
  return dot(weight, eps_values(h));
}

RVector Torus::weight_from_basis_values(const RVector& values) const {
  std::vector<RVector> rows;
  rows.reserve(basis.size());
  for (const auto& b : basis) rows.push_back(eps_values(b));
  return solve_min_norm(rows, values);
}

Matrix Torus::element_from_eps_values(const RVector& h) const {
  std::vector<RVector> vals;
  for (const auto& b : basis) vals.push_back(eps_values(b));
  std::vector<RVector> rows(eps.size(), RVector(basis.size()));
  for (std::size_t i = 0; i < eps.size(); ++i)
    for (std::size_t k = 0; k < basis.size(); ++k) rows[i][k] = vals[k][i];
  RVector x = solve_min_norm(rows, h);
  Matrix out(basis.empty() ? 0 : basis[0].dim());
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (x[k] != 0) out += x[k] * basis[k];
  return out;
}

bool regular_less(const Torus& t, const RVector& a, const RVector& b) {
  Rational va = t.regular_value(a), vb_ = t.regular_value(b);
  if (va != vb_) return va < vb_;
  return a < b;
}

// ---------------------------------------------------------------------------
// Realizations

namespace {

constexpr int kMaxBuildRank = 8;

RVector unit_eps(std::size_t n, std::size_t i) {
  RVector e(n);
  e[i] = 1;
  return e;
}

// Diagonal element of the torus with epsilon values (r, r-1, ..., 1), made
// trace free when the torus is sl.
RVector decreasing(std::size_t count, bool trace_free) {
  RVector v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = static_cast<long>(count - i);
  if (trace_free) {
    Rational mean;
    for (const auto& x : v) mean += x;
    mean /= static_cast<long>(count);
    for (auto& x : v) x -= mean;
  }
  return v;
}

}  // namespace

AlgebraRealization build_classical(ClassicalType type) {
  const int r = type.rank;
  const int min_rank = type.family == Family::A ? 1 : (type.family == Family::D ? 3 : 2);
  if (r < min_rank || r > kMaxBuildRank)
    throw PreconditionError("unsupported classical type " + type.name());
  AlgebraRealization g;
  g.type = type;
  if (type.family == Family::A) {
    const std::size_t m = static_cast<std::size_t>(r) + 1;
    g.label = "sl" + std::to_string(m);
    g.matrix_dim = m;
    std::vector<Matrix> basis;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i)
        if (i != j) basis.push_back(Matrix::unit(m, i, j));
    for (std::size_t i = 0; i + 1 < m; ++i) {
      Matrix h = Matrix::unit(m, i, i) - Matrix::unit(m, i + 1, i + 1);
      basis.push_back(h);
      g.cartan_basis.push_back(h);
    }
    g.algebra = Subspace::span(m * m, std::span<const Matrix>(basis));
    for (std::size_t i = 0; i < m; ++i) g.torus.eps.push_back(unit_eps(m, i));
    g.torus.regular = decreasing(m, true);
  } else {
    const std::size_t m = type.family == Family::B ? 2 * r + 1 : 2 * r;
    g.matrix_dim = m;
    Matrix form(m);
    if (type.family == Family::C) {
      for (std::size_t i = 0; i < static_cast<std::size_t>(r); ++i) {
        form(i, m - 1 - i) = 1;
        form(m - 1 - i, i) = -1;
      }
      g.label = "sp" + std::to_string(m);
    } else {
      for (std::size_t i = 0; i < m; ++i) form(i, m - 1 - i) = 1;
      g.label = "so" + std::to_string(m);
    }
    // Algebra = { X : X^T J + J X = 0 }.
    std::vector<RVector> images;
    images.reserve(m * m);
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t a = 0; a < m; ++a) {
        Matrix e = Matrix::unit(m, a, b);
        images.push_back((e.transpose() * form + form * e).vectorize());
      }
    auto ker = kernel(images);
    g.algebra = Subspace::span(m * m, std::span<const RVector>(ker));
    g.form = form;
    for (std::size_t i = 0; i < static_cast<std::size_t>(r); ++i) {
      g.cartan_basis.push_back(Matrix::unit(m, i, i) - Matrix::unit(m, m - 1 - i, m - 1 - i));
      g.torus.eps.push_back(unit_eps(m, i));
    }
    g.torus.regular = decreasing(static_cast<std::size_t>(r), false);
  }
  g.torus.basis = g.cartan_basis;
  return g;
}

AlgebraRealization build_gl(int m_in) {
  if (m_in < 1 || m_in > kMaxBuildRank + 1) throw PreconditionError("unsupported gl size " + std::to_string(m_in));
  const std::size_t m = static_cast<std::size_t>(m_in);
  AlgebraRealization g;
  g.type = {Family::A, m_in - 1 < 1 ? 1 : m_in - 1};
  g.gl = true;
  g.label = "gl" + std::to_string(m);
  g.matrix_dim = m;
  g.algebra = Subspace::full(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    g.cartan_basis.push_back(Matrix::unit(m, i, i));
    g.torus.eps.push_back(unit_eps(m, i));
  }
  g.torus.basis = g.cartan_basis;
  g.torus.regular = decreasing(m, false);
  return g;
}

AlgebraRealization build_double(const AlgebraRealization& g) {
  const std::size_t n = g.matrix_dim, m = 2 * n;
  auto embed = [&](const Matrix& x, std::size_t block) {
    Matrix out(m);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) out(i + block * n, j + block * n) = x(i, j);
    return out;
  };
  AlgebraRealization d;
  d.label = g.label + "+" + g.label;
  d.type = g.type;
  d.copies = 2;
  d.gl = g.gl;
  d.matrix_dim = m;
  std::vector<Matrix> basis;
  const auto gb = g.algebra.matrices();
  for (std::size_t block = 0; block < 2; ++block)
    for (const auto& x : gb) basis.push_back(embed(x, block));
  d.algebra = Subspace::span(m * m, std::span<const Matrix>(basis));
  for (std::size_t block = 0; block < 2; ++block)
    for (const auto& h : g.cartan_basis) d.cartan_basis.push_back(embed(h, block));
  for (std::size_t block = 0; block < 2; ++block)
    for (const auto& e : g.torus.eps) {
      RVector pad(m);
      for (std::size_t k = 0; k < n; ++k) pad[k + block * n] = e[k];
      d.torus.eps.push_back(std::move(pad));
    }
  d.torus.basis = d.cartan_basis;
  d.torus.regular = g.torus.regular;
  d.torus.regular.insert(d.torus.regular.end(), g.torus.regular.begin(), g.torus.regular.end());
  if (g.form) {
    Matrix f(m);
    for (std::size_t block = 0; block < 2; ++block) f += embed(*g.form, block);
    d.form = f;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Root data

Rational RootDatum::pairing(const RVector& mu, std::size_t root) const {
  return dot(mu, roots.at(root).coroot_values);
}

std::optional<std::size_t> RootDatum::find(const RVector& weight) const {
  auto it = index.find(weight);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

bool RootDatum::is_positive(std::size_t root) const {
  return torus.regular_value(roots.at(root).weight) > 0;
}

namespace {

bool simple_order(const RVector& a, const RVector& b) {
  auto lead = [](const RVector& v) {
    std::size_t i = 0;
    while (i < v.size() && v[i] == 0) ++i;
    return i;
  };
  std::size_t la = lead(a), lb = lead(b);
  if (la != lb) return la < lb;
  return a < b;
}

void finish(RootDatum& d) {
  d.index.clear();
  d.positive.clear();
  d.simple.clear();
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    d.index[d.roots[i].weight] = i;
    Rational v = d.torus.regular_value(d.roots[i].weight);
    if (v == 0) throw InternalError("regular element is singular for the root " + to_string(d.roots[i].weight));
    if (v > 0) d.positive.push_back(i);
  }
  for (auto i : d.positive) {
    bool decomposable = false;
    for (auto j : d.positive) {
      auto diff = d.find(d.roots[i].weight - d.roots[j].weight);
      if (diff && d.is_positive(*diff)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) d.simple.push_back(i);
  }
  std::sort(d.simple.begin(), d.simple.end(), [&](std::size_t a, std::size_t b) {
    return simple_order(d.roots[a].weight, d.roots[b].weight);
  });
  d.rho = RVector(d.torus.coords());
  for (auto i : d.positive) d.rho = d.rho + d.roots[i].weight;
  d.rho = Rational(1, 2) * d.rho;
}

}  // namespace

RootDatum RootDatum::restrict_to(const std::vector<std::size_t>& keep) const {
  RootDatum out;
  out.torus = torus;
  out.matrix_dim = matrix_dim;
  out.cartan = cartan;
  for (auto i : keep) out.roots.push_back(roots.at(i));
  finish(out);
  return out;
}

RootDatum root_datum_of(const Torus& torus, const Subspace& algebra, std::size_t n) {
  RootDatum d;
  d.torus = torus;
  d.matrix_dim = n;
  auto spaces = weight_decomposition(torus.basis, algebra);
  bool have_zero = false;
  for (auto& ws : spaces) {
    if (is_zero(ws.weight)) {
      if (ws.space.dim() != torus.rank())
        throw InternalError("torus is not self-centralizing (zero weight space has dimension " +
                            std::to_string(ws.space.dim()) + ")");
      d.cartan = ws.space;
      have_zero = true;
      continue;
    }
    if (ws.space.dim() != 1)
      throw InternalError("root space of multiplicity " + std::to_string(ws.space.dim()) +
                          ": torus is not a Cartan subalgebra");
    Root r;
    r.weight = torus.weight_from_basis_values(ws.weight);
    r.vector = ws.space.matrices().front();
    r.space = std::move(ws.space);
    d.roots.push_back(std::move(r));
  }
  if (!have_zero) d.cartan = Subspace(n * n);
  for (auto& r : d.roots) d.index[r.weight] = &r - d.roots.data();
  for (auto& r : d.roots) {
    auto neg = d.find(-r.weight);
    if (!neg) throw InternalError("root system is not symmetric");
    Matrix h = bracket(r.vector, d.roots[*neg].vector);
    Rational c = torus.evaluate(r.weight, h);
    if (c == 0 || !h.is_diagonal()) throw InternalError("degenerate coroot for " + to_string(r.weight));
    r.coroot = (Rational(2) / c) * h;
    r.coroot_values = torus.eps_values(r.coroot);
  }
  finish(d);
  return d;
}

RootDatum root_datum(const AlgebraRealization& g) {
  return root_datum_of(g.torus, g.algebra, g.matrix_dim);
}

bool is_dominant_integral(const RootDatum& datum, const RVector& lambda) {
  for (auto s : datum.simple) {
    Rational p = datum.pairing(lambda, s);
    if (p.get_den() != 1 || p < 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Freudenthal

const WeightMultiset* FreudenthalCache::find(const RVector& lambda) const {
  auto it = memo_.find(lambda);
  return it == memo_.end() ? nullptr : &it->second;
}

const WeightMultiset& FreudenthalCache::store(const RVector& lambda, WeightMultiset chi) {
  return memo_.insert_or_assign(lambda, std::move(chi)).first->second;
}

WeightMultiset freudenthal_character(const RootDatum& datum, const RVector& lambda, FreudenthalCache* cache) {
  if (cache)
    if (const auto* hit = cache->find(lambda)) return *hit;
  if (lambda.size() != datum.torus.coords()) throw PreconditionError("freudenthal: weight has wrong length");
  if (!is_dominant_integral(datum, lambda))
    throw PreconditionError("freudenthal: highest weight " + to_string(lambda) + " is not dominant integral");
  WeightMultiset mult;
  mult[lambda] = 1;
  if (datum.simple.empty()) {
    if (cache) cache->store(lambda, mult);
    return mult;
  }
  std::vector<RVector> simple_rows;
  for (auto s : datum.simple) simple_rows.push_back(datum.roots[s].weight);
  // Height functional: alpha_i . x = 1 on simple roots.
  const RVector x = solve_min_norm(simple_rows, RVector(simple_rows.size(), Rational(1)));
  struct Pos {
    RVector w;
    long height;
  };
  std::vector<Pos> pos;
  for (auto i : datum.positive) {
    Rational h = dot(datum.roots[i].weight, x);
    if (h.get_den() != 1 || h <= 0) throw InternalError("non-integral root height");
    pos.push_back({datum.roots[i].weight, h.get_num().get_si()});
  }
  const RVector lr = lambda + datum.rho;
  const Rational top = dot(lr, lr);

  std::vector<RVector> current{lambda};
  std::map<RVector, long> depth{{lambda, 0}};
  long d = 0;
  while (!current.empty()) {
    ++d;
    std::set<RVector> candidates;
    for (const auto& mu : current)
      for (const auto& sr : simple_rows) candidates.insert(mu - sr);
    std::vector<RVector> next;
    for (const auto& nu : candidates) {
      Rational num;
      for (const auto& a : pos) {
        RVector shifted = nu;
        for (long k = 1; d - k * a.height >= 0; ++k) {
          shifted = shifted + a.w;
          auto it = mult.find(shifted);
          if (it != mult.end()) num += Rational(it->second) * dot(shifted, a.w);
        }
      }
      num *= 2;
      const RVector nr = nu + datum.rho;
      Rational den = top - dot(nr, nr);
      if (den == 0) {
        if (num != 0) throw InternalError("freudenthal: zero denominator with non-zero numerator");
        continue;
      }
      Rational m = num / den;
      if (m.get_den() != 1 || m < 0) throw InternalError("freudenthal: non-integral multiplicity at " + to_string(nu));
      if (m == 0) continue;
      mult[nu] = m.get_num();
      next.push_back(nu);
    }
    current = std::move(next);
  }
  if (cache) return cache->store(lambda, std::move(mult));
  return mult;
}

Integer weyl_dimension(const RootDatum& datum, const RVector& lambda) {
  Rational prod = 1;
  const RVector lr = lambda + datum.rho;
  for (auto i : datum.positive) prod *= datum.pairing(lr, i) / datum.pairing(datum.rho, i);
  if (prod.get_den() != 1) throw InternalError("Weyl dimension is not an integer");
  return prod.get_num();
}

// ---------------------------------------------------------------------------
// Weyl group

WeylElement WeylElement::identity(std::size_t n) {
  WeylElement w;
  w.perm.resize(n);
  w.sign.assign(n, 1);
  for (std::size_t i = 0; i < n; ++i) w.perm[i] = static_cast<int>(i);
  return w;
}

RVector WeylElement::apply(const RVector& v) const {
  if (v.size() != perm.size()) throw PreconditionError("Weyl element applied to vector of wrong length");
  RVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[perm[i]] = sign[i] < 0 ? Rational(-v[i]) : v[i];
  return out;
}

WeylElement WeylElement::compose(const WeylElement& other) const {
  WeylElement r;
  r.perm.resize(perm.size());
  r.sign.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    int j = other.perm[i];
    r.perm[i] = perm[j];
    r.sign[i] = sign[j] * other.sign[i];
  }
  return r;
}

WeylElement WeylElement::inverse() const {
  WeylElement r;
  r.perm.resize(perm.size());
  r.sign.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    r.perm[perm[i]] = static_cast<int>(i);
    r.sign[perm[i]] = sign[i];
  }
  return r;
}

int WeylElement::minus_count() const {
  return static_cast<int>(std::count(sign.begin(), sign.end(), -1));
}

WeylElement reflection(const RootDatum& datum, std::size_t root) {
  const auto& r = datum.roots.at(root);
  const std::size_t n = r.weight.size();
  WeylElement w = WeylElement::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    RVector img(n);
    img[k] = 1;
    img = img - r.coroot_values[k] * r.weight;
    int where = -1, s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (img[i] == 0) continue;
      if (where >= 0 || (img[i] != 1 && img[i] != -1))
        throw InternalError("reflection is not a signed permutation of epsilon coordinates");
      where = static_cast<int>(i);
      s = img[i] > 0 ? 1 : -1;
    }
    if (where < 0) throw InternalError("reflection kills a coordinate");
    w.perm[k] = where;
    w.sign[k] = s;
  }
  return w;
}

std::vector<WeylElement> weyl_group(const RootDatum& datum) {
  if (datum.semisimple_rank() > 6)
    throw PreconditionError("Weyl group enumeration is capped at semisimple rank 6");
  std::vector<WeylElement> gens;
  for (auto s : datum.simple) gens.push_back(reflection(datum, s));
  std::set<WeylElement> seen;
  std::vector<WeylElement> order{WeylElement::identity(datum.torus.coords())};
  seen.insert(order.front());
  for (std::size_t head = 0; head < order.size(); ++head)
    for (const auto& g : gens) {
      WeylElement w = g.compose(order[head]);
      if (seen.insert(w).second) order.push_back(std::move(w));
    }
  return order;
}

bool nilpotent_element(const AlgebraRealization& g, const Matrix& z) {
  const std::size_t n = z.dim();
  Matrix w = z;
  if (g.gl) w -= Rational(z.trace() / Rational(static_cast<long>(n))) * Matrix::identity(n);
  Matrix power = w;
  for (std::size_t k = 1; k < n && !power.is_zero(); k *= 2) power = power * power;
  return power.is_zero();
}

}  // namespace vb
