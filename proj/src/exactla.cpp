#include "vbranch/exactla.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace vb {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const RVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_string(v[i]);
  }
  return out + ")";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw PreconditionError("empty rational literal");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw PreconditionError("malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Integer d(den);
  if (d == 0) throw PreconditionError("zero denominator in '" + s + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

RVector zero_vector(std::size_t n) { return RVector(n); }

bool is_zero(const RVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Rational dot(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw PreconditionError("dot: length mismatch");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

RVector operator+(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw PreconditionError("vector sum: length mismatch");
  RVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

RVector operator-(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw PreconditionError("vector difference: length mismatch");
  RVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

RVector operator-(const RVector& a) {
  RVector r(a);
  for (auto& x : r) x = -x;
  return r;
}

RVector operator*(const Rational& s, const RVector& v) {
  RVector r(v);
  for (auto& x : r) x *= s;
  return r;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(n);
  m(i, j) = 1;
  return m;
}

Matrix Matrix::diagonal(const RVector& d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_vector(std::size_t n, const RVector& v) {
  if (v.size() != n * n) throw PreconditionError("from_vector: length is not n^2");
  Matrix m(n);
  m.a_ = v;
  return m;
}

bool Matrix::is_zero() const { return vb::is_zero(a_); }

bool Matrix::is_diagonal() const {
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i < n_; ++i)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

RVector Matrix::diagonal_entries() const {
  RVector d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

Rational Matrix::trace() const {
  Rational t;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

Matrix Matrix::transpose() const {
  Matrix t(n_);
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i < n_; ++i) t(j, i) = (*this)(i, j);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (o.n_ != n_) throw PreconditionError("matrix sum: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (o.a_[k] != 0) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (o.n_ != n_) throw PreconditionError("matrix difference: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (o.a_[k] != 0) a_[k] -= o.a_[k];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.n_ != b.n_) throw PreconditionError("matrix product: dimension mismatch");
  const std::size_t n = a.n_;
  Matrix c(n);
  // Column-major: skip zero entries of b, then of a.
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const Rational& bkj = b(k, j);
      if (bkj == 0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        const Rational& aik = a(i, k);
        if (aik != 0) c(i, j) += aik * bkj;
      }
    }
  return c;
}

Matrix operator*(const Rational& s, Matrix a) {
  for (auto& x : a.a_) x *= s;
  return a;
}

Matrix bracket(const Matrix& x, const Matrix& y) {
  if (x.dim() != y.dim()) throw PreconditionError("bracket: dimension mismatch");
  return x * y - y * x;
}

namespace {

// Dense Gaussian elimination helper: reduces rows in place to RREF and
// returns the pivot columns.
std::vector<std::size_t> rref(std::vector<RVector>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t k = c; k < cols; ++k)
        if (rows[r][k] != 0) rows[i][k] -= f * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.dim();
  std::vector<RVector> rows(n, RVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
    rows[i][n + i] = 1;
  }
  auto piv = rref(rows, 2 * n);
  if (piv.size() < n || piv[n - 1] != n - 1) throw PreconditionError("inverse: singular matrix");
  Matrix inv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rows[i][n + j];
  return inv;
}

// ---------------------------------------------------------------------------
// Subspace

RVector Subspace::reduce(RVector v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t c = pivots_[r];
    if (v[c] == 0) continue;
    Rational f = v[c];
    const RVector& row = rows_[r];
    for (std::size_t k = c; k < ambient_; ++k)
      if (row[k] != 0) v[k] -= f * row[k];
  }
  return v;
}

void Subspace::insert(RVector v) {
  v = reduce(std::move(v));
  std::size_t c = 0;
  while (c < ambient_ && v[c] == 0) ++c;
  if (c == ambient_) return;
  Rational inv = 1 / v[c];
  for (std::size_t k = c; k < ambient_; ++k)
    if (v[k] != 0) v[k] *= inv;
  for (auto& row : rows_) {
    if (row[c] == 0) continue;
    Rational f = row[c];
    for (std::size_t k = c; k < ambient_; ++k)
      if (v[k] != 0) row[k] -= f * v[k];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, c);
  rows_.insert(rows_.begin() + pos, std::move(v));
}

Subspace Subspace::span(std::size_t ambient, std::span<const RVector> vectors) {
  Subspace s(ambient);
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw PreconditionError("span: vector length differs from ambient dimension");
    s.insert(v);
  }
  return s;
}

Subspace Subspace::span(std::size_t ambient, std::span<const Matrix> elements) {
  Subspace s(ambient);
  for (const auto& m : elements) {
    if (m.vectorize().size() != ambient) throw PreconditionError("span: matrix size differs from ambient dimension");
    s.insert(m.vectorize());
  }
  return s;
}

Subspace Subspace::full(std::size_t ambient) {
  Subspace s(ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    RVector e(ambient);
    e[i] = 1;
    s.rows_.push_back(std::move(e));
    s.pivots_.push_back(i);
  }
  return s;
}

std::vector<Matrix> Subspace::matrices() const {
  std::size_t n = 0;
  while (n * n < ambient_) ++n;
  if (n * n != ambient_) throw PreconditionError("matrices: ambient dimension is not a square");
  std::vector<Matrix> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(Matrix::from_vector(n, r));
  return out;
}

bool Subspace::contains(const RVector& v) const {
  if (v.size() != ambient_) throw PreconditionError("contains: vector length differs from ambient dimension");
  return is_zero(reduce(v));
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& r : other.rows_)
    if (!contains(r)) return false;
  return true;
}

RVector Subspace::coordinates(const RVector& v) const {
  if (!contains(v)) throw PreconditionError("coordinates: vector not in subspace");
  RVector c(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) c[r] = v[pivots_[r]];
  return c;
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw PreconditionError("subspace sum: ambient mismatch");
  Subspace s = *this;
  for (const auto& r : other.rows_) s.insert(r);
  return s;
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw PreconditionError("intersection: ambient mismatch");
  std::vector<RVector> images;
  images.reserve(dim() + other.dim());
  for (const auto& r : rows_) images.push_back(r);
  for (const auto& r : other.rows_) images.push_back(-r);
  Subspace s(ambient_);
  for (const auto& c : kernel(images)) {
    RVector v(ambient_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (c[i] != 0) v = v + c[i] * rows_[i];
    s.insert(std::move(v));
  }
  return s;
}

Subspace Subspace::restrict_to_coordinates(const std::vector<bool>& support) const {
  if (support.size() != ambient_) throw PreconditionError("restrict: support length mismatch");
  std::vector<std::size_t> outside;
  for (std::size_t k = 0; k < ambient_; ++k)
    if (!support[k]) outside.push_back(k);
  std::vector<RVector> images;
  images.reserve(rows_.size());
  for (const auto& r : rows_) {
    RVector img(outside.size());
    for (std::size_t k = 0; k < outside.size(); ++k) img[k] = r[outside[k]];
    images.push_back(std::move(img));
  }
  Subspace s(ambient_);
  if (outside.empty()) return *this;
  for (const auto& c : kernel(images)) {
    RVector v(ambient_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (c[i] != 0) v = v + c[i] * rows_[i];
    s.insert(std::move(v));
  }
  return s;
}

bool operator<(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
  if (a.pivots_ != b.pivots_) return a.pivots_ < b.pivots_;
  return a.rows_ < b.rows_;
}

Subspace echelon_span(std::size_t ambient, std::span<const RVector> vectors) {
  return Subspace::span(ambient, vectors);
}

std::vector<RVector> kernel(std::span<const RVector> images) {
  const std::size_t k = images.size();
  if (k == 0) return {};
  const std::size_t m = images[0].size();
  // Rows of M are coordinates; columns are the images.
  std::vector<RVector> rows(m, RVector(k));
  for (std::size_t j = 0; j < k; ++j) {
    if (images[j].size() != m) throw PreconditionError("kernel: images of differing length");
    for (std::size_t i = 0; i < m; ++i) rows[i][j] = images[j][i];
  }
  auto piv = rref(rows, k);
  std::vector<bool> is_pivot(k, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<RVector> basis;
  for (std::size_t f = 0; f < k; ++f) {
    if (is_pivot[f]) continue;
    RVector v(k);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

RVector solve_min_norm(std::span<const RVector> rows, const RVector& b) {
  if (rows.size() != b.size()) throw PreconditionError("solve: row count differs from rhs length");
  if (rows.empty()) return {};
  const std::size_t m = rows[0].size();
  // Pick a maximal independent subset of rows.
  Subspace seen(m);
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m) throw PreconditionError("solve: ragged rows");
    std::size_t before = seen.dim();
    seen = seen + Subspace::span(m, std::span<const RVector>(&rows[i], 1));
    if (seen.dim() > before) chosen.push_back(i);
  }
  const std::size_t q = chosen.size();
  // Gram system (R R^T) y = b restricted to chosen rows; x = R^T y.
  std::vector<RVector> aug(q, RVector(q + 1));
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) aug[i][j] = dot(rows[chosen[i]], rows[chosen[j]]);
    aug[i][q] = b[chosen[i]];
  }
  auto piv = rref(aug, q + 1);
  if (piv.size() != q || (q > 0 && piv.back() != q - 1)) throw InternalError("solve: singular Gram matrix");
  RVector x(m);
  for (std::size_t i = 0; i < q; ++i)
    if (aug[i][q] != 0) x = x + aug[i][q] * rows[chosen[i]];
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (dot(rows[i], x) != b[i]) throw PreconditionError("solve: inconsistent linear system");
  return x;
}

// ---------------------------------------------------------------------------
// Lie-theoretic primitives

NilpotencyReport nilpotent_subalgebra_test(const Subspace& s, std::size_t n) {
  NilpotencyReport rep;
  if (s.ambient_dim() != n * n) throw PreconditionError("nilpotent test: ambient is not n^2");
  const auto basis = s.matrices();
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!s.contains(bracket(basis[i], basis[j]))) return rep;
  rep.bracket_closed = true;
  Subspace current = s;
  int steps = 0;
  while (current.dim() > 0) {
    if (steps > static_cast<int>(s.dim())) return rep;
    std::vector<Matrix> next;
    const auto cur = current.matrices();
    for (const auto& x : basis)
      for (const auto& y : cur) {
        Matrix z = bracket(x, y);
        if (!z.is_zero()) next.push_back(std::move(z));
      }
    Subspace following = Subspace::span(n * n, std::span<const Matrix>(next));
    ++steps;
    if (following.dim() == current.dim()) return rep;  // stabilized above 0
    current = std::move(following);
  }
  rep.nilpotent = true;
  rep.lcs_length = steps;
  return rep;
}

bool ad_nilpotent(const Matrix& z, const MatrixAlgebra& ambient) {
  const std::size_t d = ambient.algebra.dim();
  for (const auto& x : ambient.algebra.matrices()) {
    Matrix v = x;
    std::size_t k = 0;
    while (!v.is_zero()) {
      if (k == d) return false;
      v = bracket(z, v);
      ++k;
    }
  }
  return true;
}

std::vector<WeightSpace> weight_decomposition(std::span<const Matrix> family, const Subspace& v) {
  if (family.empty()) throw PreconditionError("weight_decomposition: empty family");
  const std::size_t n = family[0].dim();
  if (v.ambient_dim() != n * n) throw PreconditionError("weight_decomposition: ambient is not n^2");
  for (const auto& h : family)
    if (h.dim() != n || !h.is_diagonal())
      throw PreconditionError("weight_decomposition: family must consist of diagonal matrices (invalid Cartan choice)");
  // ad(h) acts on the matrix unit E_ab by h_aa - h_bb.
  std::map<RVector, std::vector<bool>> groups;
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t a = 0; a < n; ++a) {
      RVector w(family.size());
      for (std::size_t k = 0; k < family.size(); ++k) w[k] = family[k](a, a) - family[k](b, b);
      auto [it, _] = groups.try_emplace(std::move(w), std::vector<bool>(n * n, false));
      it->second[a + b * n] = true;
    }
  std::vector<WeightSpace> out;
  std::size_t total = 0;
  for (auto& [w, mask] : groups) {
    Subspace sp = v.restrict_to_coordinates(mask);
    if (sp.dim() == 0) continue;
    total += sp.dim();
    out.push_back({w, std::move(sp)});
  }
  if (total != v.dim())
    throw PreconditionError("weight_decomposition: subspace is not stable under the family (generalized eigenspaces exceed eigenspaces)");
  return out;
}

CoefficientStream::CoefficientStream(std::uint64_t seed) : engine_(seed) {}

int CoefficientStream::next() {
  std::uniform_int_distribution<int> dist(-3, 3);
  return dist(engine_);
}

Matrix CoefficientStream::combination(std::span<const Matrix> basis) {
  if (basis.empty()) return {};
  Matrix m(basis[0].dim());
  for (const auto& b : basis) {
    int c = next();
    if (c != 0) m += Rational(c) * b;
  }
  return m;
}

}  // namespace vb
