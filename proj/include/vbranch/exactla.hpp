#pragma once

// Exact rational linear algebra over Q and the matrix-Lie-algebra
// primitives (bracket, spans, nilpotency, weight spaces) that every other
// module builds on.  No floating point is used anywhere.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vb {

using Rational = mpq_class;
using Integer = mpz_class;
using RVector = std::vector<Rational>;

/// Raised when a caller violates a documented precondition (bad input,
/// incompatible triple, unknown catalog id, ...).
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal invariant fails; always indicates a bug.
class InternalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const RVector& v);
Rational parse_rational(std::string_view text);

RVector zero_vector(std::size_t n);
bool is_zero(const RVector& v);
Rational dot(const RVector& a, const RVector& b);
RVector operator+(const RVector& a, const RVector& b);
RVector operator-(const RVector& a, const RVector& b);
RVector operator-(const RVector& a);
RVector operator*(const Rational& s, const RVector& v);

/// Square n x n rational matrix.
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}

  static Matrix identity(std::size_t n);
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j);
  static Matrix diagonal(const RVector& d);
  /// Inverse of vectorize(): column-major.
  static Matrix from_vector(std::size_t n, const RVector& v);

  std::size_t dim() const { return n_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i + j * n_]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i + j * n_]; }

  /// Column-major vectorization into Q^{n^2}.
  const RVector& vectorize() const { return a_; }

  bool is_zero() const;
  bool is_diagonal() const;
  RVector diagonal_entries() const;
  Rational trace() const;
  Matrix transpose() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Rational& s, Matrix a);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
  std::size_t n_ = 0;
  RVector a_;
};

/// Inverse of an invertible matrix; throws PreconditionError if singular.
Matrix inverse(const Matrix& m);

/// XY - YX.  Throws PreconditionError on a dimension mismatch.
Matrix bracket(const Matrix& x, const Matrix& y);

/// A linear subspace of Q^d held as its reduced row echelon basis.  Two
/// subspaces are equal iff their echelon bases coincide.
class Subspace {
public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, std::span<const RVector> vectors);
  static Subspace span(std::size_t ambient, std::span<const Matrix> elements);
  static Subspace full(std::size_t ambient);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<RVector>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Basis rows reinterpreted as n x n matrices (ambient must be n^2).
  std::vector<Matrix> matrices() const;

  bool contains(const RVector& v) const;
  bool contains(const Matrix& m) const { return contains(m.vectorize()); }
  bool contains(const Subspace& other) const;

  /// Coefficients of v in the echelon basis; v must lie in the span.
  RVector coordinates(const RVector& v) const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// Intersection with the coordinate subspace spanned by e_i, i in support.
  Subspace restrict_to_coordinates(const std::vector<bool>& support) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend bool operator<(const Subspace& a, const Subspace& b);

private:
  void insert(RVector v);  // v is reduced against rows_ first
  RVector reduce(RVector v) const;

  std::size_t ambient_ = 0;
  std::vector<RVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// The echelon span of a list of coordinate vectors.  Empty input yields the
/// zero subspace of the given ambient dimension.
Subspace echelon_span(std::size_t ambient, std::span<const RVector> vectors);

/// Kernel of the linear map sending the i-th standard basis vector of Q^k to
/// images[i] (all images share one ambient dimension).
std::vector<RVector> kernel(std::span<const RVector> images);

/// Solves M x = b where M is given by rows.  Among all solutions returns the
/// one orthogonal to ker M (minimal Euclidean norm).  Throws
/// PreconditionError if the system is inconsistent.
RVector solve_min_norm(std::span<const RVector> rows, const RVector& b);

/// Ambient matrix Lie algebra: n x n matrices spanning `algebra`.
struct MatrixAlgebra {
  std::size_t n = 0;
  Subspace algebra;
};

struct NilpotencyReport {
  bool bracket_closed = false;
  bool nilpotent = false;
  int lcs_length = 0;
};

/// Bracket-closure and lower-central-series test for a subspace of n x n
/// matrices.  lcs_length counts the steps S ⊋ [S,S] ⊋ ... until 0.
NilpotencyReport nilpotent_subalgebra_test(const Subspace& s, std::size_t n);

/// ad(Z) restricted to the ambient algebra is nilpotent.  Exact.
bool ad_nilpotent(const Matrix& z, const MatrixAlgebra& ambient);

struct WeightSpace {
  RVector weight;  // eigenvalues on the family, in order
  Subspace space;
};

/// Simultaneous eigenspace decomposition of V under a commuting family of
/// diagonal matrices.  Spaces come sorted by weight (lexicographic).
/// Throws PreconditionError when the family is not diagonal or V is not
/// stable under it.
std::vector<WeightSpace> weight_decomposition(std::span<const Matrix> family, const Subspace& v);

/// Deterministic source of small rational combinations, coefficients drawn
/// uniformly from {-3,...,3}.
class CoefficientStream {
public:
  explicit CoefficientStream(std::uint64_t seed);
  Matrix combination(std::span<const Matrix> basis);
  int next();

private:
  std::mt19937_64 engine_;
};

}  // namespace vb
