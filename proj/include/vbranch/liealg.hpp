#pragma once

// Classical Lie algebras as matrix algebras with a diagonal Cartan, their
// root data, Weyl groups (as signed permutations of epsilon coordinates) and
// finite-dimensional characters via Freudenthal's recursion.

#include "vbranch/exactla.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vb {

enum class Family { A, B, C, D };

struct ClassicalType {
  Family family = Family::A;
  int rank = 1;

  std::string name() const;
  /// Parses "A3", "B2", ...
  static ClassicalType parse(std::string_view text);
  friend bool operator==(const ClassicalType&, const ClassicalType&) = default;
};

/// A torus of diagonal matrices together with the epsilon functionals that
/// give weights their coordinates.  eps[i] holds the coefficients of the
/// i-th functional on the diagonal entries.
struct Torus {
  std::vector<Matrix> basis;
  std::vector<RVector> eps;
  /// Epsilon values of the regular element fixing the positive system.
  RVector regular;

  std::size_t rank() const { return basis.size(); }
  std::size_t coords() const { return eps.size(); }

  RVector eps_values(const Matrix& h) const;
  /// mu(h) for a weight given in epsilon coordinates.
  Rational evaluate(const RVector& weight, const Matrix& h) const;
  /// Epsilon coordinates of the functional taking `values` on basis[k].  The
  /// representative orthogonal to the relations among the eps is returned
  /// (for sl this is the trace-free representative).
  RVector weight_from_basis_values(const RVector& values) const;
  /// The torus element whose epsilon values are h.
  Matrix element_from_eps_values(const RVector& h) const;
  Rational regular_value(const RVector& weight) const { return dot(weight, regular); }
};

/// Orders weights by the regular functional, ties broken lexicographically.
bool regular_less(const Torus& t, const RVector& a, const RVector& b);

struct AlgebraRealization {
  std::string label;
  ClassicalType type;
  int copies = 1;   // 2 for the group case g + g
  bool gl = false;  // gl_{n+1} with its centre instead of sl_{n+1}
  std::size_t matrix_dim = 0;
  Subspace algebra;
  std::vector<Matrix> cartan_basis;
  std::optional<Matrix> form;
  Torus torus;

  std::size_t dim() const { return algebra.dim(); }
  std::size_t rank() const { return cartan_basis.size(); }
  MatrixAlgebra ambient() const { return {matrix_dim, algebra}; }
};

/// Split realizations: sl_{n+1}, so_{2n+1}, sp_{2n}, so_{2n} with
/// anti-diagonal forms so that the Cartan is diagonal and the upper
/// triangular part is the standard Borel.
AlgebraRealization build_classical(ClassicalType type);
/// ad(z) is nilpotent on g, for z in g.  In all realizations here the
/// centre is at most the scalars, so this is nilpotency of z - (tr z / n) I
/// (of z itself when g is semisimple).
bool nilpotent_element(const AlgebraRealization& g, const Matrix& z);

/// gl_m with its one-dimensional centre.
AlgebraRealization build_gl(int m);
/// g + g realized block diagonally.
AlgebraRealization build_double(const AlgebraRealization& g);

struct Root {
  RVector weight;          // epsilon coordinates
  Subspace space;          // one-dimensional root space
  Matrix vector;           // spanning element of the root space
  Matrix coroot;           // h in the torus with alpha(h) = 2
  RVector coroot_values;   // epsilon values of the coroot
};

struct RootDatum {
  Torus torus;
  std::size_t matrix_dim = 0;
  Subspace cartan;
  std::vector<Root> roots;
  std::vector<std::size_t> positive;
  std::vector<std::size_t> simple;  // ordered by leading epsilon index
  RVector rho;
  std::map<RVector, std::size_t> index;

  /// <mu, alpha^vee>.
  Rational pairing(const RVector& mu, std::size_t root) const;
  std::optional<std::size_t> find(const RVector& weight) const;
  bool is_positive(std::size_t root) const;
  std::size_t semisimple_rank() const { return simple.size(); }

  /// Closed subsystem of roots satisfying pred, positive system inherited.
  template <class Pred>
  RootDatum subsystem(Pred pred) const {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (pred(roots[i])) keep.push_back(i);
    return restrict_to(keep);
  }
  RootDatum restrict_to(const std::vector<std::size_t>& keep) const;
};

/// Root datum of a matrix Lie algebra with respect to a diagonal torus; the
/// positive system is the one on which the torus' regular element is
/// positive.  Throws InternalError if a root space is not one-dimensional
/// or the regular element is singular.
RootDatum root_datum_of(const Torus& torus, const Subspace& algebra, std::size_t n);
RootDatum root_datum(const AlgebraRealization& g);

bool is_dominant_integral(const RootDatum& datum, const RVector& lambda);

using WeightMultiset = std::map<RVector, Integer>;

/// Caller-owned memo for Freudenthal characters keyed by highest weight.
class FreudenthalCache {
public:
  const WeightMultiset* find(const RVector& lambda) const;
  const WeightMultiset& store(const RVector& lambda, WeightMultiset chi);

private:
  std::map<RVector, WeightMultiset> memo_;
};

/// Full weight multiset of the simple module with highest weight lambda.
/// Throws PreconditionError if lambda is not dominant integral.
WeightMultiset freudenthal_character(const RootDatum& datum, const RVector& lambda,
                                     FreudenthalCache* cache = nullptr);
Integer weyl_dimension(const RootDatum& datum, const RVector& lambda);

/// Signed permutation of epsilon coordinates: (w v)[perm[i]] = sign[i] v[i].
struct WeylElement {
  std::vector<int> perm;
  std::vector<int> sign;

  static WeylElement identity(std::size_t n);
  RVector apply(const RVector& v) const;
  /// (*this) after `other`.
  WeylElement compose(const WeylElement& other) const;
  WeylElement inverse() const;
  int minus_count() const;
  friend bool operator==(const WeylElement&, const WeylElement&) = default;
  friend auto operator<=>(const WeylElement&, const WeylElement&) = default;
};

WeylElement reflection(const RootDatum& datum, std::size_t root);
/// Full enumeration; semisimple rank is capped at 6.
std::vector<WeylElement> weyl_group(const RootDatum& datum);

}  // namespace vb
