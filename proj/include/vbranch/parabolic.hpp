#pragma once

// Parabolic subalgebras p(H) for H in the diagonal Cartan, the closedness
// criterion for G^tau P, Levi decomposition of p ∩ g^tau, GK dimensions and
// the census of closed orbits among parabolics containing j.

#include "vbranch/pairs.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vb {

struct ParabolicData {
  std::string name;
  RVector h;  // epsilon values of H
  Matrix H;
  std::vector<std::size_t> levi_roots;       // alpha(H) = 0
  std::vector<std::size_t> nilradical_roots; // alpha(H) > 0
  std::vector<std::size_t> opposite_roots;   // alpha(H) < 0
  Subspace l, u_plus, u_minus, p;

  bool is_borel() const { return levi_roots.empty(); }
};

/// Throws PreconditionError unless H is diagonal and lies in the Cartan.
ParabolicData parabolic_from_H(const AlgebraRealization& g, const RootDatum& datum, const Matrix& H);
/// Same, with H given by its epsilon values.
ParabolicData parabolic_from_eps(const AlgebraRealization& g, const RootDatum& datum, const RVector& h);
/// Standard parabolic whose Levi is generated by the simple roots at the given
/// positions of datum.simple (0-based); H = sum of fundamental coweights
/// outside the subset.
ParabolicData parabolic_from_simple_subset(const AlgebraRealization& g, const RootDatum& datum,
                                           const std::vector<std::size_t>& subset);
/// Simple-root subset of a named standard parabolic: "borel", "heisenberg"
/// (type A), "siegel" (type C), "levi:1,3" (1-based positions).
std::vector<std::size_t> named_subset(const RootDatum& datum, const std::string& name);
/// Accepts the names above and "H:1,0,0,-1" (explicit epsilon values).
ParabolicData named_parabolic(const AlgebraRealization& g, const RootDatum& datum, const std::string& name);

struct CompatibilityReport {
  bool tau_stable = false;
  bool compatible = false;
  std::optional<Matrix> H_fixed;
  RVector h_fixed;  // epsilon values on j of H_fixed, when compatible
};

CompatibilityReport compatibility_report(const ParabolicData& p, const SymmetricPair& pair);

struct ClosednessReport {
  bool closed = false;
  NilpotencyReport nilpotency;
  Subspace pr_u;
  Subspace l_tau;
  Subspace p_tau;
  bool levi_decomposition_verified = false;
  std::optional<int> gk_dim;
};

ClosednessReport closedness_report(const ParabolicData& p, const SymmetricPair& pair);

/// Condition (iii) spot check: `samples` random combinations of a basis of
/// pr_tau(u_+) with coefficients in {-3..3} are all ad-nilpotent on g.
bool nilpotent_elements_spot_check(const Subspace& pr_u, const SymmetricPair& pair, std::uint64_t seed,
                                   int samples = 20);

struct CensusEntry {
  RVector h;  // epsilon values of the representative H
  ParabolicData parabolic;
  int gk_dim = 0;
  std::size_t class_size = 0;
};

struct OrbitCensusReport {
  std::size_t total_parabolics_containing_j = 0;
  std::size_t closed_translates = 0;
  std::size_t closed_count = 0;
  std::vector<CensusEntry> representatives;
};

/// W-translates of the standard parabolic for `subset`, closed ones grouped
/// by W(g^tau, j^tau) acting on j^tau and trivially on j^{-tau}.
OrbitCensusReport closed_orbit_census(const SymmetricPair& pair, const std::vector<std::size_t>& subset);

/// |W' \ W / W_L| counted on epsilon vectors.  Only meaningful when tau is
/// trivial on j; throws PreconditionError otherwise.
std::size_t double_coset_count(const SymmetricPair& pair, const std::vector<std::size_t>& subset);

/// Every distinct W-translate of the standard parabolic for `subset`.
std::vector<ParabolicData> weyl_translates(const AlgebraRealization& g, const RootDatum& datum,
                                           const std::vector<std::size_t>& subset);

struct TensorClosedness {
  bool closed = false;
  bool intersection_parabolic = false;
};

TensorClosedness tensor_closedness(const ParabolicData& p1, const ParabolicData& p2, const RootDatum& datum);

}  // namespace vb
