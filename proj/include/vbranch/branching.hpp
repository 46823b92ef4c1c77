#pragma once

// Truncated formal characters of generalized Verma modules restricted to a
// symmetric subalgebra: the multiplicities m(delta; lambda), the character
// identity, strongly orthogonal roots, Schmid decompositions and the
// explicit multiplicity-free laws.
//
// All series live in the displacement lattice relative to lambda|j'.  The
// central (symbolic) part of lambda never enters the arithmetic.

#include "vbranch/parabolic.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vb {

/// Everything about (g, g^tau, p) that the engine needs, computed once.
struct BranchingContext {
  SymmetricPair pair;
  ParabolicData parabolic;
  RVector h_fixed;        // epsilon values on j of (H + tau H)/2
  RVector h_prime;        // the same element in the epsilon coordinates of j'
  RootDatum l_datum;      // Delta(l, j)
  RootDatum l_prime;      // Delta(l^tau, j')
  std::vector<RVector> u_minus;        // Delta(u_-) restricted to j', with repetition
  std::vector<RVector> u_minus_tau;    // Delta(u_- ∩ g^tau, j')
  std::vector<RVector> u_minus_anti;   // Delta(u_- ∩ g^{-tau}, j')
  std::optional<Rational> a;           // min level on u_-^{-tau}; empty if u_-^{-tau} = 0

  /// -mu(H_fixed) for a j'-weight mu.
  Rational level(const RVector& mu) const { return -dot(mu, h_prime); }
  /// Largest degree that can reach `level`: floor(level / a), 0 if a is empty.
  int degree_cap(const Rational& level) const;
};

/// Throws PreconditionError("restriction not discretely decomposable for
/// this embedding") unless tau p = p.
BranchingContext make_context(const SymmetricPair& pair, const ParabolicData& p);

struct VermaSpec {
  RVector lambda;  // on j; only its pairings with Delta(l) matter to the engine
  bool scalar_type = true;
  std::vector<std::string> assumptions;
};

/// Validates lambda in Lambda^+(l).  The empty vector means the scalar-type
/// generic weight (lambda|[l,l] = 0, central part symbolic).
VermaSpec make_verma(const BranchingContext& ctx, RVector lambda = {});

WeightMultiset tensor(const WeightMultiset& a, const WeightMultiset& b);
WeightMultiset shifted(const WeightMultiset& a, const RVector& by);

/// k-th symmetric power of the module with the given weights.
WeightMultiset sym_power_character(const std::vector<RVector>& weights, int k);
/// All symmetric powers of degree 0..N at once.
std::vector<WeightMultiset> sym_power_series(const std::vector<RVector>& weights, std::size_t dim, int N);

/// ch F_lambda restricted to j' (absolute weights).
WeightMultiset restrict_finite_module(const BranchingContext& ctx, const RVector& lambda,
                                      FreudenthalCache* cache = nullptr);

/// Greedy peel into l'-irreducibles.  Throws InternalError when the
/// multiset is not a module character.
std::vector<std::pair<RVector, Integer>> decompose_character(const WeightMultiset& chi, const RootDatum& datum,
                                                             FreudenthalCache* cache = nullptr);

/// terms[k][displacement] = multiplicity of the weight in F_lambda|j' ⊗ S^k(u_-^{-tau}).
struct CharacterSeries {
  RVector base_offset;
  std::vector<WeightMultiset> terms;
  int degree_bound = 0;
};

CharacterSeries character_series(const BranchingContext& ctx, const VermaSpec& spec, int N);

struct BranchingEntry {
  RVector delta_displacement;
  Integer multiplicity;
  int degree = 0;              // first symmetric degree where delta occurs
  Rational level;
  int max_degree = 0;          // no contribution beyond this degree
  bool complete = true;        // every contributing degree was computed

  friend bool operator==(const BranchingEntry&, const BranchingEntry&) = default;
};

struct BranchingTable {
  RVector base_offset;
  std::vector<BranchingEntry> entries;
  int degree_bound = 0;
  std::vector<std::string> assumptions;

  /// displacement -> multiplicity
  std::map<RVector, Integer> as_map() const;
  bool multiplicity_free() const;
};

BranchingTable branch_multiplicities(const BranchingContext& ctx, const VermaSpec& spec, int N);

/// Compares ch M(lambda)|j' and sum_delta m(delta) ch M'(delta) up to the
/// given H-level.  The table must be complete up to that level.
bool verify_character_identity(const BranchingContext& ctx, const VermaSpec& spec, const BranchingTable& table,
                               const Rational& L);
/// Computes the table itself with the degree bound the level needs.
bool verify_character_identity(const BranchingContext& ctx, const VermaSpec& spec, const Rational& L);

/// Greedy maximal sequence, "highest" for the regular functional of torus.
std::vector<RVector> strongly_orthogonal_sequence(const std::vector<RVector>& weights,
                                                  const std::set<RVector>& roots, const Torus& torus);
/// Nonzero restrictions of Delta(g, j) to j'.
std::set<RVector> restricted_root_set(const BranchingContext& ctx);

struct SchmidReport {
  std::vector<RVector> nu;
  std::map<int, std::set<RVector>> D;        // D by degree
  std::map<int, std::set<RVector>> found;    // highest weights of S^k(u_-^{-tau})
  bool multiplicity_free = false;
  bool matches_D = false;
};

/// Throws PreconditionError("abelian-nilradical hypothesis violated") unless
/// [u+, u+] = 0 and tau p = p.
SchmidReport schmid_decomposition(const BranchingContext& ctx, int N);

enum class LawFamily { AA, BD, DB };

LawFamily parse_law(const std::string& s);
std::string law_name(LawFamily f);
/// Pair realizing the law: AA -> gl_down_gl(n, l), BD -> so_down_so(2n),
/// DB -> so_down_so(2n+1), always with the standard Borel.
PairSpec law_pair(LawFamily f, int n, int l);
/// Displacements of the explicit law over k with |k| <= N, multiplicity 1.
BranchingTable closed_form_law(LawFamily f, int n, int l, int N);

struct GenericityReport {
  bool simple_certified = false;
  bool distinct_infchar = false;
};

/// lambda numeric; table displacements are taken relative to lambda|j'.
GenericityReport genericity_check(const BranchingContext& ctx, const RVector& lambda, const BranchingTable& table);

struct MfScanEntry {
  PairSpec spec;
  std::string label;
  std::size_t dim_g = 0, dim_fixed = 0, rank_g = 0, rank_fixed = 0;
  bool passes = false;
};

/// Catalog pairs with simple g and rank g <= R, each tested against
/// dim g - dim g^tau <= rank g + rank g^tau.
std::vector<MfScanEntry> mf_scan(int R);

}  // namespace vb
