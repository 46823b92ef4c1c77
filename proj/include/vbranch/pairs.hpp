#pragma once

// Symmetric pairs (g, g^tau) from a small catalog.  Every involution is
// stored as an explicit conjugator, so fixed points, projections and
// eigenspace splits are plain linear algebra.

#include "vbranch/liealg.hpp"

#include <string>
#include <vector>

namespace vb {

enum class PairKind { GlDownGl, SlSGlGl, SoDownSo, SpDownGl, GroupCase };

struct PairSpec {
  PairKind kind = PairKind::SlSGlGl;
  int n = 0, l = 0, p = 0, q = 0, m = 0;
  ClassicalType type;  // GroupCase only

  /// Canonical string id, e.g. "gl_down_gl:n=3,l=2".
  std::string id() const;
  /// Parses a catalog id; throws PreconditionError listing the catalog.
  static PairSpec parse(std::string_view text);

  static PairSpec gl_down_gl(int n, int l) { PairSpec s; s.kind = PairKind::GlDownGl; s.n = n; s.l = l; return s; }
  static PairSpec sl_s_glgl(int p, int q) { PairSpec s; s.kind = PairKind::SlSGlGl; s.p = p; s.q = q; return s; }
  static PairSpec so_down_so(int m) { PairSpec s; s.kind = PairKind::SoDownSo; s.m = m; return s; }
  static PairSpec sp_down_gl(int n) { PairSpec s; s.kind = PairKind::SpDownGl; s.n = n; return s; }
  static PairSpec group_case(ClassicalType t) { PairSpec s; s.kind = PairKind::GroupCase; s.type = t; return s; }
};

/// Human-readable description of the catalog for error messages.
std::string catalog_help();

struct Involution {
  Matrix conjugator;
  Matrix conjugator_inverse;
  bool is_inner = true;

  Matrix apply(const Matrix& z) const { return conjugator * z * conjugator_inverse; }
};

struct SymmetricPair {
  PairSpec spec;
  std::string label;
  AlgebraRealization g;
  Involution tau;
  Subspace fixed;  // g^tau
  Subspace minus;  // g^{-tau}
  /// j' = j^tau with its own epsilon functionals and regular element.
  Torus j_prime;
  RootDatum datum;       // (g, j)
  RootDatum restricted;  // (g^tau, j')

  std::size_t n() const { return g.matrix_dim; }
  MatrixAlgebra ambient() const { return g.ambient(); }
  /// (Z + tau Z) / 2.
  Matrix project(const Matrix& z) const;
  /// Restriction of a j-weight to j', in the epsilon coordinates of j'.
  RVector restrict_weight(const RVector& mu) const;
  /// tau acts trivially on j.
  bool tau_trivial_on_cartan() const;
};

SymmetricPair build_pair(const PairSpec& spec);

struct TauSplit {
  Subspace plus;   // V ∩ g^tau
  Subspace minus;  // V ∩ g^{-tau}
  Subspace pr;     // (1 + tau)/2 applied to V
};

TauSplit tau_split(const SymmetricPair& pair, const Subspace& v);

/// Root datum of (g^tau, j^tau); identical to pair.restricted.
const RootDatum& restricted_root_data(const SymmetricPair& pair);

/// tr(ad X ad Y) on g.
Rational killing_form(const AlgebraRealization& g, const Matrix& x, const Matrix& y);

struct PairValidation {
  bool involutive = false;
  bool automorphism = false;
  bool preserves_cartan = false;
  bool dimensions_add = false;
  bool killing_orthogonal = false;
  bool ok() const { return involutive && automorphism && preserves_cartan && dimensions_add && killing_orthogonal; }
};

/// Exact checks of the structural invariants on bases.  The Killing check is
/// skipped (reported true) when skip_killing is set, since it is the costly part.
PairValidation validate_pair(const SymmetricPair& pair, bool skip_killing = false);

}  // namespace vb
