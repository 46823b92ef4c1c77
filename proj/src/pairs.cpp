#include "vbranch/pairs.hpp"

#include <charconv>
#include <map>

namespace vb {

namespace {

std::map<std::string, std::string> parse_params(std::string_view body) {
  std::map<std::string, std::string> out;
  while (!body.empty()) {
    auto comma = body.find(',');
    std::string_view item = body.substr(0, comma);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw PreconditionError("malformed parameter '" + std::string(item) + "'\n" + catalog_help());
    out[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

int int_param(const std::map<std::string, std::string>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw PreconditionError("missing parameter '" + key + "'\n" + catalog_help());
  int v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw PreconditionError("parameter '" + key + "' is not an integer");
  return v;
}

void expect_keys(const std::map<std::string, std::string>& params, std::initializer_list<const char*> keys) {
  if (params.size() != keys.size()) throw PreconditionError("unexpected parameters\n" + catalog_help());
  for (const char* k : keys)
    if (!params.count(k)) throw PreconditionError(std::string("missing parameter '") + k + "'\n" + catalog_help());
}

void check_spec(const PairSpec& s) {
  auto bad = [&](const std::string& why) { throw PreconditionError("invalid pair " + s.id() + ": " + why); };
  switch (s.kind) {
    case PairKind::GlDownGl:
      if (s.n < 1 || s.n > 8) bad("need 1 <= n <= 8");
      if (s.l < 1 || s.l > s.n + 1) bad("need 1 <= l <= n+1");
      break;
    case PairKind::SlSGlGl:
      if (s.p < 1 || s.q < 1 || s.p + s.q > 9) bad("need p, q >= 1 and p+q <= 9");
      break;
    case PairKind::SoDownSo:
      if (s.m < 4 || s.m > 16) bad("need 4 <= m <= 16");
      break;
    case PairKind::SpDownGl:
      if (s.n < 2 || s.n > 8) bad("need 2 <= n <= 8");
      break;
    case PairKind::GroupCase: {
      const int min_rank = s.type.family == Family::A ? 1 : (s.type.family == Family::D ? 3 : 2);
      if (s.type.rank < min_rank || s.type.rank > 4) bad("need a valid classical type of rank <= 4");
      break;
    }
  }
}

Matrix swap_blocks(std::size_t half) {
  Matrix a(2 * half);
  for (std::size_t i = 0; i < half; ++i) {
    a(i, i + half) = 1;
    a(i + half, i) = 1;
  }
  return a;
}

// j' = image of j under (1 + tau)/2, with the epsilon functionals of j that
// survive restriction (nonzero and not repeating an earlier one).
Torus fixed_torus(const AlgebraRealization& g, const Involution& tau) {
  Torus t;
  const std::size_t n = g.matrix_dim;
  std::vector<Matrix> images;
  bool trivial = true;
  for (const auto& h : g.cartan_basis) {
    Matrix th = tau.apply(h);
    if (th != h) trivial = false;
    images.push_back(Rational(1, 2) * (h + th));
  }
  t.basis = trivial ? g.cartan_basis : Subspace::span(n * n, std::span<const Matrix>(images)).matrices();
  std::vector<RVector> kept_values;
  for (const auto& e : g.torus.eps) {
    RVector vals(t.basis.size());
    for (std::size_t k = 0; k < t.basis.size(); ++k)
      for (std::size_t d = 0; d < n; ++d)
        if (e[d] != 0) vals[k] += e[d] * t.basis[k](d, d);
    if (is_zero(vals)) continue;
    bool repeat = false;
    for (const auto& kv : kept_values)
      if (kv == vals) repeat = true;
    if (repeat) continue;
    kept_values.push_back(vals);
    t.eps.push_back(e);
  }
  Matrix h_reg = g.torus.element_from_eps_values(g.torus.regular);
  t.regular = t.eps_values(Rational(1, 2) * (h_reg + tau.apply(h_reg)));
  return t;
}

}  // namespace

std::string PairSpec::id() const {
  switch (kind) {
    case PairKind::GlDownGl: return "gl_down_gl:n=" + std::to_string(n) + ",l=" + std::to_string(l);
    case PairKind::SlSGlGl: return "sl_s_glgl:p=" + std::to_string(p) + ",q=" + std::to_string(q);
    case PairKind::SoDownSo: return "so_down_so:m=" + std::to_string(m);
    case PairKind::SpDownGl: return "sp_down_gl:n=" + std::to_string(n);
    case PairKind::GroupCase: return "group_case:type=" + type.name();
  }
  return {};
}

std::string catalog_help() {
  return "known pairs:\n"
         "  gl_down_gl:n=N,l=L   (gl_{N+1}, gl_1 + gl_N), centralizer of E_LL, 1 <= L <= N+1\n"
         "  sl_s_glgl:p=P,q=Q    (sl_{P+Q}, s(gl_P + gl_Q))\n"
         "  so_down_so:m=M       (so_{M+1}, so_M), M >= 4\n"
         "  sp_down_gl:n=N       (sp_{2N}, gl_N), N >= 2\n"
         "  group_case:type=T    (g + g, diag g), T one of A1.., B2.., C2.., D3..";
}

PairSpec PairSpec::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw PreconditionError("unknown pair '" + std::string(text) + "'\n" + catalog_help());
  std::string name(text.substr(0, colon));
  auto params = parse_params(text.substr(colon + 1));
  PairSpec s;
  if (name == "gl_down_gl") {
    expect_keys(params, {"n", "l"});
    s = gl_down_gl(int_param(params, "n"), int_param(params, "l"));
  } else if (name == "sl_s_glgl") {
    expect_keys(params, {"p", "q"});
    s = sl_s_glgl(int_param(params, "p"), int_param(params, "q"));
  } else if (name == "so_down_so") {
    expect_keys(params, {"m"});
    s = so_down_so(int_param(params, "m"));
  } else if (name == "sp_down_gl") {
    expect_keys(params, {"n"});
    s = sp_down_gl(int_param(params, "n"));
  } else if (name == "group_case") {
    expect_keys(params, {"type"});
    s = group_case(ClassicalType::parse(params.at("type")));
  } else {
    throw PreconditionError("unknown pair '" + std::string(text) + "'\n" + catalog_help());
  }
  check_spec(s);
  return s;
}

Matrix SymmetricPair::project(const Matrix& z) const {
  return Rational(1, 2) * (z + tau.apply(z));
}

RVector SymmetricPair::restrict_weight(const RVector& mu) const {
  RVector values(j_prime.basis.size());
  for (std::size_t k = 0; k < j_prime.basis.size(); ++k) values[k] = g.torus.evaluate(mu, j_prime.basis[k]);
  return j_prime.weight_from_basis_values(values);
}

bool SymmetricPair::tau_trivial_on_cartan() const {
  for (const auto& h : g.cartan_basis)
    if (tau.apply(h) != h) return false;
  return true;
}

SymmetricPair build_pair(const PairSpec& spec) {
  check_spec(spec);
  SymmetricPair pair;
  pair.spec = spec;
  Matrix a;
  switch (spec.kind) {
    case PairKind::GlDownGl: {
      const int m = spec.n + 1;
      pair.g = build_gl(m);
      RVector d(m, Rational(1));
      d[spec.l - 1] = -1;
      a = Matrix::diagonal(d);
      pair.label = "(gl" + std::to_string(m) + ", gl1+gl" + std::to_string(spec.n) + ")";
      break;
    }
    case PairKind::SlSGlGl: {
      const int m = spec.p + spec.q;
      pair.g = build_classical({Family::A, m - 1});
      RVector d(m, Rational(1));
      for (int i = spec.p; i < m; ++i) d[i] = -1;
      a = Matrix::diagonal(d);
      pair.label = "(sl" + std::to_string(m) + ", s(gl" + std::to_string(spec.p) + "+gl" + std::to_string(spec.q) + "))";
      break;
    }
    case PairKind::SoDownSo: {
      const int big = spec.m + 1;
      const int r = big / 2;
      pair.g = build_classical({big % 2 ? Family::B : Family::D, r});
      a = Matrix::identity(big);
      if (big % 2) {
        a(r, r) = -1;
      } else {
        const int c = r - 1;
        a(c, c) = 0;
        a(c + 1, c + 1) = 0;
        a(c, c + 1) = 1;
        a(c + 1, c) = 1;
        pair.tau.is_inner = false;
      }
      pair.label = "(so" + std::to_string(big) + ", so" + std::to_string(spec.m) + ")";
      break;
    }
    case PairKind::SpDownGl: {
      pair.g = build_classical({Family::C, spec.n});
      RVector d(2 * spec.n, Rational(1));
      for (int i = spec.n; i < 2 * spec.n; ++i) d[i] = -1;
      a = Matrix::diagonal(d);
      pair.label = "(sp" + std::to_string(2 * spec.n) + ", gl" + std::to_string(spec.n) + ")";
      break;
    }
    case PairKind::GroupCase: {
      auto base = build_classical(spec.type);
      pair.g = build_double(base);
      a = swap_blocks(base.matrix_dim);
      pair.tau.is_inner = false;
      pair.label = "(" + base.label + "+" + base.label + ", " + base.label + ")";
      break;
    }
  }
  pair.tau.conjugator = a;
  pair.tau.conjugator_inverse = inverse(a);

  const std::size_t n = pair.g.matrix_dim;
  std::vector<Matrix> plus, minus;
  for (const auto& b : pair.g.algebra.matrices()) {
    Matrix tb = pair.tau.apply(b);
    Matrix s = Rational(1, 2) * (b + tb);
    Matrix d = Rational(1, 2) * (b - tb);
    if (!s.is_zero()) plus.push_back(std::move(s));
    if (!d.is_zero()) minus.push_back(std::move(d));
  }
  pair.fixed = Subspace::span(n * n, std::span<const Matrix>(plus));
  pair.minus = Subspace::span(n * n, std::span<const Matrix>(minus));
  pair.j_prime = fixed_torus(pair.g, pair.tau);
  pair.datum = root_datum(pair.g);
  pair.restricted = root_datum_of(pair.j_prime, pair.fixed, n);
  return pair;
}

TauSplit tau_split(const SymmetricPair& pair, const Subspace& v) {
  TauSplit out;
  out.plus = v.intersect(pair.fixed);
  out.minus = v.intersect(pair.minus);
  std::vector<Matrix> images;
  for (const auto& z : v.matrices()) images.push_back(pair.project(z));
  out.pr = Subspace::span(v.ambient_dim(), std::span<const Matrix>(images));
  return out;
}

const RootDatum& restricted_root_data(const SymmetricPair& pair) { return pair.restricted; }

Rational killing_form(const AlgebraRealization& g, const Matrix& x, const Matrix& y) {
  Rational tr;
  const auto& rows = g.algebra.basis();
  const auto& piv = g.algebra.pivots();
  const std::size_t n = g.matrix_dim;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Matrix b = Matrix::from_vector(n, rows[i]);
    Matrix z = bracket(x, bracket(y, b));
    // Echelon rows have a unit pivot and zeros in the other pivot columns.
    tr += z.vectorize()[piv[i]];
  }
  return tr;
}

PairValidation validate_pair(const SymmetricPair& pair, bool skip_killing) {
  PairValidation v;
  const auto basis = pair.g.algebra.matrices();
  std::vector<Matrix> images;
  images.reserve(basis.size());
  v.involutive = true;
  v.automorphism = true;
  for (const auto& b : basis) {
    images.push_back(pair.tau.apply(b));
    if (pair.tau.apply(images.back()) != b) v.involutive = false;
    if (!pair.g.algebra.contains(images.back())) v.automorphism = false;
  }
  for (std::size_t i = 0; i < basis.size() && v.automorphism; ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (pair.tau.apply(bracket(basis[i], basis[j])) != bracket(images[i], images[j])) {
        v.automorphism = false;
        break;
      }
  const std::size_t n = pair.n();
  Subspace cartan = Subspace::span(n * n, std::span<const Matrix>(pair.g.cartan_basis));
  v.preserves_cartan = true;
  for (const auto& h : pair.g.cartan_basis)
    if (!cartan.contains(pair.tau.apply(h))) v.preserves_cartan = false;
  v.dimensions_add = pair.fixed.dim() + pair.minus.dim() == pair.g.dim();
  v.killing_orthogonal = true;
  if (!skip_killing) {
    const auto fx = pair.fixed.matrices();
    const auto mx = pair.minus.matrices();
    for (const auto& x : fx) {
      for (const auto& y : mx)
        if (killing_form(pair.g, x, y) != 0) {
          v.killing_orthogonal = false;
          break;
        }
      if (!v.killing_orthogonal) break;
    }
  }
  return v;
}

}  // namespace vb
