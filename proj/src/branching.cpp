#include "vbranch/branching.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace vb {

namespace {

const char* kNotDecomposable = "restriction not discretely decomposable for this embedding";

void add_into(WeightMultiset& acc, const RVector& w, const Integer& m) {
  if (m == 0) return;
  auto [it, fresh] = acc.try_emplace(w, m);
  if (!fresh) {
    it->second += m;
    if (it->second == 0) acc.erase(it);
  }
}

bool weight_greater(const Torus& t, const RVector& a, const RVector& b) { return regular_less(t, b, a); }

std::string linear_form(const RVector& c) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Rational v = c[i];
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    Rational a = abs(v);
    if (a != 1) os << to_string(a);
    os << "lambda" << i + 1;
    first = false;
  }
  return first ? "0" : os.str();
}

std::vector<std::string> generic_assumptions(const BranchingContext& ctx) {
  std::vector<std::string> out;
  std::set<RVector> forms;
  const auto& rd = ctx.pair.restricted;
  for (auto b : rd.positive) {
    if (dot(rd.roots[b].weight, ctx.h_prime) == 0) continue;
    RVector c = ctx.pair.g.torus.eps_values(rd.roots[b].coroot);
    if (forms.insert(c).second) out.push_back(linear_form(c) + " not in Z");
  }
  return out;
}

// init * prod_w (1 - e^w)^{-1}, keeping terms of level <= L.
WeightMultiset truncated_product(WeightMultiset init, const std::vector<RVector>& weights,
                                 const BranchingContext& ctx, const Rational& L) {
  for (auto it = init.begin(); it != init.end();)
    it = ctx.level(it->first) > L ? init.erase(it) : std::next(it);
  for (const auto& w : weights) {
    if (ctx.level(w) <= 0) throw InternalError("non-positive level in a negative nilradical");
    WeightMultiset result = init, cur = std::move(init);
    while (!cur.empty()) {
      WeightMultiset next;
      for (const auto& [mu, m] : cur) {
        RVector nu = mu + w;
        if (ctx.level(nu) <= L) add_into(next, nu, m);
      }
      for (const auto& [mu, m] : next) add_into(result, mu, m);
      cur = std::move(next);
    }
    init = std::move(result);
  }
  return init;
}

}  // namespace

int BranchingContext::degree_cap(const Rational& lvl) const {
  if (!a || lvl < 0) return 0;
  Rational q = lvl / *a;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return static_cast<int>(f.get_si());
}

BranchingContext make_context(const SymmetricPair& pair, const ParabolicData& p) {
  auto compat = compatibility_report(p, pair);
  if (!compat.compatible) throw PreconditionError(kNotDecomposable);
  BranchingContext ctx;
  ctx.pair = pair;
  ctx.parabolic = p;
  ctx.h_fixed = compat.h_fixed;
  ctx.h_prime = pair.j_prime.eps_values(*compat.H_fixed);
  ctx.l_datum = pair.datum.subsystem([&](const Root& r) { return dot(r.weight, p.h) == 0; });
  ctx.l_prime = pair.restricted.subsystem([&](const Root& r) { return dot(r.weight, ctx.h_prime) == 0; });
  for (auto i : p.opposite_roots) ctx.u_minus.push_back(pair.restrict_weight(pair.datum.roots[i].weight));
  for (const auto& r : pair.restricted.roots)
    if (dot(r.weight, ctx.h_prime) < 0) ctx.u_minus_tau.push_back(r.weight);
  Subspace anti = p.u_minus.intersect(pair.minus);
  if (anti.dim() > 0)
    for (const auto& ws : weight_decomposition(pair.j_prime.basis, anti)) {
      RVector w = pair.j_prime.weight_from_basis_values(ws.weight);
      for (std::size_t k = 0; k < ws.space.dim(); ++k) ctx.u_minus_anti.push_back(w);
    }
  std::sort(ctx.u_minus_anti.begin(), ctx.u_minus_anti.end());

  // u_- = u_-^tau + u_-^{-tau} as j'-modules.
  std::vector<RVector> lhs = ctx.u_minus, rhs = ctx.u_minus_tau;
  rhs.insert(rhs.end(), ctx.u_minus_anti.begin(), ctx.u_minus_anti.end());
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  if (lhs != rhs) throw InternalError("u_- does not split into its tau eigenspaces on j'");

  for (const auto& w : ctx.u_minus_anti) {
    Rational lv = ctx.level(w);
    if (lv <= 0) throw InternalError("u_-^{-tau} weight with non-positive level");
    if (!ctx.a || lv < *ctx.a) ctx.a = lv;
  }
  return ctx;
}

VermaSpec make_verma(const BranchingContext& ctx, RVector lambda) {
  const std::size_t n = ctx.pair.g.torus.coords();
  if (lambda.empty()) lambda = RVector(n);
  if (lambda.size() != n) throw PreconditionError("lambda must have " + std::to_string(n) + " coordinates");
  VermaSpec spec;
  spec.scalar_type = true;
  for (auto i : ctx.l_datum.positive) {
    Rational v = ctx.l_datum.pairing(lambda, i);
    if (v.get_den() != 1 || v < 0)
      throw PreconditionError("lambda " + to_string(lambda) + " is not in Lambda+(l)");
    if (v != 0) spec.scalar_type = false;
  }
  spec.lambda = std::move(lambda);
  spec.assumptions = generic_assumptions(ctx);
  return spec;
}

WeightMultiset tensor(const WeightMultiset& a, const WeightMultiset& b) {
  WeightMultiset out;
  for (const auto& [x, m] : a)
    for (const auto& [y, k] : b) add_into(out, x + y, m * k);
  return out;
}

WeightMultiset shifted(const WeightMultiset& a, const RVector& by) {
  WeightMultiset out;
  for (const auto& [x, m] : a) out.emplace(x + by, m);
  return out;
}

std::vector<WeightMultiset> sym_power_series(const std::vector<RVector>& weights, std::size_t dim, int N) {
  if (N < 0) throw PreconditionError("negative symmetric degree");
  std::vector<WeightMultiset> s(N + 1);
  s[0][RVector(dim)] = 1;
  for (const auto& w : weights)
    for (int d = 1; d <= N; ++d)
      for (const auto& [mu, m] : s[d - 1]) add_into(s[d], mu + w, m);
  return s;
}

WeightMultiset sym_power_character(const std::vector<RVector>& weights, int k) {
  return sym_power_series(weights, weights.empty() ? 0 : weights[0].size(), k)[k];
}

WeightMultiset restrict_finite_module(const BranchingContext& ctx, const RVector& lambda, FreudenthalCache* cache) {
  WeightMultiset out;
  for (const auto& [mu, m] : freudenthal_character(ctx.l_datum, lambda, cache))
    add_into(out, ctx.pair.restrict_weight(mu), m);
  return out;
}

std::vector<std::pair<RVector, Integer>> decompose_character(const WeightMultiset& chi, const RootDatum& datum,
                                                             FreudenthalCache* cache) {
  WeightMultiset rest;
  for (const auto& [w, m] : chi) {
    if (m < 0) throw InternalError("negative multiplicity in a module character");
    if (m != 0) rest.emplace(w, m);
  }
  std::vector<std::pair<RVector, Integer>> out;
  while (!rest.empty()) {
    auto top = rest.begin();
    for (auto it = std::next(rest.begin()); it != rest.end(); ++it)
      if (weight_greater(datum.torus, it->first, top->first)) top = it;
    const RVector hw = top->first;
    const Integer m = top->second;
    if (!is_dominant_integral(datum, hw))
      throw InternalError("maximal weight " + to_string(hw) + " is not dominant: not a module character");
    for (const auto& [w, k] : freudenthal_character(datum, hw, cache)) {
      auto it = rest.find(w);
      Integer left = (it == rest.end() ? Integer(0) : it->second) - m * k;
      if (left < 0) throw InternalError("negative residual multiplicity at " + to_string(w));
      if (left == 0)
        rest.erase(it);
      else
        it->second = left;
    }
    out.emplace_back(hw, m);
  }
  return out;
}

CharacterSeries character_series(const BranchingContext& ctx, const VermaSpec& spec, int N) {
  CharacterSeries cs;
  cs.base_offset = ctx.pair.restrict_weight(spec.lambda);
  cs.degree_bound = N;
  WeightMultiset f = shifted(restrict_finite_module(ctx, spec.lambda), -cs.base_offset);
  auto s = sym_power_series(ctx.u_minus_anti, ctx.pair.j_prime.coords(), N);
  for (int k = 0; k <= N; ++k) cs.terms.push_back(tensor(f, s[k]));
  return cs;
}

std::map<RVector, Integer> BranchingTable::as_map() const {
  std::map<RVector, Integer> out;
  for (const auto& e : entries) out[e.delta_displacement] += e.multiplicity;
  return out;
}

bool BranchingTable::multiplicity_free() const {
  for (const auto& e : entries)
    if (e.multiplicity != 1) return false;
  return true;
}

BranchingTable branch_multiplicities(const BranchingContext& ctx, const VermaSpec& spec, int N) {
  if (N < 0) throw PreconditionError("degree bound must be non-negative");
  auto cs = character_series(ctx, spec, N);
  FreudenthalCache cache;
  struct Acc {
    Integer mult;
    int first;
  };
  std::map<RVector, Acc> acc;
  for (int k = 0; k <= N; ++k)
    for (auto& [delta, m] : decompose_character(shifted(cs.terms[k], cs.base_offset), ctx.l_prime, &cache)) {
      RVector disp = delta - cs.base_offset;
      auto [it, fresh] = acc.try_emplace(disp, Acc{m, k});
      if (!fresh) it->second.mult += m;
    }
  BranchingTable t;
  t.base_offset = cs.base_offset;
  t.degree_bound = N;
  t.assumptions = spec.assumptions;
  for (auto& [disp, a] : acc) {
    BranchingEntry e;
    e.delta_displacement = disp;
    e.multiplicity = a.mult;
    e.degree = a.first;
    e.level = ctx.level(disp);
    e.max_degree = ctx.degree_cap(e.level);
    e.complete = e.max_degree <= N;
    t.entries.push_back(std::move(e));
  }
  std::sort(t.entries.begin(), t.entries.end(), [](const BranchingEntry& x, const BranchingEntry& y) {
    if (x.degree != y.degree) return x.degree < y.degree;
    if (x.level != y.level) return x.level < y.level;
    return y.delta_displacement < x.delta_displacement;
  });
  return t;
}

bool verify_character_identity(const BranchingContext& ctx, const VermaSpec& spec, const BranchingTable& table,
                               const Rational& L) {
  if (table.degree_bound < ctx.degree_cap(L))
    throw PreconditionError("branching table is truncated below the requested level");
  const RVector base = ctx.pair.restrict_weight(spec.lambda);
  WeightMultiset lhs = truncated_product(shifted(restrict_finite_module(ctx, spec.lambda), -base), ctx.u_minus, ctx, L);

  FreudenthalCache cache;
  WeightMultiset acc;
  for (const auto& e : table.entries) {
    if (ctx.level(e.delta_displacement) > L) continue;
    for (const auto& [w, k] : freudenthal_character(ctx.l_prime, base + e.delta_displacement, &cache))
      add_into(acc, w - base, e.multiplicity * k);
  }
  WeightMultiset rhs = truncated_product(std::move(acc), ctx.u_minus_tau, ctx, L);
  return lhs == rhs;
}

bool verify_character_identity(const BranchingContext& ctx, const VermaSpec& spec, const Rational& L) {
  return verify_character_identity(ctx, spec, branch_multiplicities(ctx, spec, ctx.degree_cap(L)), L);
}

std::vector<RVector> strongly_orthogonal_sequence(const std::vector<RVector>& weights,
                                                  const std::set<RVector>& roots, const Torus& torus) {
  std::vector<RVector> pool(weights.begin(), weights.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::sort(pool.begin(), pool.end(), [&](const RVector& a, const RVector& b) { return weight_greater(torus, a, b); });
  std::vector<RVector> chosen;
  for (const auto& w : pool) {
    bool ok = true;
    for (const auto& c : chosen)
      if (roots.count(w + c) || roots.count(w - c)) {
        ok = false;
        break;
      }
    if (ok) chosen.push_back(w);
  }
  return chosen;
}

std::set<RVector> restricted_root_set(const BranchingContext& ctx) {
  std::set<RVector> out;
  for (const auto& r : ctx.pair.datum.roots) {
    RVector w = ctx.pair.restrict_weight(r.weight);
    if (!is_zero(w)) out.insert(std::move(w));
  }
  return out;
}

SchmidReport schmid_decomposition(const BranchingContext& ctx, int N) {
  const auto u = ctx.parabolic.u_plus.matrices();
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (!bracket(u[i], u[j]).is_zero()) throw PreconditionError("abelian-nilradical hypothesis violated");
  SchmidReport rep;
  rep.nu = strongly_orthogonal_sequence(ctx.u_minus_anti, restricted_root_set(ctx), ctx.pair.j_prime);
  const std::size_t dim = ctx.pair.j_prime.coords();
  const std::size_t parts = rep.nu.size();

  // a_1 >= ... >= a_k >= 0 with sum d.
  std::function<void(int, std::size_t, int, RVector&, std::set<RVector>&)> gen =
      [&](int left, std::size_t idx, int cap, RVector& w, std::set<RVector>& out) {
        if (left == 0) {
          out.insert(w);
          return;
        }
        if (idx == parts) return;
        for (int x = std::min(left, cap); x >= 1; --x) {
          RVector next = w + Rational(x) * rep.nu[idx];
          gen(left - x, idx + 1, x, next, out);
        }
      };
  for (int d = 0; d <= N; ++d) {
    RVector zero(dim);
    gen(d, 0, d, zero, rep.D[d]);
  }
  auto s = sym_power_series(ctx.u_minus_anti, dim, N);
  FreudenthalCache cache;
  rep.multiplicity_free = true;
  rep.matches_D = true;
  for (int d = 0; d <= N; ++d) {
    for (const auto& [hw, m] : decompose_character(s[d], ctx.l_prime, &cache)) {
      if (m != 1) rep.multiplicity_free = false;
      rep.found[d].insert(hw);
    }
    if (rep.found[d] != rep.D[d]) rep.matches_D = false;
  }
  return rep;
}

LawFamily parse_law(const std::string& s) {
  if (s == "AA") return LawFamily::AA;
  if (s == "BD") return LawFamily::BD;
  if (s == "DB") return LawFamily::DB;
  throw PreconditionError("unknown law '" + s + "' (AA, BD or DB)");
}

std::string law_name(LawFamily f) {
  switch (f) {
    case LawFamily::AA: return "AA";
    case LawFamily::BD: return "BD";
    case LawFamily::DB: return "DB";
  }
  return {};
}

PairSpec law_pair(LawFamily f, int n, int l) {
  switch (f) {
    case LawFamily::AA: return PairSpec::parse(PairSpec::gl_down_gl(n, l).id());
    case LawFamily::BD: return PairSpec::parse(PairSpec::so_down_so(2 * n).id());
    case LawFamily::DB: return PairSpec::parse(PairSpec::so_down_so(2 * n + 1).id());
  }
  throw PreconditionError("unknown law");
}

BranchingTable closed_form_law(LawFamily f, int n, int l, int N) {
  if (n < 1 || N < 0) throw PreconditionError("law parameters out of range");
  if (f == LawFamily::AA && (l < 1 || l > n + 1)) throw PreconditionError("AA law needs 1 <= l <= n+1");
  BranchingTable t;
  t.degree_bound = N;
  const std::size_t coords = f == LawFamily::AA ? n + 1 : n;
  t.base_offset = RVector(coords);
  t.assumptions.push_back(f == LawFamily::AA ? "lambda_i - lambda_j not in Z for distinct i, j != " + std::to_string(l)
                                             : "lambda_i +- lambda_j not in Z for 1 <= i < j <= " + std::to_string(n));
  std::vector<int> k(n, 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == n) {
      RVector d(coords);
      int total = 0;
      for (int i = 0; i < n; ++i) total += k[i];
      if (f == LawFamily::AA) {
        // k is indexed by the slots other than l (1-based).
        Rational ind = 0;
        for (int i = 0, slot = 1; i < n; ++i, ++slot) {
          if (slot == l) ++slot;
          if (slot < l) {
            d[slot - 1] = -k[i];
            ind += k[i];
          } else {
            d[slot - 1] = k[i];
            ind -= k[i];
          }
        }
        d[l - 1] = ind;
      } else {
        for (int i = 0; i < n; ++i) d[i] = -k[i];
      }
      t.entries.push_back({d, Integer(1), total, Rational(0), total, true});
      return;
    }
    for (int x = 0; x <= left; ++x) {
      k[idx] = x;
      rec(idx + 1, left - x);
    }
    k[idx] = 0;
  };
  rec(0, N);
  std::sort(t.entries.begin(), t.entries.end(), [](const BranchingEntry& x, const BranchingEntry& y) {
    if (x.degree != y.degree) return x.degree < y.degree;
    return y.delta_displacement < x.delta_displacement;
  });
  return t;
}

GenericityReport genericity_check(const BranchingContext& ctx, const RVector& lambda, const BranchingTable& table) {
  GenericityReport rep;
  const auto& d = ctx.pair.datum;
  if (lambda.size() != d.torus.coords()) throw PreconditionError("lambda has the wrong length");
  RVector rho_p(d.torus.coords());
  for (auto i : ctx.l_datum.positive) rho_p = rho_p + ctx.l_datum.roots[i].weight;
  for (auto i : ctx.parabolic.nilradical_roots) rho_p = rho_p + d.roots[i].weight;
  rho_p = Rational(1, 2) * rho_p;
  const RVector shifted_lambda = lambda + rho_p;
  rep.simple_certified = true;
  for (auto i : ctx.parabolic.nilradical_roots) {
    Rational v = d.pairing(shifted_lambda, i);
    if (v.get_den() == 1 && v >= 1) {
      rep.simple_certified = false;
      break;
    }
  }
  const RVector base = ctx.pair.restrict_weight(lambda);
  const auto w = weyl_group(ctx.pair.restricted);
  const RVector& rho = ctx.pair.restricted.rho;
  std::set<RVector> seen;
  rep.distinct_infchar = true;
  for (const auto& e : table.entries) {
    RVector x = base + e.delta_displacement + rho;
    RVector best = x;
    for (const auto& s : w) best = std::max(best, s.apply(x));
    if (!seen.insert(best).second) {
      rep.distinct_infchar = false;
      break;
    }
  }
  return rep;
}

std::vector<MfScanEntry> mf_scan(int R) {
  if (R < 1 || R > 6) throw PreconditionError("mf_scan rank bound must be in 1..6");
  std::vector<PairSpec> specs;
  for (int total = 2; total <= R + 1; ++total)
    for (int q = 1; 2 * q <= total; ++q) specs.push_back(PairSpec::sl_s_glgl(total - q, q));
  for (int m = 4; (m + 1) / 2 <= R; ++m) specs.push_back(PairSpec::so_down_so(m));
  for (int n = 2; n <= R; ++n) specs.push_back(PairSpec::sp_down_gl(n));
  std::vector<MfScanEntry> out;
  for (const auto& s : specs) {
    auto pair = build_pair(s);
    MfScanEntry e;
    e.spec = s;
    e.label = pair.label;
    e.dim_g = pair.g.dim();
    e.dim_fixed = pair.fixed.dim();
    e.rank_g = pair.g.rank();
    e.rank_fixed = pair.j_prime.rank();
    e.passes = e.dim_g - e.dim_fixed <= e.rank_g + e.rank_fixed;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace vb
