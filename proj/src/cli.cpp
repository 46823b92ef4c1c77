#include "vbranch/cli.hpp"

#include "CLI11.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <unistd.h>

namespace vb {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json rational_json(const Rational& q) { return to_string(q); }

json vector_json(const RVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_json(x));
  return a;
}

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  throw PreconditionError("expected a rational string, got " + j.dump());
}

RVector vector_from(const json& j) {
  if (!j.is_array()) throw PreconditionError("expected an array, got " + j.dump());
  RVector v;
  for (const auto& x : j) v.push_back(rational_from(x));
  return v;
}

Integer integer_from(const json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return Integer(j.get<std::string>());
  throw PreconditionError("expected an integer, got " + j.dump());
}

template <class T>
json opt_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> opt_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::string plain_vector(const RVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + ")";
}

SymmetricPair pair_of(const RunConfig& cfg) {
  if (cfg.pair_id.empty()) throw PreconditionError("--pair is required\n" + catalog_help());
  return build_pair(PairSpec::parse(cfg.pair_id));
}

void check_caps(const RunConfig& cfg) {
  if (cfg.degree < 0 || cfg.degree > kMaxDegree)
    throw PreconditionError("degree must be in 0.." + std::to_string(kMaxDegree));
  if (cfg.level < 0 || cfg.level > kMaxLevel)
    throw PreconditionError("level must be in 0.." + std::to_string(kMaxLevel));
}

void put_closedness(ResultEnvelope& env, const SymmetricPair& pair, const ParabolicData& p) {
  auto comp = compatibility_report(p, pair);
  auto rep = closedness_report(p, pair);
  env.compatible = comp.compatible;
  env.closed = rep.closed;
  env.gk_dim = rep.gk_dim;
}

void put_table(ResultEnvelope& env, const BranchingTable& t) {
  env.base_offset = t.base_offset;
  for (const auto& e : t.entries)
    env.summands.push_back({e.delta_displacement, e.multiplicity, e.degree, e.level, e.max_degree, e.complete});
  env.assumptions = t.assumptions;
}

void run_pairs(const RunConfig& cfg, ResultEnvelope& env) {
  if (cfg.pair_id.empty()) {
    env.details["catalog"] = catalog_help();
    return;
  }
  auto pair = pair_of(cfg);
  env.pair = pair.label;
  auto val = validate_pair(pair);
  json d;
  d["id"] = pair.spec.id();
  d["dim_g"] = pair.g.dim();
  d["dim_fixed"] = pair.fixed.dim();
  d["rank_g"] = pair.g.rank();
  d["rank_fixed"] = pair.j_prime.rank();
  d["inner"] = pair.tau.is_inner;
  d["valid"] = val.ok();
  json simple = json::array();
  for (auto i : pair.datum.simple) simple.push_back(vector_json(pair.datum.roots[i].weight));
  d["simple_roots"] = simple;
  json rsimple = json::array();
  for (auto i : pair.restricted.simple) rsimple.push_back(vector_json(pair.restricted.roots[i].weight));
  d["restricted_simple_roots"] = rsimple;
  env.details = d;
}

void run_analyze(const RunConfig& cfg, ResultEnvelope& env) {
  auto pair = pair_of(cfg);
  auto p = named_parabolic(pair.g, pair.datum, cfg.parabolic);
  env.pair = pair.label;
  env.parabolic = p.name;
  auto comp = compatibility_report(p, pair);
  auto rep = closedness_report(p, pair);
  env.compatible = comp.compatible;
  env.closed = rep.closed;
  env.gk_dim = rep.gk_dim;
  json d;
  d["H"] = vector_json(p.h);
  d["tau_stable"] = comp.tau_stable;
  d["dim_pr_u"] = rep.pr_u.dim();
  d["nilpotent"] = rep.nilpotency.nilpotent;
  d["spot_check"] = nilpotent_elements_spot_check(rep.pr_u, pair, cfg.seed);
  if (rep.closed) {
    d["dim_l_tau"] = rep.l_tau.dim();
    d["dim_p_tau"] = rep.p_tau.dim();
    d["levi_decomposition_verified"] = rep.levi_decomposition_verified;
  }
  env.details = d;
}

void run_census(const RunConfig& cfg, ResultEnvelope& env) {
  auto pair = pair_of(cfg);
  if (cfg.parabolic.rfind("H:", 0) == 0) throw PreconditionError("census needs a standard parabolic, not H:...");
  auto subset = named_subset(pair.datum, cfg.parabolic);
  env.pair = pair.label;
  env.parabolic = cfg.parabolic;
  auto rep = closed_orbit_census(pair, subset);
  json d;
  d["closed_count"] = rep.closed_count;
  d["closed_translates"] = rep.closed_translates;
  d["parabolics_containing_j"] = rep.total_parabolics_containing_j;
  json reps = json::array();
  for (const auto& e : rep.representatives)
    reps.push_back({{"H", vector_json(e.h)}, {"gk_dim", e.gk_dim}, {"class_size", e.class_size}});
  d["representatives"] = reps;
  env.details = d;
}

BranchingContext context_of(const SymmetricPair& pair, const std::string& parabolic, ResultEnvelope& env) {
  auto p = named_parabolic(pair.g, pair.datum, parabolic);
  env.pair = pair.label;
  env.parabolic = p.name;
  put_closedness(env, pair, p);
  return make_context(pair, p);
}

void run_branch(const RunConfig& cfg, ResultEnvelope& env) {
  auto pair = pair_of(cfg);
  auto ctx = context_of(pair, cfg.parabolic, env);
  auto v = make_verma(ctx, cfg.lambda.value_or(RVector{}));
  auto t = branch_multiplicities(ctx, v, cfg.degree);
  put_table(env, t);
  json d;
  d["degree_bound"] = t.degree_bound;
  d["multiplicity_free"] = t.multiplicity_free();
  d["lambda"] = cfg.lambda ? vector_json(*cfg.lambda) : json("generic");
  if (cfg.lambda) {
    auto g = genericity_check(ctx, *cfg.lambda, t);
    d["simple_certified"] = g.simple_certified;
    d["distinct_infchar"] = g.distinct_infchar;
  }
  env.details = d;
}

void run_verify(const RunConfig& cfg, ResultEnvelope& env) {
  json d;
  if (!cfg.law.empty()) {
    auto f = parse_law(cfg.law);
    auto pair = build_pair(law_pair(f, cfg.law_n, cfg.law_l));
    auto ctx = context_of(pair, "borel", env);
    auto v = make_verma(ctx);
    auto engine = branch_multiplicities(ctx, v, cfg.degree);
    auto law = closed_form_law(f, cfg.law_n, cfg.law_l, cfg.degree);
    bool matches = engine.as_map() == law.as_map();
    bool identity = verify_character_identity(ctx, v, cfg.degree);
    put_table(env, engine);
    d["law"] = law_name(f);
    d["law_matches"] = matches;
    d["identity_at_level"] = identity;
    env.identity_holds = matches && identity;
  } else {
    auto pair = pair_of(cfg);
    auto ctx = context_of(pair, cfg.parabolic, env);
    auto v = make_verma(ctx, cfg.lambda.value_or(RVector{}));
    auto t = branch_multiplicities(ctx, v, ctx.degree_cap(cfg.level));
    put_table(env, t);
    env.identity_holds = verify_character_identity(ctx, v, t, cfg.level);
    d["level"] = cfg.level;
  }
  env.details = d;
}

void run_mf_scan(const RunConfig& cfg, ResultEnvelope& env) {
  json entries = json::array(), passing = json::array();
  for (const auto& e : mf_scan(cfg.rank)) {
    entries.push_back({{"id", e.spec.id()},
                       {"label", e.label},
                       {"dim_g", e.dim_g},
                       {"dim_fixed", e.dim_fixed},
                       {"rank_g", e.rank_g},
                       {"rank_fixed", e.rank_fixed},
                       {"passes", e.passes}});
    if (e.passes) passing.push_back(e.spec.id());
  }
  env.details = {{"rank", cfg.rank}, {"entries", entries}, {"passing", passing}};
}

std::string hex(const unsigned char* p, unsigned n) {
  std::ostringstream os;
  for (unsigned i = 0; i < n; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(p[i]);
  return os.str();
}

}  // namespace

Command parse_command(const std::string& s) {
  if (s == "pairs") return Command::Pairs;
  if (s == "analyze") return Command::Analyze;
  if (s == "census") return Command::Census;
  if (s == "branch") return Command::Branch;
  if (s == "verify") return Command::Verify;
  if (s == "mf-scan") return Command::MfScan;
  throw PreconditionError("unknown command '" + s + "'");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::Pairs: return "pairs";
    case Command::Analyze: return "analyze";
    case Command::Census: return "census";
    case Command::Branch: return "branch";
    case Command::Verify: return "verify";
    case Command::MfScan: return "mf-scan";
  }
  return "?";
}

std::optional<RVector> parse_lambda(const std::string& text) {
  if (text.empty() || text == "generic") return std::nullopt;
  RVector v;
  std::string_view rest = text;
  while (true) {
    auto comma = rest.find(',');
    auto item = rest.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    v.push_back(parse_rational(item));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return v;
}

json canonical_config(const RunConfig& cfg) {
  return {{"command", command_name(cfg.command)},
          {"pair", cfg.pair_id},
          {"parabolic", cfg.parabolic},
          {"lambda", cfg.lambda ? vector_json(*cfg.lambda) : json("generic")},
          {"degree", cfg.degree},
          {"level", cfg.level},
          {"law", cfg.law},
          {"n", cfg.law_n},
          {"l", cfg.law_l},
          {"rank", cfg.rank},
          {"seed", cfg.seed}};
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = canonical_config(cfg).dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned n = 0;
  if (!EVP_Digest(text.data(), text.size(), md, &n, EVP_sha256(), nullptr)) throw InternalError("SHA-256 failed");
  return hex(md, n);
}

json envelope_to_json(const ResultEnvelope& env) {
  json summands = json::array();
  for (const auto& s : env.summands)
    summands.push_back({{"delta_displacement", vector_json(s.delta_displacement)},
                        {"multiplicity", integer_json(s.multiplicity)},
                        {"degree", s.degree},
                        {"level", rational_json(s.level)},
                        {"max_degree", s.max_degree},
                        {"complete", s.complete}});
  json j;
  j["schema"] = env.schema;
  j["engine_version"] = env.engine_version;
  j["command"] = env.command;
  j["config"] = env.config;
  j["pair"] = env.pair;
  j["parabolic"] = env.parabolic;
  j["closed"] = opt_json(env.closed);
  j["compatible"] = opt_json(env.compatible);
  j["gk_dim"] = opt_json(env.gk_dim);
  j["base_offset"] = env.base_offset ? vector_json(*env.base_offset) : json(nullptr);
  j["summands"] = summands;
  j["assumptions"] = env.assumptions;
  j["identity_holds"] = opt_json(env.identity_holds);
  j["details"] = env.details;
  if (env.timing_us) j["timing_us"] = *env.timing_us;
  j["error"] = opt_json(env.error);
  return j;
}

ResultEnvelope envelope_from_json(const json& j) {
  try {
    ResultEnvelope env;
    env.schema = j.at("schema").get<std::string>();
    if (env.schema != kSchemaVersion) throw PreconditionError("unsupported schema '" + env.schema + "'");
    env.engine_version = j.at("engine_version").get<std::string>();
    env.command = j.at("command").get<std::string>();
    env.config = j.at("config");
    env.pair = j.at("pair").get<std::string>();
    env.parabolic = j.at("parabolic").get<std::string>();
    env.closed = opt_from<bool>(j, "closed");
    env.compatible = opt_from<bool>(j, "compatible");
    env.gk_dim = opt_from<int>(j, "gk_dim");
    if (!j.at("base_offset").is_null()) env.base_offset = vector_from(j.at("base_offset"));
    for (const auto& s : j.at("summands"))
      env.summands.push_back({vector_from(s.at("delta_displacement")), integer_from(s.at("multiplicity")),
                              s.at("degree").get<int>(), rational_from(s.at("level")), s.at("max_degree").get<int>(),
                              s.at("complete").get<bool>()});
    env.assumptions = j.at("assumptions").get<std::vector<std::string>>();
    env.identity_holds = opt_from<bool>(j, "identity_holds");
    env.details = j.at("details");
    env.timing_us = opt_from<std::int64_t>(j, "timing_us");
    env.error = opt_from<std::string>(j, "error");
    return env;
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed envelope: ") + e.what());
  }
}

std::string serialize_envelope(const ResultEnvelope& env, Format format) {
  if (format == Format::Json) return envelope_to_json(env).dump(2) + "\n";
  std::ostringstream os;
  os << env.command << "\n";
  if (!env.pair.empty()) os << "pair: " << env.pair << "\n";
  if (!env.parabolic.empty()) os << "parabolic: " << env.parabolic << "\n";
  if (env.compatible) os << "compatible: " << (*env.compatible ? "yes" : "no") << "\n";
  if (env.closed) os << "closed: " << (*env.closed ? "yes" : "no") << "\n";
  if (env.gk_dim) os << "gk_dim: " << *env.gk_dim << "\n";
  if (env.base_offset) {
    os << "summands (lambda' = restriction of lambda, offset " << plain_vector(*env.base_offset) << "):\n";
    for (const auto& s : env.summands)
      os << "  lambda' + " << plain_vector(s.delta_displacement) << "  multiplicity " << s.multiplicity.get_str()
         << "  degree " << s.degree << "  level " << to_string(s.level) << "\n";
  }
  for (const auto& a : env.assumptions) os << "assuming " << a << "\n";
  for (const auto& [k, v] : env.details.items()) {
    if (v.is_string())
      os << k << ": " << v.get<std::string>() << "\n";
    else if (k == "entries" || k == "representatives") {
      os << k << ":\n";
      for (const auto& e : v) os << "  " << e.dump() << "\n";
    } else
      os << k << ": " << v.dump() << "\n";
  }
  if (env.identity_holds) os << (*env.identity_holds ? "identity holds" : "identity fails") << "\n";
  if (env.timing_us) os << "time: " << *env.timing_us << " us\n";
  if (env.error) os << "error: " << *env.error << "\n";
  return os.str();
}

ResultEnvelope parse_envelope(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed envelope: ") + e.what());
  }
  return envelope_from_json(j);
}

std::optional<ResultEnvelope> cache_lookup(const fs::path& dir, const RunConfig& cfg, std::ostream* log,
                                           const std::string& engine_version) {
  const fs::path file = dir / (config_hash(cfg) + ".json");
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    auto env = parse_envelope(buf.str());
    if (env.engine_version != engine_version) return std::nullopt;
    if (env.config != canonical_config(cfg)) return std::nullopt;
    return env;
  } catch (const std::exception& e) {
    if (log) *log << "cache: ignoring corrupt entry " << file.string() << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

void cache_store(const fs::path& dir, const RunConfig& cfg, const ResultEnvelope& env) {
  fs::create_directories(dir);
  const std::string name = config_hash(cfg) + ".json";
  const fs::path tmp = dir / (name + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw PreconditionError("cannot write cache directory " + dir.string());
    out << serialize_envelope(env, Format::Json);
  }
  fs::rename(tmp, dir / name);
}

RunResult run_command(const RunConfig& cfg, std::ostream* log) {
  const auto start = std::chrono::steady_clock::now();
  auto stamp = [&](RunResult& r) {
    if (cfg.timing)
      r.envelope.timing_us =
          std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  };
  RunResult r;
  if (cfg.cache_dir) {
    if (auto hit = cache_lookup(*cfg.cache_dir, cfg, log)) {
      r.envelope = std::move(*hit);
      r.cache_hit = true;
      stamp(r);
      return r;
    }
  }
  ResultEnvelope& env = r.envelope;
  env.command = command_name(cfg.command);
  env.config = canonical_config(cfg);
  auto fail = [&](int code, const std::string& msg) {
    ResultEnvelope clean;
    clean.command = env.command;
    clean.config = env.config;
    clean.error = msg;
    r.envelope = std::move(clean);
    r.exit_code = code;
  };
  try {
    check_caps(cfg);
    switch (cfg.command) {
      case Command::Pairs: run_pairs(cfg, env); break;
      case Command::Analyze: run_analyze(cfg, env); break;
      case Command::Census: run_census(cfg, env); break;
      case Command::Branch: run_branch(cfg, env); break;
      case Command::Verify: run_verify(cfg, env); break;
      case Command::MfScan: run_mf_scan(cfg, env); break;
    }
    if (env.identity_holds == false) r.exit_code = 1;
  } catch (const PreconditionError& e) {
    fail(2, e.what());
  } catch (const InternalError& e) {
    fail(1, std::string("internal error: ") + e.what());
  } catch (const std::exception& e) {
    fail(1, std::string("internal error: ") + e.what());
  }
  if (r.exit_code == 0 && cfg.cache_dir) {
    try {
      cache_store(*cfg.cache_dir, cfg, r.envelope);
    } catch (const std::exception& e) {
      if (log) *log << "cache: " << e.what() << "\n";
    }
  }
  stamp(r);
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Branching of generalized Verma modules to symmetric subalgebras", "vbranch"};
  app.set_config("--config", "", "key = value file with default options");
  // Every option is scalar; commas belong to pair ids and weights.
  app.get_config_formatter_base()->arrayDelimiter(';');
  app.require_subcommand(1);

  std::string pair, parabolic = "borel", lambda = "generic", law, format = "text", cache_dir;
  int degree = 4, level = 4, n = 0, l = 0, rank = 5;
  std::uint64_t seed = 1;
  bool timing = false;

  app.add_option("--pair", pair, "catalog id, e.g. so_down_so:m=4");
  app.add_option("--parabolic", parabolic, "borel, heisenberg, siegel, levi:1,3 or H:1,0,-1")->capture_default_str();
  app.add_option("--lambda", lambda, "generic or comma separated rationals")->capture_default_str();
  app.add_option("--degree", degree, "symmetric degree bound N")->capture_default_str();
  app.add_option("--level", level, "H-level bound L for verify")->capture_default_str();
  app.add_option("--law", law, "AA, BD or DB");
  app.add_option("--n", n, "law parameter n");
  app.add_option("--l", l, "law parameter l (AA)");
  app.add_option("--rank", rank, "rank bound for mf-scan")->capture_default_str();
  app.add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--cache-dir", cache_dir, "result cache directory")->envname("VB_CACHE_DIR");
  app.add_option("--seed", seed, "seed for randomized cross-checks")->capture_default_str();
  app.add_flag("--timing", timing, "include wall time in the output");

  for (const char* name : {"pairs", "analyze", "census", "branch", "verify", "mf-scan"})
    app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  RunConfig cfg;
  cfg.pair_id = pair;
  cfg.parabolic = parabolic;
  cfg.degree = degree;
  cfg.level = level;
  cfg.law = law;
  cfg.law_n = n;
  cfg.law_l = l;
  cfg.rank = rank;
  cfg.format = format == "json" ? Format::Json : Format::Text;
  cfg.seed = seed;
  cfg.timing = timing;
  if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
  try {
    cfg.command = parse_command(app.get_subcommands().front()->get_name());
    cfg.lambda = parse_lambda(lambda);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  auto r = run_command(cfg, &err);
  if (r.envelope.error) {
    err << "error: " << *r.envelope.error << "\n";
    if (cfg.format == Format::Json) out << serialize_envelope(r.envelope, cfg.format);
    return r.exit_code;
  }
  out << serialize_envelope(r.envelope, cfg.format);
  return r.exit_code;
}

}  // namespace vb
