#pragma once

// Run configuration, result envelopes (JSON schema "vb-schema-1"), the
// content-addressed result cache and the command-line front end.

#include "vbranch/branching.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vb {

inline constexpr const char* kSchemaVersion = "vb-schema-1";
inline constexpr const char* kEngineVersion = "vbranch-1.0.0";
inline constexpr int kMaxDegree = 12;
inline constexpr int kMaxLevel = 12;

enum class Command { Pairs, Analyze, Census, Branch, Verify, MfScan };
enum class Format { Text, Json };

Command parse_command(const std::string& s);
std::string command_name(Command c);

struct RunConfig {
  Command command = Command::Pairs;
  std::string pair_id;
  std::string parabolic = "borel";
  std::optional<RVector> lambda;  // empty: generic
  int degree = 4;
  int level = 4;
  std::string law;  // verify: AA, BD or DB instead of a pair
  int law_n = 0, law_l = 0;
  int rank = 5;     // mf-scan
  Format format = Format::Text;
  std::optional<std::filesystem::path> cache_dir;
  std::uint64_t seed = 1;
  bool timing = false;
};

/// "generic" or comma separated rationals.
std::optional<RVector> parse_lambda(const std::string& text);

/// Stable encoding of everything that affects the result.
nlohmann::json canonical_config(const RunConfig& cfg);
/// Hex SHA-256 of the canonical encoding.
std::string config_hash(const RunConfig& cfg);

struct Summand {
  RVector delta_displacement;
  Integer multiplicity;
  int degree = 0;
  Rational level;
  int max_degree = 0;
  bool complete = true;

  friend bool operator==(const Summand&, const Summand&) = default;
};

struct ResultEnvelope {
  std::string schema = kSchemaVersion;
  std::string engine_version = kEngineVersion;
  std::string command;
  nlohmann::json config;
  std::string pair;
  std::string parabolic;
  std::optional<bool> closed;
  std::optional<bool> compatible;
  std::optional<int> gk_dim;
  std::optional<RVector> base_offset;
  std::vector<Summand> summands;
  std::vector<std::string> assumptions;
  std::optional<bool> identity_holds;
  nlohmann::json details = nlohmann::json::object();
  std::optional<std::int64_t> timing_us;
  std::optional<std::string> error;

  friend bool operator==(const ResultEnvelope&, const ResultEnvelope&) = default;
};

nlohmann::json envelope_to_json(const ResultEnvelope& env);
/// Throws PreconditionError on malformed input or a foreign schema.
ResultEnvelope envelope_from_json(const nlohmann::json& j);

std::string serialize_envelope(const ResultEnvelope& env, Format format);
ResultEnvelope parse_envelope(const std::string& text);

/// Misses on absent, corrupt (logged) or stale-version entries.
std::optional<ResultEnvelope> cache_lookup(const std::filesystem::path& dir, const RunConfig& cfg,
                                           std::ostream* log = nullptr,
                                           const std::string& engine_version = kEngineVersion);
void cache_store(const std::filesystem::path& dir, const RunConfig& cfg, const ResultEnvelope& env);

struct RunResult {
  ResultEnvelope envelope;
  int exit_code = 0;
  bool cache_hit = false;
};

/// 0 on success, 2 on a precondition violation, 1 on an internal error.
RunResult run_command(const RunConfig& cfg, std::ostream* log = nullptr);

/// Full command line, including --config files and VB_CACHE_DIR.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vb
