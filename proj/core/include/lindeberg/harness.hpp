#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lindeberg/monte_carlo.hpp"
#include "lindeberg/report.hpp"

namespace lindeberg {

inline constexpr std::string_view kVersion = "0.1.0";

/// Invalid or incomplete experiment configuration (CLI exit status 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Suite {
  Clt,
  Wigner,
  SkFreeEnergy,
  SkGroundState,
  ErdosKac,
  LambdaAudit,
  BoundTable,
};

enum class OutputFormat { Csv, Json };

Suite parse_suite(std::string_view name);
std::string suite_name(Suite suite);

using KeyValues = std::map<std::string, std::string>;

struct ExperimentConfig {
  Suite suite = Suite::Clt;
  std::string dist_x = "rademacher";
  std::string dist_y = "gaussian";
  std::vector<std::size_t> n_values;  // walk / CLT sizes
  std::vector<std::size_t> N_values;  // matrix order or spin count
  double z_re = 0.0;
  double z_im = 2.0;
  double beta = 1.0;
  double h = 0.0;
  double A = 1.0;
  double epsilon = 1.0;
  std::string g = "sin";  // suite default: tanh for the S-K suites
  std::size_t replicates = 1000;
  std::uint64_t master_seed = 20040501;
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;
  unsigned threads = 0;

  /// Builds and validates a config for `suite` from key/value pairs. Keys
  /// mirror the CLI flags: distX, distY, n, N, z_re, z_im, beta, h, A,
  /// epsilon, g, replicates, seed, out, format, threads. n and N accept
  /// comma-separated lists. Throws ConfigError.
  static ExperimentConfig from_key_values(Suite suite, const KeyValues& values);

  /// Effective configuration as key/value pairs.
  KeyValues echo() const;
};

/// Parses the flat key-value config format: `key = value` lines, `#`
/// comments, and `[suite]` section headers. Keys before any header apply to
/// every suite; keys in the section named after `suite` override them.
KeyValues parse_config_text(std::string_view text, Suite suite);

struct RunManifest {
  KeyValues config;
  std::string version;
  double wall_clock_seconds = 0.0;
  std::vector<GapReport> reports;
  Table table;
  /// False if any GapReport failed or any audit row was not dominated.
  bool all_passed = true;
};

/// Executes the suite and, if config.output_path is set, writes the table
/// in the requested format. Output bytes depend only on the config, never
/// on timing or thread count.
RunManifest run(const ExperimentConfig& config);

/// Pure-arithmetic table of the bound formulas over the n and N grids.
Table bound_table(const ExperimentConfig& config);

/// Analytic vs empirical lambda for every registered family.
Table lambda_audit(const ExperimentConfig& config);

/// Serialized table in the configured format.
std::string render(const RunManifest& manifest, const ExperimentConfig& config);

/// Manifest summary (config echo, version, wall clock, reports) as JSON.
std::string manifest_json(const RunManifest& manifest);

}  // namespace lindeberg
