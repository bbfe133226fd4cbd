#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monocone/experiments.hpp"
#include "monocone/noise_models.hpp"

namespace monocone {

enum class ExperimentKind {
  slope_law_exact,
  sparre_andersen_exact,
  slope_law_mc,
  stat_dim_mc,
  block_risk_mc,
  gcm_quantile_mc,
};

/// One entry of a verification suite. Noise seeds left unset are derived
/// deterministically from the suite seed and the experiment id at run time.
struct ExperimentConfig {
  std::string id;
  ExperimentKind kind = ExperimentKind::slope_law_exact;

  RealSequence base;                // exact kinds
  std::size_t k = 0;                // slope-law kinds
  std::optional<NoiseSpec> noise;   // Monte Carlo kinds with noise input
  std::uint64_t seed = 0;           // gcm_quantile_mc when seed_fixed
  bool seed_fixed = false;
  double p = 2.0;                   // norm power, or percentile for gcm_quantile
  bool nonneg = false;
  std::int64_t reps = 0;
  double alpha = 0.01;
  RealSequence theta_star;          // block_risk_mc
  RealSequence sigma_grid;          // block_risk_mc
  std::size_t grid_steps = 0;       // gcm_quantile_mc
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  std::optional<std::int64_t> reps_override;  // statistical experiments only
  unsigned threads = 1;
};

/// Suite verdict: every exact experiment must pass; at most one statistical
/// check may fail (a correct implementation trips a 3-sigma or KS gate with
/// small probability).
struct SuiteResult {
  std::vector<ExperimentReport> reports;
  std::size_t exact_checks = 0;
  std::size_t exact_failures = 0;
  std::size_t statistical_checks = 0;
  std::size_t statistical_failures = 0;
  bool pass = false;
};

bool is_named_suite(std::string_view name);

/// Builds one of the named suites: "default", "exact-only", "gaussian",
/// "exchangeable", "cts". Throws std::invalid_argument for unknown names.
std::vector<ExperimentConfig> named_suite(std::string_view name);

/// Parses a JSON array of experiment configs (the `verify` config file
/// format). Throws std::invalid_argument on malformed input.
std::vector<ExperimentConfig> parse_suite_config(std::string_view json_text);

SuiteResult run_suite(const std::vector<ExperimentConfig>& configs, const SuiteOptions& options);

}  // namespace monocone
