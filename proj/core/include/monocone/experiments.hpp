#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "monocone/noise_models.hpp"
#include "monocone/sequence.hpp"

namespace monocone {

/// Exact two-sample Kolmogorov-Smirnov statistic plus the large-sample
/// rejection threshold at the requested level.
struct KsResult {
  double statistic = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double threshold_at_alpha = 0.0;
};

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha);

using ParamValue = std::variant<std::int64_t, double, std::string>;

/// One verification run. `estimate`, `std_error` and `theory` are scalars for
/// most experiments and per-sigma lists for the block-risk sweep. The wall
/// time is console-only metadata: it is intentionally left out of the
/// serialized reports so repeated runs are byte-identical.
struct ExperimentReport {
  std::string experiment_id;
  std::vector<std::pair<std::string, ParamValue>> spec;
  std::vector<double> estimate;
  std::vector<double> std_error;
  std::vector<double> theory;
  double z_score = 0.0;
  std::optional<double> ks_statistic;
  std::optional<double> ks_threshold;
  std::int64_t replicates = 1;
  bool pass = false;
  double wall_time_s = 0.0;
};

/// True when every nonempty subset of `base` has a distinct sum (within
/// 1e-9), which rules out tied partial sums and exact zeros under every
/// permutation. The exact-enumeration experiments require this.
bool is_generic_base(std::span<const double> base);

/// Enumerates all permutations of `base` (n <= 8) and compares the multiset
/// of k-th GCM slopes against the multiset of k-th order statistics of the
/// running averages. Passes iff the sorted multisets match within 1e-9.
ExperimentReport verify_slope_law_exact(std::span<const double> base, std::size_t k);

/// Enumerates all permutations of `base` (n <= 8) and compares the exact
/// histogram of the last argmin of the walk with the histogram of the number
/// of non-positive partial sums (the Sparre-Andersen pair).
ExperimentReport verify_sparre_andersen_exact(std::span<const double> base);

/// Two-sample KS check of the slope law at one index k: batch A samples the
/// k-th slope, batch B (disjoint replicate indices) samples the k-th order
/// statistic of the running averages.
ExperimentReport verify_slope_law_mc(const NoiseSpec& spec, std::size_t k,
                                     std::int64_t reps_per_batch, double alpha,
                                     unsigned threads);

/// Monte Carlo estimate of E||proj(Z)||_p^p against its closed form, plus a
/// paired same-replicates cross-check against the running-average side of the
/// identity it rests on.
struct StatDimReports {
  ExperimentReport main;
  ExperimentReport identity;
};

StatDimReports verify_stat_dim_mc_paired(const NoiseSpec& spec, double p, std::int64_t reps,
                                         bool use_nonneg_cone, unsigned threads);

ExperimentReport verify_stat_dim_mc(const NoiseSpec& spec, double p, std::int64_t reps,
                                    bool use_nonneg_cone, unsigned threads);

/// Monte Carlo check of the block-sum risk bound over a grid of noise scales:
/// every estimate of E||fit - theta*||^2 / sigma^2 must sit below the bound,
/// and the smallest sigma must reach it.
ExperimentReport verify_block_risk_mc(std::span<const double> theta_star, const NoiseSpec& spec,
                                      std::span<const double> sigma_grid, std::int64_t reps,
                                      unsigned threads);

/// Two-sample KS check, on discretized Brownian paths, of the continuous-time
/// identity between the GCM slope at p and the p-quantile of the occupation
/// measure of S(t)/t.
ExperimentReport verify_gcm_quantile_mc(double p, std::size_t grid_steps,
                                        std::int64_t reps_per_batch, double alpha,
                                        std::uint64_t master_seed, unsigned threads);

}  // namespace monocone
