#include "monocone/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "monocone/cone_projection.hpp"
#include "monocone/exact_formulas.hpp"
#include "monocone/parallel.hpp"
#include "monocone/rng.hpp"
#include "monocone/walk_geometry.hpp"

namespace monocone {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

double mean_of(std::span<const double> x) {
  CompensatedSum acc;
  for (double v : x) acc.add(v);
  return acc.value() / static_cast<double>(x.size());
}

double std_error_of(std::span<const double> x, double mean) {
  if (x.size() < 2) return 0.0;
  CompensatedSum acc;
  for (double v : x) {
    const double d = v - mean;
    acc.add(d * d);
  }
  const double n = static_cast<double>(x.size());
  return std::sqrt(acc.value() / (n - 1.0) / n);
}

/// z-score with a large finite sentinel when the standard error vanishes, so
/// serialized reports never carry NaN or infinity.
double guarded_z(double diff, double se) {
  if (se > 0.0) return diff / se;
  return diff == 0.0 ? 0.0 : std::copysign(1e9, diff);
}

std::string join_shortest(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ';';
    out += format_double_shortest(values[i]);
  }
  return out;
}

void add_param(ExperimentReport& report, std::string key, ParamValue value) {
  report.spec.emplace_back(std::move(key), std::move(value));
}

/// Approximate null standard deviation of the two-sample KS statistic; gives
/// KS reports a positive reported scale (the verdict uses the threshold).
double ks_scale(std::size_t n_a, std::size_t n_b) {
  return 0.26 * std::sqrt(static_cast<double>(n_a + n_b) /
                          (static_cast<double>(n_a) * static_cast<double>(n_b)));
}

/// Left-hand GCM slope at index k straight from the min-max chord formula,
/// independent of the pooling algorithm.
double slope_at_minmax(std::span<const double> z, std::size_t k) {
  const std::size_t n = z.size();
  std::vector<long double> s(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) s[i + 1] = s[i] + z[i];
  long double best = std::numeric_limits<long double>::infinity();
  for (std::size_t v = k; v <= n; ++v) {
    long double worst = -std::numeric_limits<long double>::infinity();
    for (std::size_t u = 0; u < k; ++u) {
      const long double slope = (s[v] - s[u]) / static_cast<long double>(v - u);
      if (slope > worst) worst = slope;
    }
    if (worst < best) best = worst;
  }
  return static_cast<double>(best);
}

void require_exact_base(std::span<const double> base, const char* what) {
  require_valid_sequence(base, what);
  if (base.size() > 8) {
    throw std::invalid_argument(std::string(what) + ": n = " + std::to_string(base.size()) +
                                " exceeds the exhaustive-enumeration limit of 8");
  }
}

void require_batch_size(std::int64_t reps, const char* what) {
  if (reps < 1000) {
    throw std::invalid_argument(std::string(what) +
                                ": at least 1000 replicates are required per batch");
  }
}

void require_alpha(double alpha, const char* what) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument(std::string(what) + ": alpha must lie in (0, 1)");
  }
}

std::int64_t factorial(std::size_t n) {
  std::int64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<std::int64_t>(i);
  return f;
}

double power_abs(double x, double p) {
  if (p == 2.0) return x * x;
  if (p == 1.0) return std::abs(x);
  return std::pow(std::abs(x), p);
}

double power_pos(double x, double p) {
  if (x <= 0.0) return 0.0;
  if (p == 2.0) return x * x;
  if (p == 1.0) return x;
  return std::pow(x, p);
}

}  // namespace

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha) {
  require_valid_sequence(a, "ks_two_sample");
  require_valid_sequence(b, "ks_two_sample");
  require_alpha(alpha, "ks_two_sample");

  RealSequence sa(a.begin(), a.end());
  RealSequence sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  double statistic = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < sa.size() || j < sb.size()) {
    const double v = (i < sa.size() && (j >= sb.size() || sa[i] <= sb[j])) ? sa[i] : sb[j];
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    const double gap = std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb);
    statistic = std::max(statistic, gap);
  }

  KsResult result;
  result.statistic = statistic;
  result.n_a = sa.size();
  result.n_b = sb.size();
  result.threshold_at_alpha =
      std::sqrt(-std::log(0.5 * alpha) / 2.0) * std::sqrt((na + nb) / (na * nb));
  return result;
}

bool is_generic_base(std::span<const double> base) {
  require_valid_sequence(base, "is_generic_base");
  if (base.size() > 20) {
    throw std::invalid_argument("is_generic_base: n > 20 subset enumeration refused");
  }
  std::vector<double> sums{0.0};
  sums.reserve(std::size_t{1} << base.size());
  for (double v : base) {
    const std::size_t current = sums.size();
    for (std::size_t i = 0; i < current; ++i) sums.push_back(sums[i] + v);
  }
  std::sort(sums.begin(), sums.end());
  for (std::size_t i = 1; i < sums.size(); ++i) {
    if (sums[i] - sums[i - 1] <= 1e-9) return false;
  }
  return true;
}

ExperimentReport verify_slope_law_exact(std::span<const double> base, std::size_t k) {
  require_exact_base(base, "verify_slope_law_exact");
  const std::size_t n = base.size();
  if (k < 1 || k > n) {
    throw std::invalid_argument("verify_slope_law_exact: k must lie in [1, n]");
  }
  Stopwatch watch;

  const std::int64_t perms = factorial(n);
  std::vector<double> slope_values;
  std::vector<double> average_values;
  slope_values.reserve(static_cast<std::size_t>(perms));
  average_values.reserve(static_cast<std::size_t>(perms));

  RealSequence perm = sorted_copy(base);
  do {
    slope_values.push_back(slope_at_minmax(perm, k));
    average_values.push_back(sorted_copy(running_averages(perm))[k - 1]);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::sort(slope_values.begin(), slope_values.end());
  std::sort(average_values.begin(), average_values.end());
  double worst_gap = 0.0;
  for (std::size_t i = 0; i < slope_values.size(); ++i) {
    worst_gap = std::max(worst_gap, std::abs(slope_values[i] - average_values[i]));
  }

  ExperimentReport report;
  report.experiment_id = "slope-law-exact/n" + std::to_string(n) + "/k" + std::to_string(k);
  add_param(report, "base", join_shortest(base));
  add_param(report, "n", static_cast<std::int64_t>(n));
  add_param(report, "k", static_cast<std::int64_t>(k));
  add_param(report, "permutations", perms);
  report.estimate = {worst_gap};
  report.std_error = {0.0};
  report.theory = {0.0};
  report.z_score = 0.0;
  report.replicates = 1;
  report.pass = worst_gap <= 1e-9;
  report.wall_time_s = watch.seconds();
  return report;
}

ExperimentReport verify_sparre_andersen_exact(std::span<const double> base) {
  require_exact_base(base, "verify_sparre_andersen_exact");
  const std::size_t n = base.size();
  Stopwatch watch;

  const std::int64_t perms = factorial(n);
  std::vector<std::int64_t> argmin_hist(n + 1, 0);
  std::vector<std::int64_t> nonpos_hist(n + 1, 0);

  RealSequence perm = sorted_copy(base);
  do {
    const WalkPath path = cumulative_sums(perm);
    ++argmin_hist[last_argmin(path)];
    ++nonpos_hist[nonpositive_time(path)];
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::int64_t worst_gap = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    worst_gap = std::max(worst_gap, std::abs(argmin_hist[i] - nonpos_hist[i]));
  }

  ExperimentReport report;
  report.experiment_id = "sparre-andersen-exact/n" + std::to_string(n);
  add_param(report, "base", join_shortest(base));
  add_param(report, "n", static_cast<std::int64_t>(n));
  add_param(report, "permutations", perms);
  report.estimate = {static_cast<double>(worst_gap)};
  report.std_error = {0.0};
  report.theory = {0.0};
  report.z_score = 0.0;
  report.replicates = 1;
  report.pass = worst_gap == 0;
  report.wall_time_s = watch.seconds();
  return report;
}

ExperimentReport verify_slope_law_mc(const NoiseSpec& spec, std::size_t k,
                                     std::int64_t reps_per_batch, double alpha,
                                     unsigned threads) {
  spec.validate();
  if (k < 1 || k > spec.n) {
    throw std::invalid_argument("verify_slope_law_mc: k must lie in [1, n]");
  }
  require_batch_size(reps_per_batch, "verify_slope_law_mc");
  require_alpha(alpha, "verify_slope_law_mc");
  Stopwatch watch;

  const std::size_t reps = static_cast<std::size_t>(reps_per_batch);
  std::vector<double> slopes(reps);
  std::vector<double> averages(reps);
  parallel_for(2 * reps, threads, [&](std::size_t i) {
    const RealSequence z = sample(spec, i);
    if (i < reps) {
      slopes[i] = project_monotone(z).fitted[k - 1];
    } else {
      averages[i - reps] = sorted_copy(running_averages(z))[k - 1];
    }
  });

  const KsResult ks = ks_two_sample(slopes, averages, alpha);

  ExperimentReport report;
  report.experiment_id = "slope-law-ks/" + family_name(spec.family) + "/n" +
                         std::to_string(spec.n) + "/k" + std::to_string(k);
  add_param(report, "noise", to_fragment(spec));
  add_param(report, "k", static_cast<std::int64_t>(k));
  add_param(report, "reps_per_batch", reps_per_batch);
  add_param(report, "alpha", alpha);
  report.estimate = {ks.statistic};
  report.std_error = {ks_scale(ks.n_a, ks.n_b)};
  report.theory = {0.0};
  report.z_score = 0.0;
  report.ks_statistic = ks.statistic;
  report.ks_threshold = ks.threshold_at_alpha;
  report.replicates = 2 * reps_per_batch;
  report.pass = ks.statistic <= ks.threshold_at_alpha;
  report.wall_time_s = watch.seconds();
  return report;
}

StatDimReports verify_stat_dim_mc_paired(const NoiseSpec& spec, double p, std::int64_t reps,
                                         bool use_nonneg_cone, unsigned threads) {
  spec.validate();
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument("verify_stat_dim_mc: p must be positive and finite");
  }
  require_batch_size(reps, "verify_stat_dim_mc");
  Stopwatch watch;

  const double rho = pairwise_correlation(spec);
  if (spec.family == NoiseFamily::permutation_of && p == 2.0) {
    const double mean = mean_of(spec.values);
    CompensatedSum sq;
    for (double v : spec.values) sq.add((v - mean) * (v - mean));
    const double variance = sq.value() / static_cast<double>(spec.n);
    if (std::abs(mean) > 1e-9 || std::abs(variance - 1.0) > 1e-9) {
      throw std::invalid_argument(
          "verify_stat_dim_mc: the closed-form target for permutation noise requires the fixed "
          "vector to be standardized (mean 0, population variance 1)");
    }
  }

  double theory = 0.0;
  if (!use_nonneg_cone) {
    if (p == 2.0) {
      theory = statistical_dimension(spec.n, rho);
    } else if (spec.family == NoiseFamily::iid_gaussian) {
      theory = gaussian_lp_projection_norm(spec.n, p);
    } else {
      throw std::invalid_argument(
          "verify_stat_dim_mc: no closed-form target for p != 2 outside iid_gaussian; use p = 2 "
          "or an iid_gaussian spec");
    }
  } else {
    if (!spec.is_symmetric()) {
      throw std::invalid_argument(
          "verify_stat_dim_mc: the non-negative-cone closed form requires a symmetric noise law");
    }
    if (p == 2.0) {
      theory = nonneg_statistical_dimension(spec.n, rho);
    } else if (spec.family == NoiseFamily::iid_gaussian) {
      theory = 0.5 * gaussian_lp_projection_norm(spec.n, p);
    } else {
      throw std::invalid_argument(
          "verify_stat_dim_mc: no closed-form target for p != 2 outside iid_gaussian; use p = 2 "
          "or an iid_gaussian spec");
    }
  }

  const std::size_t count = static_cast<std::size_t>(reps);
  std::vector<double> projection_power(count);
  std::vector<double> average_power(count);
  parallel_for(count, threads, [&](std::size_t i) {
    const RealSequence z = sample(spec, i);
    const RealSequence fit = project_monotone(z).fitted;
    double fit_sum = 0.0;
    for (double v : fit) fit_sum += use_nonneg_cone ? power_pos(v, p) : power_abs(v, p);
    projection_power[i] = fit_sum;

    const RealSequence averages = running_averages(z);
    double avg_sum = 0.0;
    for (double v : averages) avg_sum += use_nonneg_cone ? power_pos(v, p) : power_abs(v, p);
    average_power[i] = avg_sum;
  });

  const double estimate = mean_of(projection_power);
  const double se = std_error_of(projection_power, estimate);

  std::vector<double> diffs(count);
  for (std::size_t i = 0; i < count; ++i) diffs[i] = projection_power[i] - average_power[i];
  const double diff_mean = mean_of(diffs);
  const double diff_se = std_error_of(diffs, diff_mean);

  const std::string cone = use_nonneg_cone ? "nonneg-monotone" : "monotone";
  const std::string base_id = (use_nonneg_cone ? "stat-dim-nonneg/" : "stat-dim/") +
                              family_name(spec.family) + "/n" + std::to_string(spec.n) + "/p" +
                              format_double_shortest(p);
  const double elapsed = watch.seconds();

  StatDimReports out;
  out.main.experiment_id = base_id;
  add_param(out.main, "noise", to_fragment(spec));
  add_param(out.main, "p", p);
  add_param(out.main, "cone", cone);
  add_param(out.main, "reps", reps);
  out.main.estimate = {estimate};
  out.main.std_error = {se};
  out.main.theory = {theory};
  out.main.z_score = guarded_z(estimate - theory, se);
  out.main.replicates = reps;
  out.main.pass = std::abs(out.main.z_score) <= 3.0;
  out.main.wall_time_s = elapsed;

  out.identity.experiment_id = base_id + "#avg-identity";
  add_param(out.identity, "noise", to_fragment(spec));
  add_param(out.identity, "p", p);
  add_param(out.identity, "cone", cone);
  add_param(out.identity, "reps", reps);
  out.identity.estimate = {diff_mean};
  out.identity.std_error = {diff_se};
  out.identity.theory = {0.0};
  out.identity.z_score = guarded_z(diff_mean, diff_se);
  out.identity.replicates = reps;
  out.identity.pass = std::abs(out.identity.z_score) <= 3.0;
  out.identity.wall_time_s = elapsed;
  return out;
}

ExperimentReport verify_stat_dim_mc(const NoiseSpec& spec, double p, std::int64_t reps,
                                    bool use_nonneg_cone, unsigned threads) {
  return verify_stat_dim_mc_paired(spec, p, reps, use_nonneg_cone, threads).main;
}

ExperimentReport verify_block_risk_mc(std::span<const double> theta_star, const NoiseSpec& spec,
                                      std::span<const double> sigma_grid, std::int64_t reps,
                                      unsigned threads) {
  require_valid_sequence(theta_star, "verify_block_risk_mc");
  if (!is_nondecreasing(theta_star)) {
    throw std::invalid_argument("verify_block_risk_mc: theta_star must be non-decreasing");
  }
  spec.validate();
  if (spec.n != theta_star.size()) {
    throw std::invalid_argument("verify_block_risk_mc: noise length differs from theta_star");
  }
  require_valid_sequence(sigma_grid, "verify_block_risk_mc");
  for (double sigma : sigma_grid) {
    if (!(sigma > 0.0)) {
      throw std::invalid_argument("verify_block_risk_mc: every sigma must be positive");
    }
  }
  require_batch_size(reps, "verify_block_risk_mc");
  Stopwatch watch;

  const double rho = pairwise_correlation(spec);
  double theory = 0.0;
  for (std::size_t len : constant_block_lengths(theta_star)) {
    theory += statistical_dimension(len, rho);
  }

  const std::size_t n = theta_star.size();
  const std::size_t count = static_cast<std::size_t>(reps);
  const std::size_t grid = sigma_grid.size();
  std::vector<double> stats(count * grid);
  parallel_for(count, threads, [&](std::size_t i) {
    const RealSequence z = sample(spec, i);
    RealSequence y(n);
    for (std::size_t j = 0; j < grid; ++j) {
      const double sigma = sigma_grid[j];
      for (std::size_t t = 0; t < n; ++t) y[t] = theta_star[t] + sigma * z[t];
      const RealSequence fit = project_monotone(y).fitted;
      double ss = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        const double d = fit[t] - theta_star[t];
        ss += d * d;
      }
      stats[i * grid + j] = ss / (sigma * sigma);
    }
  });

  std::vector<double> means(grid);
  std::vector<double> ses(grid);
  std::vector<double> column(count);
  for (std::size_t j = 0; j < grid; ++j) {
    for (std::size_t i = 0; i < count; ++i) column[i] = stats[i * grid + j];
    means[j] = mean_of(column);
    ses[j] = std_error_of(column, means[j]);
  }

  std::size_t smallest = 0;
  for (std::size_t j = 1; j < grid; ++j) {
    if (sigma_grid[j] < sigma_grid[smallest]) smallest = j;
  }

  bool below_bound = true;
  for (std::size_t j = 0; j < grid; ++j) {
    if (means[j] > theory + 3.0 * ses[j]) below_bound = false;
  }
  const double z_small = guarded_z(means[smallest] - theory, ses[smallest]);

  ExperimentReport report;
  report.experiment_id = "block-risk/" + family_name(spec.family) + "/n" + std::to_string(n);
  add_param(report, "noise", to_fragment(spec));
  add_param(report, "theta_star", join_shortest(theta_star));
  add_param(report, "sigma_grid", join_shortest(sigma_grid));
  add_param(report, "reps", reps);
  report.estimate = means;
  report.std_error = ses;
  report.theory = std::vector<double>(grid, theory);
  report.z_score = z_small;
  report.replicates = reps;
  report.pass = below_bound && std::abs(z_small) <= 3.0;
  report.wall_time_s = watch.seconds();
  return report;
}

ExperimentReport verify_gcm_quantile_mc(double p, std::size_t grid_steps,
                                        std::int64_t reps_per_batch, double alpha,
                                        std::uint64_t master_seed, unsigned threads) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("verify_gcm_quantile_mc: p must lie in (0, 1]");
  }
  if (grid_steps < 100) {
    throw std::invalid_argument("verify_gcm_quantile_mc: at least 100 grid steps are required");
  }
  require_batch_size(reps_per_batch, "verify_gcm_quantile_mc");
  require_alpha(alpha, "verify_gcm_quantile_mc");
  Stopwatch watch;

  const std::size_t reps = static_cast<std::size_t>(reps_per_batch);
  const double step_scale = 1.0 / std::sqrt(static_cast<double>(grid_steps));
  std::vector<double> slopes(reps);
  std::vector<double> quantiles(reps);
  parallel_for(2 * reps, threads, [&](std::size_t i) {
    SplitMix64 stream = replicate_stream(master_seed, i);
    RealSequence z(grid_steps);
    for (double& v : z) v = step_scale * stream.next_gaussian();
    const WalkPath path = to_unit_interval(cumulative_sums(z));
    if (i < reps) {
      slopes[i] = gcm_slope_at(path, p);
    } else {
      quantiles[i - reps] = occupation_quantile(path, p);
    }
  });

  const KsResult ks = ks_two_sample(slopes, quantiles, alpha);

  ExperimentReport report;
  report.experiment_id = "gcm-slope-quantile-ks/bm/p" + format_double_shortest(p);
  add_param(report, "process", std::string("brownian_motion"));
  add_param(report, "p", p);
  add_param(report, "grid_steps", static_cast<std::int64_t>(grid_steps));
  add_param(report, "reps_per_batch", reps_per_batch);
  add_param(report, "alpha", alpha);
  add_param(report, "seed", std::to_string(master_seed));
  report.estimate = {ks.statistic};
  report.std_error = {ks_scale(ks.n_a, ks.n_b)};
  report.theory = {0.0};
  report.z_score = 0.0;
  report.ks_statistic = ks.statistic;
  report.ks_threshold = ks.threshold_at_alpha;
  report.replicates = 2 * reps_per_batch;
  report.pass = ks.statistic <= ks.threshold_at_alpha;
  report.wall_time_s = watch.seconds();
  return report;
}

}  // namespace monocone
