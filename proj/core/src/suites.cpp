#include "monocone/suites.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "monocone/rng.hpp"

#include "json.hpp"

namespace monocone {

namespace {

constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ULL;
  }
  return hash;
}

/// Fixed base vectors for the exact-enumeration experiments: signed distinct
/// powers of two in hundredths, so every subset sum (hence every partial sum
/// under every permutation) is distinct and nonzero.
std::array<RealSequence, 3> generic_bases(std::size_t n) {
  static constexpr std::array<double, 6> b1 = {0.01, -0.02, 0.04, -0.08, 0.16, -0.32};
  static constexpr std::array<double, 6> b2 = {-0.01, 0.02, -0.04, 0.08, -0.16, 0.32};
  static constexpr std::array<double, 6> b3 = {0.02, -0.01, -0.04, 0.16, -0.08, 0.32};
  return {RealSequence(b1.begin(), b1.begin() + n), RealSequence(b2.begin(), b2.begin() + n),
          RealSequence(b3.begin(), b3.begin() + n)};
}

void append_exact_configs(std::vector<ExperimentConfig>& out) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::array<RealSequence, 3> bases = generic_bases(n);
    for (std::size_t j = 0; j < bases.size(); ++j) {
      const std::string tag = "/n" + std::to_string(n) + "/b" + std::to_string(j + 1);
      for (std::size_t k = 1; k <= n; ++k) {
        ExperimentConfig cfg;
        cfg.id = "slope-law-exact" + tag + "/k" + std::to_string(k);
        cfg.kind = ExperimentKind::slope_law_exact;
        cfg.base = bases[j];
        cfg.k = k;
        out.push_back(std::move(cfg));
      }
      ExperimentConfig cfg;
      cfg.id = "sparre-andersen-exact" + tag;
      cfg.kind = ExperimentKind::sparre_andersen_exact;
      cfg.base = bases[j];
      out.push_back(std::move(cfg));
    }
  }
}

ExperimentConfig stat_dim_config(std::string id, NoiseSpec spec, double p, bool nonneg,
                                 std::int64_t reps) {
  ExperimentConfig cfg;
  cfg.id = std::move(id);
  cfg.kind = ExperimentKind::stat_dim_mc;
  cfg.noise = std::move(spec);
  cfg.p = p;
  cfg.nonneg = nonneg;
  cfg.reps = reps;
  return cfg;
}

void append_gaussian_configs(std::vector<ExperimentConfig>& out) {
  out.push_back(stat_dim_config("stat-dim/iid_gaussian/n100/p2", NoiseSpec::iid_gaussian(100, 0),
                                2.0, false, 200000));
  for (double p : {1.0, 3.0, 4.0}) {
    out.push_back(stat_dim_config("lp-norm/gaussian/n50/p" + format_double_shortest(p),
                                  NoiseSpec::iid_gaussian(50, 0), p, false, 100000));
  }
  out.push_back(stat_dim_config("stat-dim-nonneg/iid_gaussian/n100/p2",
                                NoiseSpec::iid_gaussian(100, 0), 2.0, true, 200000));
}

/// Ramp 1..20 standardized to mean 0 and population variance 1; used as the
/// fixed vector of the permutation noise in the slope-law KS checks.
RealSequence standardized_ramp(std::size_t n) {
  RealSequence v(n);
  const double mid = 0.5 * (static_cast<double>(n) + 1.0);
  const double scale = std::sqrt((static_cast<double>(n) * static_cast<double>(n) - 1.0) / 12.0);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = (static_cast<double>(i + 1) - mid) / scale;
  }
  return v;
}

void append_exchangeable_configs(std::vector<ExperimentConfig>& out) {
  out.push_back(stat_dim_config("stat-dim/iid_rademacher/n100/p2",
                                NoiseSpec::iid_rademacher(100, 0), 2.0, false, 200000));
  out.push_back(stat_dim_config("stat-dim/iid_uniform/n100/p2", NoiseSpec::iid_uniform(100, 0),
                                2.0, false, 200000));
  out.push_back(stat_dim_config("stat-dim/iid_centered_exponential/n100/p2",
                                NoiseSpec::iid_centered_exponential(100, 0), 2.0, false, 200000));
  out.push_back(stat_dim_config("stat-dim/iid_student_t5/n100/p2",
                                NoiseSpec::iid_student_t(100, 5.0, 0), 2.0, false, 200000));
  out.push_back(stat_dim_config("stat-dim/equicorrelated_gaussian/n50/p2",
                                NoiseSpec::equicorrelated_gaussian(50, 0.5, 0), 2.0, false,
                                200000));
  out.push_back(stat_dim_config("stat-dim-nonneg/iid_rademacher/n100/p2",
                                NoiseSpec::iid_rademacher(100, 0), 2.0, true, 200000));

  const RealSequence ramp = standardized_ramp(20);
  for (std::size_t k : {std::size_t{1}, std::size_t{10}, std::size_t{20}}) {
    ExperimentConfig cfg;
    cfg.id = "slope-law-ks/iid_gaussian/n20/k" + std::to_string(k);
    cfg.kind = ExperimentKind::slope_law_mc;
    cfg.noise = NoiseSpec::iid_gaussian(20, 0);
    cfg.k = k;
    cfg.reps = 20000;
    cfg.alpha = 0.01;
    out.push_back(std::move(cfg));

    ExperimentConfig perm;
    perm.id = "slope-law-ks/permutation_of/n20/k" + std::to_string(k);
    perm.kind = ExperimentKind::slope_law_mc;
    perm.noise = NoiseSpec::permutation_of(ramp, 0);
    perm.k = k;
    perm.reps = 20000;
    perm.alpha = 0.01;
    out.push_back(std::move(perm));
  }

  ExperimentConfig risk;
  risk.id = "block-risk/sigma-limit";
  risk.kind = ExperimentKind::block_risk_mc;
  risk.noise = NoiseSpec::iid_gaussian(5, 0);
  risk.theta_star = {0.0, 0.0, 1.0, 1.0, 1.0};
  risk.sigma_grid = {1.0, 0.1, 0.01};
  risk.reps = 100000;
  out.push_back(std::move(risk));
}

void append_cts_configs(std::vector<ExperimentConfig>& out) {
  for (double p : {0.25, 0.5, 0.75}) {
    ExperimentConfig cfg;
    cfg.id = "gcm-slope-quantile-ks/bm/p" + format_double_shortest(p);
    cfg.kind = ExperimentKind::gcm_quantile_mc;
    cfg.p = p;
    cfg.grid_steps = 10000;
    cfg.reps = 5000;
    cfg.alpha = 0.01;
    out.push_back(std::move(cfg));
  }
}

ExperimentKind kind_from_name(std::string_view name) {
  if (name == "slope-law-exact") return ExperimentKind::slope_law_exact;
  if (name == "sparre-andersen-exact") return ExperimentKind::sparre_andersen_exact;
  if (name == "slope-law-mc") return ExperimentKind::slope_law_mc;
  if (name == "stat-dim-mc") return ExperimentKind::stat_dim_mc;
  if (name == "block-risk-mc") return ExperimentKind::block_risk_mc;
  if (name == "gcm-quantile-mc") return ExperimentKind::gcm_quantile_mc;
  throw std::invalid_argument("suite config: unknown experiment kind '" + std::string(name) +
                              "'");
}

bool is_exact_kind(ExperimentKind kind) {
  return kind == ExperimentKind::slope_law_exact ||
         kind == ExperimentKind::sparre_andersen_exact;
}

}  // namespace

bool is_named_suite(std::string_view name) {
  return name == "default" || name == "exact-only" || name == "gaussian" ||
         name == "exchangeable" || name == "cts";
}

std::vector<ExperimentConfig> named_suite(std::string_view name) {
  std::vector<ExperimentConfig> out;
  if (name == "exact-only") {
    append_exact_configs(out);
  } else if (name == "gaussian") {
    append_gaussian_configs(out);
  } else if (name == "exchangeable") {
    append_exchangeable_configs(out);
  } else if (name == "cts") {
    append_cts_configs(out);
  } else if (name == "default") {
    append_exact_configs(out);
    append_gaussian_configs(out);
    append_exchangeable_configs(out);
    append_cts_configs(out);
  } else {
    throw std::invalid_argument("unknown suite '" + std::string(name) +
                                "' (expected default, exact-only, gaussian, exchangeable or "
                                "cts, or a config file path)");
  }
  return out;
}

std::vector<ExperimentConfig> parse_suite_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("suite config: ") + e.what());
  }
  if (!doc.is_array()) {
    throw std::invalid_argument("suite config: top-level JSON value must be an array");
  }

  std::vector<ExperimentConfig> out;
  out.reserve(doc.size());
  try {
    for (const nlohmann::json& entry : doc) {
      if (!entry.is_object()) {
        throw std::invalid_argument("suite config: each experiment must be a JSON object");
      }
      ExperimentConfig cfg;
      cfg.id = entry.at("id").get<std::string>();
      cfg.kind = kind_from_name(entry.at("kind").get<std::string>());

      if (entry.contains("base")) cfg.base = entry["base"].get<RealSequence>();
      if (entry.contains("k")) cfg.k = entry["k"].get<std::size_t>();
      if (entry.contains("p")) cfg.p = entry["p"].get<double>();
      if (entry.contains("nonneg")) cfg.nonneg = entry["nonneg"].get<bool>();
      if (entry.contains("reps")) cfg.reps = entry["reps"].get<std::int64_t>();
      if (entry.contains("reps_per_batch")) cfg.reps = entry["reps_per_batch"].get<std::int64_t>();
      if (entry.contains("alpha")) cfg.alpha = entry["alpha"].get<double>();
      if (entry.contains("theta_star")) cfg.theta_star = entry["theta_star"].get<RealSequence>();
      if (entry.contains("sigma_grid")) cfg.sigma_grid = entry["sigma_grid"].get<RealSequence>();
      if (entry.contains("grid_steps")) cfg.grid_steps = entry["grid_steps"].get<std::size_t>();
      if (entry.contains("seed")) {
        cfg.seed = entry["seed"].get<std::uint64_t>();
        cfg.seed_fixed = true;
      }
      if (entry.contains("noise")) {
        cfg.noise = noise_spec_from_fragment(entry["noise"].get<std::string>());
        if (entry["noise"].get<std::string>().find("seed=") != std::string::npos) {
          cfg.seed_fixed = true;
        }
      }
      out.push_back(std::move(cfg));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("suite config: ") + e.what());
  }
  return out;
}

SuiteResult run_suite(const std::vector<ExperimentConfig>& configs,
                      const SuiteOptions& options) {
  SuiteResult out;
  out.reports.reserve(configs.size() + 8);
  const unsigned threads = options.threads == 0 ? 1 : options.threads;

  for (const ExperimentConfig& cfg : configs) {
    // Every experiment gets its own master seed derived from the suite seed
    // and the experiment id, unless the config pinned one explicitly.
    const std::uint64_t derived_seed = mix64(options.seed ^ fnv1a64(cfg.id));
    const std::int64_t reps = options.reps_override.value_or(cfg.reps);

    const auto tally = [&](const ExperimentReport& report) {
      if (is_exact_kind(cfg.kind)) {
        ++out.exact_checks;
        if (!report.pass) ++out.exact_failures;
      } else {
        ++out.statistical_checks;
        if (!report.pass) ++out.statistical_failures;
      }
    };

    switch (cfg.kind) {
      case ExperimentKind::slope_law_exact: {
        ExperimentReport report = verify_slope_law_exact(cfg.base, cfg.k);
        if (!cfg.id.empty()) report.experiment_id = cfg.id;
        tally(report);
        out.reports.push_back(std::move(report));
        break;
      }
      case ExperimentKind::sparre_andersen_exact: {
        ExperimentReport report = verify_sparre_andersen_exact(cfg.base);
        if (!cfg.id.empty()) report.experiment_id = cfg.id;
        tally(report);
        out.reports.push_back(std::move(report));
        break;
      }
      case ExperimentKind::slope_law_mc: {
        if (!cfg.noise.has_value()) {
          throw std::invalid_argument("suite config: '" + cfg.id + "' needs a noise spec");
        }
        NoiseSpec spec = *cfg.noise;
        if (!cfg.seed_fixed) spec.master_seed = derived_seed;
        ExperimentReport report = verify_slope_law_mc(spec, cfg.k, reps, cfg.alpha, threads);
        if (!cfg.id.empty()) report.experiment_id = cfg.id;
        tally(report);
        out.reports.push_back(std::move(report));
        break;
      }
      case ExperimentKind::stat_dim_mc: {
        if (!cfg.noise.has_value()) {
          throw std::invalid_argument("suite config: '" + cfg.id + "' needs a noise spec");
        }
        NoiseSpec spec = *cfg.noise;
        if (!cfg.seed_fixed) spec.master_seed = derived_seed;
        StatDimReports reports =
            verify_stat_dim_mc_paired(spec, cfg.p, reps, cfg.nonneg, threads);
        if (!cfg.id.empty()) {
          reports.main.experiment_id = cfg.id;
          reports.identity.experiment_id = cfg.id + "#avg-identity";
        }
        tally(reports.main);
        tally(reports.identity);
        out.reports.push_back(std::move(reports.main));
        out.reports.push_back(std::move(reports.identity));
        break;
      }
      case ExperimentKind::block_risk_mc: {
        if (!cfg.noise.has_value()) {
          throw std::invalid_argument("suite config: '" + cfg.id + "' needs a noise spec");
        }
        NoiseSpec spec = *cfg.noise;
        if (!cfg.seed_fixed) spec.master_seed = derived_seed;
        ExperimentReport report =
            verify_block_risk_mc(cfg.theta_star, spec, cfg.sigma_grid, reps, threads);
        if (!cfg.id.empty()) report.experiment_id = cfg.id;
        tally(report);
        out.reports.push_back(std::move(report));
        break;
      }
      case ExperimentKind::gcm_quantile_mc: {
        const std::uint64_t seed = cfg.seed_fixed ? cfg.seed : derived_seed;
        ExperimentReport report =
            verify_gcm_quantile_mc(cfg.p, cfg.grid_steps, reps, cfg.alpha, seed, threads);
        if (!cfg.id.empty()) report.experiment_id = cfg.id;
        tally(report);
        out.reports.push_back(std::move(report));
        break;
      }
    }
  }

  out.pass = out.exact_failures == 0 && out.statistical_failures <= 1;
  return out;
}

}  // namespace monocone
