#include "monocone/exact_formulas.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "monocone/sequence.hpp"

namespace monocone {

namespace {

void require_positive_count(std::size_t n, const char* what) {
  if (n == 0) {
    throw std::invalid_argument(std::string(what) + ": n must be at least 1");
  }
}

void require_feasible_correlation(std::size_t n, double rho, const char* what) {
  const double lower = n > 1 ? -1.0 / static_cast<double>(n - 1) : -1.0;
  if (!(rho >= lower && rho <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": rho = " + std::to_string(rho) +
                                " is outside the exchangeability-feasible range [" +
                                std::to_string(lower) + ", 1]");
  }
}

void require_positive_sigma(double sigma, const char* what) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument(std::string(what) + ": sigma must be positive and finite");
  }
}

}  // namespace

double harmonic(std::size_t n) {
  require_positive_count(n, "harmonic");
  double sum = 0.0;
  for (std::size_t k = n; k >= 1; --k) sum += 1.0 / static_cast<double>(k);
  return sum;
}

double generalized_harmonic(std::size_t n, double m) {
  require_positive_count(n, "generalized_harmonic");
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw std::invalid_argument("generalized_harmonic: m must be positive and finite");
  }
  double sum = 0.0;
  for (std::size_t k = n; k >= 1; --k) sum += 1.0 / std::pow(static_cast<double>(k), m);
  return sum;
}

double statistical_dimension(std::size_t n, double rho) {
  require_positive_count(n, "statistical_dimension");
  require_feasible_correlation(n, rho, "statistical_dimension");
  return rho * static_cast<double>(n) + (1.0 - rho) * harmonic(n);
}

double nonneg_statistical_dimension(std::size_t n, double rho) {
  require_positive_count(n, "nonneg_statistical_dimension");
  require_feasible_correlation(n, rho, "nonneg_statistical_dimension");
  return 0.5 * statistical_dimension(n, rho);
}

double gaussian_abs_moment(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument("gaussian_abs_moment: p must be positive and finite");
  }
  const double log_value = 0.5 * (p * std::numbers::ln2 - std::log(std::numbers::pi)) +
                           std::lgamma(0.5 * (p + 1.0));
  return std::exp(log_value);
}

double gaussian_lp_projection_norm(std::size_t n, double p) {
  return generalized_harmonic(n, 0.5 * p) * gaussian_abs_moment(p);
}

std::vector<std::size_t> constant_block_lengths(std::span<const double> x) {
  require_valid_sequence(x, "constant_block_lengths");
  std::vector<std::size_t> lengths;
  std::size_t run = 1;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] == x[i - 1]) {
      ++run;
    } else {
      lengths.push_back(run);
      run = 1;
    }
  }
  lengths.push_back(run);
  return lengths;
}

std::size_t constant_piece_count(std::span<const double> x) {
  require_valid_sequence(x, "constant_piece_count");
  std::size_t pieces = 1;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] != x[i - 1]) ++pieces;
  }
  return pieces;
}

double sharp_mse_block_bound(const RiskBoundInput& input) {
  require_positive_sigma(input.sigma, "sharp_mse_block_bound");

  std::vector<std::size_t> blocks;
  std::size_t n = 0;
  if (input.theta_star.has_value()) {
    const RealSequence& theta = *input.theta_star;
    require_valid_sequence(theta, "sharp_mse_block_bound");
    if (!is_nondecreasing(theta)) {
      throw std::invalid_argument("sharp_mse_block_bound: theta_star must be non-decreasing");
    }
    blocks = constant_block_lengths(theta);
    n = theta.size();
    if (input.n != 0 && input.n != n) {
      throw std::invalid_argument("sharp_mse_block_bound: n disagrees with theta_star length");
    }
  } else {
    blocks = input.block_lengths;
    n = input.n;
    if (blocks.empty()) {
      throw std::invalid_argument(
          "sharp_mse_block_bound: provide theta_star or a nonempty block_lengths");
    }
    std::size_t total = 0;
    for (std::size_t len : blocks) {
      if (len == 0) {
        throw std::invalid_argument("sharp_mse_block_bound: block lengths must be positive");
      }
      total += len;
    }
    if (total != n) {
      throw std::invalid_argument("sharp_mse_block_bound: block lengths sum to " +
                                  std::to_string(total) + " but n = " + std::to_string(n));
    }
  }

  double dim_sum = 0.0;
  for (std::size_t len : blocks) dim_sum += statistical_dimension(len, input.rho);
  return input.sigma * input.sigma / static_cast<double>(n) * dim_sum;
}

double log_form_risk_bound(std::size_t k, std::size_t n, double sigma) {
  require_positive_count(n, "log_form_risk_bound");
  require_positive_sigma(sigma, "log_form_risk_bound");
  if (k < 1 || k > n) {
    throw std::invalid_argument("log_form_risk_bound: k must lie in [1, n]");
  }
  const double ratio = static_cast<double>(n) / static_cast<double>(k);
  return static_cast<double>(k) * sigma * sigma / static_cast<double>(n) *
         (1.0 + std::log(ratio));
}

double oracle_bound(std::span<const double> theta_star,
                    const std::vector<RealSequence>& candidates, double sigma) {
  require_valid_sequence(theta_star, "oracle_bound");
  require_positive_sigma(sigma, "oracle_bound");
  if (candidates.empty()) {
    throw std::invalid_argument("oracle_bound: at least one candidate is required");
  }
  const std::size_t n = theta_star.size();
  double best = std::numeric_limits<double>::infinity();
  for (const RealSequence& theta : candidates) {
    require_valid_sequence(theta, "oracle_bound");
    if (theta.size() != n) {
      throw std::invalid_argument("oracle_bound: candidate length differs from theta_star");
    }
    if (!is_nondecreasing(theta)) {
      throw std::invalid_argument("oracle_bound: candidate is not non-decreasing");
    }
    CompensatedSum sq;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = theta[i] - theta_star[i];
      sq.add(d * d);
    }
    const double value = sq.value() / static_cast<double>(n) +
                         log_form_risk_bound(constant_piece_count(theta), n, sigma);
    best = std::min(best, value);
  }
  return best;
}

}  // namespace monocone
