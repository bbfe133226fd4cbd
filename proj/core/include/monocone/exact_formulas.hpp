#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "monocone/sequence.hpp"

namespace monocone {

/// n-th harmonic number 1 + 1/2 + ... + 1/n, summed smallest terms first.
double harmonic(std::size_t n);

/// Generalized harmonic number: sum over k = 1..n of 1/k^m, m > 0.
double generalized_harmonic(std::size_t n, double m);

/// Expected squared norm of the isotonic projection of an exchangeable
/// standardized noise vector with pairwise correlation rho:
/// rho*n + (1-rho)*H_n. Requires -1/(n-1) <= rho <= 1.
double statistical_dimension(std::size_t n, double rho = 0.0);

/// Same quantity for the non-negative monotone cone under symmetric noise:
/// half of statistical_dimension.
double nonneg_statistical_dimension(std::size_t n, double rho = 0.0);

/// E|Z|^p for standard normal Z: sqrt(2^p / pi) * Gamma((p+1)/2), p > 0.
double gaussian_abs_moment(double p);

/// E of the p-th power p-norm of the isotonic projection of iid standard
/// Gaussian noise: H_{n,p/2} * E|Z|^p.
double gaussian_lp_projection_norm(std::size_t n, double p);

/// Lengths of the finest partition of x into maximal runs of exactly equal
/// adjacent values.
std::vector<std::size_t> constant_block_lengths(std::span<const double> x);

/// Number of constant pieces of x (exact adjacent equality, no tolerance).
std::size_t constant_piece_count(std::span<const double> x);

/// Inputs for the block-sum risk bound. Either pass the block lengths of the
/// true signal directly, or pass theta_star (non-decreasing) and have its
/// finest constant partition computed.
struct RiskBoundInput {
  std::optional<RealSequence> theta_star;
  std::vector<std::size_t> block_lengths;
  double sigma = 1.0;
  double rho = 0.0;
  std::size_t n = 0;
};

/// Upper bound on the normalized risk (1/n) E||fit - theta*||^2 for
/// exchangeable noise: (sigma^2/n) * sum_i statistical_dimension(n_i, rho),
/// summed over the constant blocks of theta*. Sharp as sigma -> 0.
double sharp_mse_block_bound(const RiskBoundInput& input);

/// Log form of the risk bound for a k-piece monotone signal:
/// (k sigma^2 / n) * log(e n / k).
double log_form_risk_bound(std::size_t k, std::size_t n, double sigma = 1.0);

/// Oracle-inequality bound: min over the supplied monotone candidates theta of
/// (1/n)||theta - theta*||^2 + (sigma^2 k(theta)/n) log(e n / k(theta)).
double oracle_bound(std::span<const double> theta_star,
                    const std::vector<RealSequence>& candidates, double sigma);

}  // namespace monocone
