#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "monocone/sequence.hpp"

namespace monocone {

/// Time axis of a walk: integer grid 0..n, or n uniform steps spanning [0,1].
enum class Horizon { unit_steps, unit_interval };

/// Cumulative-sum diagram: values S_0..S_n at the grid abscissae, linearly
/// interpolated between them. S_0 is always exactly 0.
struct WalkPath {
  std::vector<double> partial_sums;
  Horizon horizon = Horizon::unit_steps;

  std::size_t steps() const { return partial_sums.size() - 1; }

  double time_at(std::size_t i) const {
    return horizon == Horizon::unit_steps
               ? static_cast<double>(i)
               : static_cast<double>(i) / static_cast<double>(steps());
  }
};

/// Greatest convex minorant of a WalkPath. `breakpoints` are the grid indices
/// where the minorant touches the diagram (always containing 0 and n);
/// `slopes` holds the n left-hand slopes per unit step, non-decreasing.
struct ConvexMinorant {
  std::vector<std::size_t> breakpoints;
  std::vector<double> slopes;

  /// Minorant value at grid index k, reconstructed from the slopes.
  double value_at(std::size_t k) const;
};

WalkPath cumulative_sums(std::span<const double> z);

/// Rescales the time axis of a unit-step path onto [0,1]; values unchanged.
WalkPath to_unit_interval(WalkPath path);

/// Lower convex hull of the points (i, S_i); O(n).
ConvexMinorant greatest_convex_minorant(const WalkPath& path);

/// k-th entry is S_k / k.
RealSequence running_averages(std::span<const double> z);

/// Non-decreasing rearrangement.
RealSequence sorted_copy(std::span<const double> x);

/// Largest index in 0..n attaining the minimum of the partial sums.
std::size_t last_argmin(const WalkPath& path);

/// Number of indices k in 1..n with S_k <= 0.
std::size_t nonpositive_time(const WalkPath& path);

/// Lebesgue measure of {t in [0,1] : S(t) <= t*x}, computed segment by
/// segment in closed form. Requires a unit-interval path.
double occupation_cdf(const WalkPath& path, double x);

/// Generalized inverse inf{x : occupation_cdf(path, x) >= p} for p in (0,1],
/// by bisection to absolute tolerance 1e-10 on x.
double occupation_quantile(const WalkPath& path, double p);

/// Left-hand slope (per unit time) of the greatest convex minorant of a
/// unit-interval path at p in (0,1].
double gcm_slope_at(const WalkPath& path, double p);

}  // namespace monocone
