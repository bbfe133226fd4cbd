#include "monocone/walk_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace monocone {

namespace {

void require_valid_path(const WalkPath& path, const char* what) {
  if (path.partial_sums.size() < 2) {
    throw std::invalid_argument(std::string(what) + ": path needs at least one step");
  }
  if (path.partial_sums.front() != 0.0) {
    throw std::invalid_argument(std::string(what) + ": path must start at 0");
  }
  for (double v : path.partial_sums) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) + ": non-finite path value");
    }
  }
}

void require_unit_interval(const WalkPath& path, const char* what) {
  require_valid_path(path, what);
  if (path.horizon != Horizon::unit_interval) {
    throw std::invalid_argument(std::string(what) + ": path must live on the [0,1] grid");
  }
}

void require_percentile(double p, const char* what) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": p must lie in (0, 1]");
  }
}

}  // namespace

double ConvexMinorant::value_at(std::size_t k) const {
  CompensatedSum acc;
  for (std::size_t i = 0; i < k && i < slopes.size(); ++i) acc.add(slopes[i]);
  return acc.value();
}

WalkPath cumulative_sums(std::span<const double> z) {
  require_valid_sequence(z, "cumulative_sums");
  WalkPath path;
  path.horizon = Horizon::unit_steps;
  path.partial_sums.resize(z.size() + 1);
  path.partial_sums[0] = 0.0;
  long double run = 0.0L;
  for (std::size_t i = 0; i < z.size(); ++i) {
    run += z[i];
    path.partial_sums[i + 1] = static_cast<double>(run);
  }
  return path;
}

WalkPath to_unit_interval(WalkPath path) {
  require_valid_path(path, "to_unit_interval");
  path.horizon = Horizon::unit_interval;
  return path;
}

ConvexMinorant greatest_convex_minorant(const WalkPath& path) {
  require_valid_path(path, "greatest_convex_minorant");
  const std::vector<double>& s = path.partial_sums;
  const std::size_t n = s.size() - 1;

  // Lower convex hull by monotone chain; collinear middle points are dropped
  // so consecutive hull segments have strictly increasing slopes.
  std::vector<std::size_t> hull;
  hull.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull[hull.size() - 1];
      const long double lhs =
          (static_cast<long double>(s[b]) - s[a]) * static_cast<long double>(i - b);
      const long double rhs =
          (static_cast<long double>(s[i]) - s[b]) * static_cast<long double>(b - a);
      if (lhs >= rhs) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }

  ConvexMinorant gcm;
  gcm.breakpoints = std::move(hull);
  gcm.slopes.resize(n);
  for (std::size_t seg = 1; seg < gcm.breakpoints.size(); ++seg) {
    const std::size_t lo = gcm.breakpoints[seg - 1];
    const std::size_t hi = gcm.breakpoints[seg];
    const double slope = static_cast<double>((static_cast<long double>(s[hi]) - s[lo]) /
                                             static_cast<long double>(hi - lo));
    for (std::size_t i = lo; i < hi; ++i) gcm.slopes[i] = slope;
  }
  return gcm;
}

RealSequence running_averages(std::span<const double> z) {
  require_valid_sequence(z, "running_averages");
  RealSequence avg(z.size());
  long double run = 0.0L;
  for (std::size_t i = 0; i < z.size(); ++i) {
    run += z[i];
    avg[i] = static_cast<double>(run / static_cast<long double>(i + 1));
  }
  return avg;
}

RealSequence sorted_copy(std::span<const double> x) {
  require_valid_sequence(x, "sorted_copy");
  RealSequence out(x.begin(), x.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t last_argmin(const WalkPath& path) {
  require_valid_path(path, "last_argmin");
  std::size_t arg = 0;
  double best = path.partial_sums[0];
  for (std::size_t i = 1; i < path.partial_sums.size(); ++i) {
    if (path.partial_sums[i] <= best) {
      best = path.partial_sums[i];
      arg = i;
    }
  }
  return arg;
}

std::size_t nonpositive_time(const WalkPath& path) {
  require_valid_path(path, "nonpositive_time");
  std::size_t count = 0;
  for (std::size_t i = 1; i < path.partial_sums.size(); ++i) {
    if (path.partial_sums[i] <= 0.0) ++count;
  }
  return count;
}

double occupation_cdf(const WalkPath& path, double x) {
  require_unit_interval(path, "occupation_cdf");
  if (!std::isfinite(x)) {
    throw std::invalid_argument("occupation_cdf: x must be finite");
  }
  const std::vector<double>& s = path.partial_sums;
  const std::size_t n = s.size() - 1;
  const double dt = 1.0 / static_cast<double>(n);

  // On each linear segment the inequality S(t) <= t*x reads g(t) <= 0 with
  // g(t) = S(t) - t*x linear, so the contribution is a closed-form interval.
  long double measure = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const double t0 = path.time_at(i);
    const double t1 = path.time_at(i + 1);
    const double g0 = s[i] - t0 * x;
    const double g1 = s[i + 1] - t1 * x;
    if (g0 <= 0.0 && g1 <= 0.0) {
      measure += dt;
    } else if (g0 > 0.0 && g1 > 0.0) {
      continue;
    } else {
      const double cross = t0 + (t1 - t0) * (g0 / (g0 - g1));
      measure += (g0 > 0.0) ? (t1 - cross) : (cross - t0);
    }
  }
  const double f = static_cast<double>(measure);
  return std::min(1.0, std::max(0.0, f));
}

double occupation_quantile(const WalkPath& path, double p) {
  require_unit_interval(path, "occupation_quantile");
  require_percentile(p, "occupation_quantile");
  const std::vector<double>& s = path.partial_sums;
  const std::size_t n = s.size() - 1;

  // S(t)/t is monotone on every linear segment, so its range over (0,1] is
  // bracketed by the grid ratios S_i / t_i.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= n; ++i) {
    const double ratio = s[i] / path.time_at(i);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  lo -= 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (occupation_cdf(path, mid) >= p) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double gcm_slope_at(const WalkPath& path, double p) {
  require_unit_interval(path, "gcm_slope_at");
  require_percentile(p, "gcm_slope_at");
  const std::size_t n = path.steps();
  const ConvexMinorant gcm = greatest_convex_minorant(path);
  const double scaled = p * static_cast<double>(n);
  std::size_t k = static_cast<std::size_t>(std::ceil(scaled - 1e-9));
  k = std::max<std::size_t>(1, std::min(k, n));
  return gcm.slopes[k - 1] * static_cast<double>(n);
}

}  // namespace monocone
