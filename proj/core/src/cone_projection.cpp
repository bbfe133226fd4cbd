#include "monocone/cone_projection.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace monocone {

namespace {

struct Block {
  std::size_t begin;
  std::size_t end;
  long double sum;

  long double mean() const { return sum / static_cast<long double>(end - begin); }
};

}  // namespace

MonotoneFit project_monotone(std::span<const double> y) {
  require_valid_sequence(y, "project_monotone");
  std::vector<Block> stack;
  stack.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    Block cur{i, i + 1, static_cast<long double>(y[i])};
    while (!stack.empty() && stack.back().mean() >= cur.mean()) {
      cur.begin = stack.back().begin;
      cur.sum += stack.back().sum;
      stack.pop_back();
    }
    stack.push_back(cur);
  }

  MonotoneFit fit;
  fit.fitted.resize(y.size());
  fit.blocks.reserve(stack.size());
  for (const Block& b : stack) {
    const double level = static_cast<double>(b.mean());
    fit.blocks.push_back(FitBlock{b.begin, b.end, level});
    for (std::size_t i = b.begin; i < b.end; ++i) fit.fitted[i] = level;
  }
  return fit;
}

RealSequence project_monotone_minmax(std::span<const double> z) {
  require_valid_sequence(z, "project_monotone_minmax");
  const std::size_t n = z.size();
  std::vector<long double> s(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) s[i + 1] = s[i] + z[i];

  RealSequence delta(n);
  for (std::size_t k = 1; k <= n; ++k) {
    long double best = std::numeric_limits<long double>::infinity();
    for (std::size_t v = k; v <= n; ++v) {
      long double worst = -std::numeric_limits<long double>::infinity();
      for (std::size_t u = 0; u < k; ++u) {
        const long double slope = (s[v] - s[u]) / static_cast<long double>(v - u);
        if (slope > worst) worst = slope;
      }
      if (worst < best) best = worst;
    }
    delta[k - 1] = static_cast<double>(best);
  }
  return delta;
}

RealSequence project_monotone_bruteforce(std::span<const double> z) {
  require_valid_sequence(z, "project_monotone_bruteforce");
  const std::size_t n = z.size();
  if (n > 20) {
    throw std::invalid_argument("project_monotone_bruteforce: n = " + std::to_string(n) +
                                " exceeds the exhaustive-search limit of 20");
  }

  std::vector<long double> s(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) s[i + 1] = s[i] + z[i];

  // A partition is a bitmask over the n-1 possible cuts; bit i set means a
  // block boundary between positions i and i+1. Every candidate fit lies in
  // the cone, and the projection itself is one of them, so the closest
  // candidate is the projection.
  const std::uint64_t partitions = std::uint64_t{1} << (n - 1);
  long double best_score = -std::numeric_limits<long double>::infinity();
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 0; mask < partitions; ++mask) {
    long double score = 0.0L;
    long double prev_mean = -std::numeric_limits<long double>::infinity();
    std::size_t begin = 0;
    bool feasible = true;
    for (std::size_t i = 0; i < n; ++i) {
      const bool cut_here = i + 1 == n || ((mask >> i) & 1u);
      if (!cut_here) continue;
      const std::size_t end = i + 1;
      const long double block_sum = s[end] - s[begin];
      const long double mean = block_sum / static_cast<long double>(end - begin);
      if (mean < prev_mean) {
        feasible = false;
        break;
      }
      // Minimizing sum (z_i - mean)^2 over partitions is the same as
      // maximizing sum block_sum^2 / block_length.
      score += block_sum * mean;
      prev_mean = mean;
      begin = end;
    }
    if (feasible && score > best_score) {
      best_score = score;
      best_mask = mask;
    }
  }

  RealSequence fitted(n);
  std::size_t begin = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool cut_here = i + 1 == n || ((best_mask >> i) & 1u);
    if (!cut_here) continue;
    const std::size_t end = i + 1;
    const double mean =
        static_cast<double>((s[end] - s[begin]) / static_cast<long double>(end - begin));
    for (std::size_t j = begin; j < end; ++j) fitted[j] = mean;
    begin = end;
  }
  return fitted;
}

RealSequence project_nonneg_monotone(std::span<const double> z) {
  MonotoneFit fit = project_monotone(z);
  for (double& v : fit.fitted) {
    if (v < 0.0) v = 0.0;
  }
  return std::move(fit.fitted);
}

}  // namespace monocone
