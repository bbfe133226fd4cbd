#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "monocone/sequence.hpp"

namespace monocone {

/// One level set of a monotone fit: indices [begin, end) share the value
/// `level`, the mean of the input over the block.
struct FitBlock {
  std::size_t begin = 0;
  std::size_t end = 0;
  double level = 0.0;
};

/// Euclidean projection onto the cone of non-decreasing sequences, together
/// with its finest constant-block partition (levels strictly increase).
struct MonotoneFit {
  RealSequence fitted;
  std::vector<FitBlock> blocks;
};

/// Least-squares isotonic fit by pool-adjacent-violators; O(n).
MonotoneFit project_monotone(std::span<const double> y);

/// Same fit from the direct min over v >= k of the max over u < k of the
/// chord slope (S_v - S_u)/(v - u); O(n^3). Independent oracle for
/// project_monotone.
RealSequence project_monotone_minmax(std::span<const double> z);

/// Exhaustive search over all 2^(n-1) contiguous block partitions; keeps
/// candidates with non-decreasing block means and returns the one closest to
/// the input. Second independent oracle; n <= 20.
RealSequence project_monotone_bruteforce(std::span<const double> z);

/// Projection onto the non-negative monotone cone: the element-wise positive
/// part of project_monotone.
RealSequence project_nonneg_monotone(std::span<const double> z);

}  // namespace monocone
