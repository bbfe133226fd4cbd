#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace monocone {

/// A finite vector of real values (observations, noise, or fitted values).
using RealSequence = std::vector<double>;

/// Shortest decimal string that parses back to the same double.
inline std::string format_double_shortest(double value) {
  std::array<char, 32> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

/// Throws std::invalid_argument unless `x` is nonempty and every entry is finite.
inline void require_valid_sequence(std::span<const double> x, const char* what) {
  if (x.empty()) {
    throw std::invalid_argument(std::string(what) + ": input sequence is empty");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry at position " +
                                  std::to_string(i));
    }
  }
}

inline bool is_nondecreasing(std::span<const double> x) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i - 1] > x[i]) return false;
  }
  return true;
}

/// Neumaier-compensated accumulator. Order-sensitive by design: callers that
/// need run-to-run determinism must feed values in a fixed order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace monocone
