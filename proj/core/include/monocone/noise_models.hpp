#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "monocone/sequence.hpp"

namespace monocone {

enum class NoiseFamily {
  iid_gaussian,
  iid_rademacher,
  iid_uniform,
  iid_centered_exponential,
  iid_student_t,
  equicorrelated_gaussian,
  permutation_of,
};

std::string family_name(NoiseFamily family);
NoiseFamily family_from_name(std::string_view name);

/// Declarative description of an exchangeable noise law. All iid families are
/// standardized to mean 0, variance 1. Construct through the factories (or
/// call validate() after hand-filling fields).
struct NoiseSpec {
  NoiseFamily family = NoiseFamily::iid_gaussian;
  std::size_t n = 0;
  std::uint64_t master_seed = 0;
  double df = 0.0;           // iid_student_t only, df > 2
  double rho = 0.0;          // equicorrelated_gaussian only
  RealSequence values;       // permutation_of only, length n

  static NoiseSpec iid_gaussian(std::size_t n, std::uint64_t seed);
  static NoiseSpec iid_rademacher(std::size_t n, std::uint64_t seed);
  static NoiseSpec iid_uniform(std::size_t n, std::uint64_t seed);
  static NoiseSpec iid_centered_exponential(std::size_t n, std::uint64_t seed);
  static NoiseSpec iid_student_t(std::size_t n, double df, std::uint64_t seed);
  static NoiseSpec equicorrelated_gaussian(std::size_t n, double rho, std::uint64_t seed);
  static NoiseSpec permutation_of(RealSequence values, std::uint64_t seed);

  /// Throws std::invalid_argument on any parameter outside its domain.
  void validate() const;

  /// True when the law of the vector is symmetric about 0 (Z and -Z share a
  /// law), which the non-negative-cone closed forms require.
  bool is_symmetric() const;
};

/// One noise vector of length spec.n. Deterministic pure function of
/// (spec.master_seed, replicate_index); safe to call concurrently.
RealSequence sample(const NoiseSpec& spec, std::uint64_t replicate_index);

/// Pairwise correlation rho of the law: 0 for iid families, rho for the
/// equicorrelated family, -1/(n-1) for a uniform permutation of a fixed
/// vector (0 when n = 1, where a pairwise correlation is undefined).
double pairwise_correlation(const NoiseSpec& spec);

/// Plain-text key=value fragment, e.g. "family=iid_gaussian n=100 seed=7".
std::string to_fragment(const NoiseSpec& spec);
NoiseSpec noise_spec_from_fragment(std::string_view fragment);

}  // namespace monocone
