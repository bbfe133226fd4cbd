#include "monocone/noise_models.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>

#include "monocone/rng.hpp"

namespace monocone {

namespace {

[[noreturn]] void spec_error(const std::string& message) {
  throw std::invalid_argument("NoiseSpec: " + message);
}

double parse_double(std::string_view text, const char* key) {
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
    spec_error(std::string("cannot parse ") + key + " from '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_u64(std::string_view text, const char* key) {
  std::uint64_t value = 0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
    spec_error(std::string("cannot parse ") + key + " from '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string family_name(NoiseFamily family) {
  switch (family) {
    case NoiseFamily::iid_gaussian:
      return "iid_gaussian";
    case NoiseFamily::iid_rademacher:
      return "iid_rademacher";
    case NoiseFamily::iid_uniform:
      return "iid_uniform";
    case NoiseFamily::iid_centered_exponential:
      return "iid_centered_exponential";
    case NoiseFamily::iid_student_t:
      return "iid_student_t";
    case NoiseFamily::equicorrelated_gaussian:
      return "equicorrelated_gaussian";
    case NoiseFamily::permutation_of:
      return "permutation_of";
  }
  spec_error("unknown family enumerator");
}

NoiseFamily family_from_name(std::string_view name) {
  if (name == "iid_gaussian") return NoiseFamily::iid_gaussian;
  if (name == "iid_rademacher") return NoiseFamily::iid_rademacher;
  if (name == "iid_uniform") return NoiseFamily::iid_uniform;
  if (name == "iid_centered_exponential") return NoiseFamily::iid_centered_exponential;
  if (name == "iid_student_t") return NoiseFamily::iid_student_t;
  if (name == "equicorrelated_gaussian") return NoiseFamily::equicorrelated_gaussian;
  if (name == "permutation_of") return NoiseFamily::permutation_of;
  spec_error("unknown family '" + std::string(name) + "'");
}

NoiseSpec NoiseSpec::iid_gaussian(std::size_t n, std::uint64_t seed) {
  NoiseSpec spec;
  spec.family = NoiseFamily::iid_gaussian;
  spec.n = n;
  spec.master_seed = seed;
  spec.validate();
  return spec;
}

NoiseSpec NoiseSpec::iid_rademacher(std::size_t n, std::uint64_t seed) {
  NoiseSpec spec;
  spec.family = NoiseFamily::iid_rademacher;
  spec.n = n;
  spec.master_seed = seed;
  spec.validate();
  return spec;
}

NoiseSpec NoiseSpec::iid_uniform(std::size_t n, std::uint64_t seed) {
  NoiseSpec spec;
  spec.family = NoiseFamily::iid_uniform;
  spec.n = n;
  spec.master_seed = seed;
  spec.validate();
  return spec;
}

NoiseSpec NoiseSpec::iid_centered_exponential(std::size_t n, std::uint64_t seed) {
  NoiseSpec spec;
  spec.family = NoiseFamily::iid_centered_exponential;
  spec.n = n;
  spec.master_seed = seed;
  spec.validate();
  return spec;
}

NoiseSpec NoiseSpec::iid_student_t(std::size_t n, double df, std::uint64_t seed) {
  NoiseSpec spec;
  spec.family = NoiseFamily::iid_student_t;
  spec.n = n;
  spec.df = df;
  spec.master_seed = seed;
  spec.validate();
  return spec;
}

NoiseSpec NoiseSpec::equicorrelated_gaussian(std::size_t n, double rho, std::uint64_t seed) {
  NoiseSpec spec;
  spec.family = NoiseFamily::equicorrelated_gaussian;
  spec.n = n;
  spec.rho = rho;
  spec.master_seed = seed;
  spec.validate();
  return spec;
}

NoiseSpec NoiseSpec::permutation_of(RealSequence values, std::uint64_t seed) {
  NoiseSpec spec;
  spec.family = NoiseFamily::permutation_of;
  spec.n = values.size();
  spec.values = std::move(values);
  spec.master_seed = seed;
  spec.validate();
  return spec;
}

void NoiseSpec::validate() const {
  if (n == 0) spec_error("n must be at least 1");
  switch (family) {
    case NoiseFamily::iid_student_t:
      if (!(df > 2.0) || !std::isfinite(df)) {
        spec_error("student t requires df > 2 for a finite standardized variance");
      }
      break;
    case NoiseFamily::equicorrelated_gaussian: {
      const double lower =
          n > 1 ? -1.0 / static_cast<double>(n - 1) : -std::numeric_limits<double>::infinity();
      if (!(rho > lower && rho < 1.0)) {
        spec_error("equicorrelated gaussian requires -1/(n-1) < rho < 1");
      }
      break;
    }
    case NoiseFamily::permutation_of:
      if (values.size() != n) spec_error("permutation_of requires a fixed vector of length n");
      require_valid_sequence(values, "NoiseSpec");
      break;
    default:
      break;
  }
}

bool NoiseSpec::is_symmetric() const {
  switch (family) {
    case NoiseFamily::iid_gaussian:
    case NoiseFamily::iid_rademacher:
    case NoiseFamily::iid_uniform:
    case NoiseFamily::iid_student_t:
    case NoiseFamily::equicorrelated_gaussian:
      return true;
    case NoiseFamily::iid_centered_exponential:
    case NoiseFamily::permutation_of:
      return false;
  }
  return false;
}

RealSequence sample(const NoiseSpec& spec, std::uint64_t replicate_index) {
  spec.validate();
  SplitMix64 rng = replicate_stream(spec.master_seed, replicate_index);
  RealSequence z(spec.n);

  switch (spec.family) {
    case NoiseFamily::iid_gaussian:
      for (double& v : z) v = rng.next_gaussian();
      break;
    case NoiseFamily::iid_rademacher:
      for (double& v : z) v = (rng.next_u64() >> 63) ? 1.0 : -1.0;
      break;
    case NoiseFamily::iid_uniform: {
      const double half_width = std::sqrt(3.0);
      for (double& v : z) v = half_width * (2.0 * rng.next_unit() - 1.0);
      break;
    }
    case NoiseFamily::iid_centered_exponential:
      for (double& v : z) v = -std::log(rng.next_unit()) - 1.0;
      break;
    case NoiseFamily::iid_student_t: {
      const double scale = std::sqrt((spec.df - 2.0) / spec.df);
      for (double& v : z) {
        const double g = rng.next_gaussian();
        const double chi_square = 2.0 * rng.next_gamma(0.5 * spec.df);
        v = scale * g / std::sqrt(chi_square / spec.df);
      }
      break;
    }
    case NoiseFamily::equicorrelated_gaussian: {
      if (spec.rho >= 0.0) {
        const double shared = std::sqrt(spec.rho) * rng.next_gaussian();
        const double own = std::sqrt(1.0 - spec.rho);
        for (double& v : z) v = shared + own * rng.next_gaussian();
      } else {
        // Symmetric square root of the equicorrelation matrix:
        // z_i = alpha g_i + beta (g_1 + ... + g_n), which has unit variance
        // and pairwise correlation rho for the whole feasible range.
        const double alpha = std::sqrt(1.0 - spec.rho);
        const double beta =
            (std::sqrt(1.0 + (static_cast<double>(spec.n) - 1.0) * spec.rho) - alpha) /
            static_cast<double>(spec.n);
        long double total = 0.0L;
        for (double& v : z) {
          v = rng.next_gaussian();
          total += v;
        }
        const double g_sum = static_cast<double>(total);
        for (double& v : z) v = alpha * v + beta * g_sum;
      }
      break;
    }
    case NoiseFamily::permutation_of: {
      z = spec.values;
      for (std::size_t i = spec.n - 1; i > 0; --i) {
        const std::uint64_t j = rng.next_below(i + 1);
        std::swap(z[i], z[j]);
      }
      break;
    }
  }
  return z;
}

double pairwise_correlation(const NoiseSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case NoiseFamily::equicorrelated_gaussian:
      return spec.rho;
    case NoiseFamily::permutation_of:
      return spec.n > 1 ? -1.0 / static_cast<double>(spec.n - 1) : 0.0;
    default:
      return 0.0;
  }
}

std::string to_fragment(const NoiseSpec& spec) {
  spec.validate();
  std::string out = "family=" + family_name(spec.family) + " n=" + std::to_string(spec.n) +
                    " seed=" + std::to_string(spec.master_seed);
  switch (spec.family) {
    case NoiseFamily::iid_student_t:
      out += " df=" + format_double_shortest(spec.df);
      break;
    case NoiseFamily::equicorrelated_gaussian:
      out += " rho=" + format_double_shortest(spec.rho);
      break;
    case NoiseFamily::permutation_of: {
      out += " values=";
      for (std::size_t i = 0; i < spec.values.size(); ++i) {
        if (i > 0) out += ';';
        out += format_double_shortest(spec.values[i]);
      }
      break;
    }
    default:
      break;
  }
  return out;
}

NoiseSpec noise_spec_from_fragment(std::string_view fragment) {
  NoiseSpec spec;
  bool saw_family = false;
  std::size_t pos = 0;
  while (pos < fragment.size()) {
    while (pos < fragment.size() && fragment[pos] == ' ') ++pos;
    if (pos >= fragment.size()) break;
    const std::size_t end = std::min(fragment.find(' ', pos), fragment.size());
    const std::string_view token = fragment.substr(pos, end - pos);
    pos = end;

    const std::size_t eq = token.find('=');
    if (eq == std::string_view::npos) {
      spec_error("malformed fragment token '" + std::string(token) + "'");
    }
    const std::string_view key = token.substr(0, eq);
    const std::string_view value = token.substr(eq + 1);
    if (key == "family") {
      spec.family = family_from_name(value);
      saw_family = true;
    } else if (key == "n") {
      spec.n = static_cast<std::size_t>(parse_u64(value, "n"));
    } else if (key == "seed") {
      spec.master_seed = parse_u64(value, "seed");
    } else if (key == "df") {
      spec.df = parse_double(value, "df");
    } else if (key == "rho") {
      spec.rho = parse_double(value, "rho");
    } else if (key == "values") {
      spec.values.clear();
      std::size_t start = 0;
      while (start <= value.size()) {
        const std::size_t stop = std::min(value.find(';', start), value.size());
        spec.values.push_back(parse_double(value.substr(start, stop - start), "values"));
        start = stop + 1;
      }
    } else {
      spec_error("unknown fragment key '" + std::string(key) + "'");
    }
  }
  if (!saw_family) spec_error("fragment is missing the family key");
  if (spec.family == NoiseFamily::permutation_of && spec.n == 0) spec.n = spec.values.size();
  spec.validate();
  return spec;
}

}  // namespace monocone
