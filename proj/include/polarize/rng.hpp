#pragma once

#include <cstdint>

#include "polarize/scalar.hpp"

namespace polarize {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen as the documented, portable
/// 64-bit generator behind every seeded draw: the (seed, stream) pair fixes
/// the full stream, so reports are reproducible across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo is fine here: n is tiny relative to 2^64.
    return next() % n;
  }

 private:
  std::uint64_t state_;
};

/// Independent per-trial stream derived from (seed, stream index).
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mixer(seed ^ (0xD1B54A32D192ED03ull * (stream + 1)));
  return SplitMix64(mixer.next());
}

inline constexpr int kDyadicBits = 20;

/// Uniform draw from the dyadic grid {j / 2^20 : |j| <= 2^20} in [-1, 1].
/// Dyadics are exactly representable on both scalar backends, which makes
/// the same seed produce identical streams under rational and float runs.
template <typename S>
S uniform_pm1(SplitMix64& rng) {
  const std::int64_t span = (std::int64_t(1) << kDyadicBits);
  const std::int64_t j = static_cast<std::int64_t>(rng.below(2 * span + 1)) - span;
  return scalar_traits<S>::from_ratio(j, span);
}

/// Uniform random rational with small numerator/denominator, for exact
/// homogeneity sampling.
inline std::pair<long long, long long> small_ratio(SplitMix64& rng, long long max_abs = 8) {
  const long long num = static_cast<long long>(rng.below(2 * max_abs + 1)) - max_abs;
  const long long den = static_cast<long long>(rng.below(max_abs)) + 1;
  return {num, den};
}

}  // namespace polarize
