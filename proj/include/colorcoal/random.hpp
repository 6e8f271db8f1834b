#pragma once

#include <cstdint>
#include <random>

namespace colorcoal {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Seed of replicate `index` under master seed `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Per-replicate random stream. Every draw is built from raw 64-bit engine
/// output so results do not depend on the standard library's distribution
/// implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  static RandomStream for_replicate(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(stream_seed(seed, index));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Inverse-CDF exponential draw.
  double exponential(double rate);
  /// Uniform integer in [0, bound), unbiased.
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace colorcoal
