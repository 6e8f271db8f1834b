#include "colorcoal/random.hpp"

#include <cmath>

#include "colorcoal/error.hpp"

namespace colorcoal {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

double RandomStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RandomStream::exponential(double rate) {
  detail::require(rate > 0.0, "exponential rate must be positive");
  return -std::log1p(-uniform()) / rate;
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  detail::require(bound > 0, "below: bound must be positive");
  // Rejection on the top of the 64-bit range keeps every residue equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % bound;
}

}  // namespace colorcoal
