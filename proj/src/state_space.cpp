#include "colorcoal/state_space.hpp"

#include "colorcoal/error.hpp"

namespace colorcoal {

const char* to_string(Parity p) noexcept { return p == Parity::Even ? "even" : "odd"; }

StateSpace::StateSpace(int n) : n_(n) {
  detail::require(n >= 1, "sample size n must be at least 1");
  states_.reserve(static_cast<std::size_t>(n) * (n + 3) / 2);
  for (int m = n; m >= 1; --m)
    for (int k = 0; k <= m; ++k) states_.push_back({k, m - k});
}

bool StateSpace::contains(ColorState s) const noexcept {
  return s.black >= 0 && s.white >= 0 && s.level() >= 1 && s.level() <= n_;
}

std::size_t StateSpace::level_offset(int m) const {
  detail::require(m >= 1 && m <= n_, "level out of range");
  // Levels n..m+1 hold sum_{j=m+1}^{n} (j+1) states.
  const long hi = n_, lo = m;
  return static_cast<std::size_t>((hi - lo) * (hi + lo + 3) / 2);
}

std::size_t StateSpace::index_of(ColorState s) const {
  detail::require(contains(s), "state is not on the lattice");
  return level_offset(s.level()) + static_cast<std::size_t>(s.black);
}

std::vector<std::size_t> StateSpace::diagonal(int m) const {
  const std::size_t first = level_offset(m);
  std::vector<std::size_t> out(static_cast<std::size_t>(m) + 1);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = first + k;
  return out;
}

std::vector<std::size_t> StateSpace::parity_class(int m, Parity p) const {
  const std::size_t first = level_offset(m);
  std::vector<std::size_t> out;
  for (int k = (p == Parity::Even ? 0 : 1); k <= m; k += 2)
    out.push_back(first + static_cast<std::size_t>(k));
  return out;
}

}  // namespace colorcoal
