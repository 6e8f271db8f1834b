#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace colorcoal {

/// A colored generation: `black` B-lineages and `white` W-lineages.
struct ColorState {
  int black = 0;
  int white = 0;

  constexpr int level() const noexcept { return black + white; }
  friend constexpr auto operator<=>(const ColorState&, const ColorState&) = default;
};

enum class Parity { Even, Odd };

/// Parity of the black-lineage count.
constexpr Parity parity_of(ColorState s) noexcept {
  return (s.black % 2 == 0) ? Parity::Even : Parity::Odd;
}

constexpr Parity flip(Parity p) noexcept {
  return p == Parity::Even ? Parity::Odd : Parity::Even;
}

const char* to_string(Parity p) noexcept;

/// The lattice {(k,l) : k,l >= 0, 0 < k+l <= n} in canonical order
///
///   (0,n),(1,n-1),...,(n,0),(0,n-1),...,(n-1,0),...,(0,1),(1,0)
///
/// i.e. levels from n down to 1, and within a level by increasing black
/// count. Immutable once built.
class StateSpace {
 public:
  explicit StateSpace(int n);

  int sample_size() const noexcept { return n_; }
  std::size_t size() const noexcept { return states_.size(); }
  std::span<const ColorState> states() const noexcept { return states_; }
  const ColorState& operator[](std::size_t i) const { return states_[i]; }

  bool contains(ColorState s) const noexcept;
  /// Position of `s` in the canonical order; throws InvalidArgument if absent.
  std::size_t index_of(ColorState s) const;

  /// First index of level m (the state (0,m)).
  std::size_t level_offset(int m) const;
  /// Indices of the diagonal {k+l = m}, in order of increasing k.
  std::vector<std::size_t> diagonal(int m) const;
  /// Indices of the states at level m with the given parity.
  std::vector<std::size_t> parity_class(int m, Parity p) const;

  /// Number of states on levels >= 2.
  std::size_t transient_count() const noexcept { return states_.size() - 2; }

 private:
  int n_;
  std::vector<ColorState> states_;
};

inline StateSpace build_lattice(int n) { return StateSpace(n); }

}  // namespace colorcoal
