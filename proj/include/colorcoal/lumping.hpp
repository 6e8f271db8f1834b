#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "colorcoal/linalg.hpp"
#include "colorcoal/state_space.hpp"

namespace colorcoal {

/// Disjoint cover of {0, ..., r-1} by non-empty blocks.
struct Partition {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::string> labels;

  std::size_t block_count() const noexcept { return blocks.size(); }
  /// Throws InvalidArgument unless this is a partition of r states.
  void validate(std::size_t r) const;
  /// Each state its own block.
  static Partition discrete(std::size_t r);
};

/// U (v x r) spreads each block uniformly; V (r x v) holds block indicators.
struct AggregationPair {
  Matrix U;
  Matrix V;
};

AggregationPair uv_matrices(const Partition& p, std::size_t r);

/// Drops the last `count` blocks and the states they cover. Requires those
/// states to be the trailing ones, as for the absorbing states of the
/// colored lattice.
AggregationPair drop_trailing(const AggregationPair& uv, std::size_t blocks,
                              std::size_t states);

enum class MatrixKind { Generator, Stochastic };

struct LumpReport {
  bool lumpable = false;
  double max_violation = 0.0;
  std::optional<Matrix> lumped;
};

inline constexpr double kDefaultLumpTolerance = 1e-9;

/// Residual ||VUMV - MV||_inf against `tol`; the lumped matrix UMV is
/// attached when the check passes. The same criterion covers chains,
/// transition matrices P(t) at a fixed t, and generators.
LumpReport check_lumpable(const Matrix& m, const Partition& p, MatrixKind kind,
                          double tol = kDefaultLumpTolerance);

/// UMV; throws NotLumpable when the criterion fails at the default tolerance.
Matrix lump(const Matrix& m, const Partition& p, MatrixKind kind);

/// Blocks E_n, O_n, E_{n-1}, O_{n-1}, ..., E_1, O_1.
Partition parity_partition(const StateSpace& space);

/// C^k for C = [[1-x, x], [x, 1-x]], closed form.
Eigen::Matrix2d parity_block_power(double x, unsigned k);

}  // namespace colorcoal
