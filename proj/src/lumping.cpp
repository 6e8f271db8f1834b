#include "colorcoal/lumping.hpp"

#include <cmath>
#include <string>

#include "colorcoal/error.hpp"

namespace colorcoal {

void Partition::validate(std::size_t r) const {
  detail::require(!blocks.empty() || r == 0, "partition has no blocks");
  detail::require(labels.empty() || labels.size() == blocks.size(),
                  "partition needs one label per block");
  std::vector<char> seen(r, 0);
  std::size_t covered = 0;
  for (const auto& block : blocks) {
    detail::require(!block.empty(), "partition contains an empty block");
    for (std::size_t s : block) {
      detail::require(s < r, "partition refers to a state outside the space");
      detail::require(!seen[s], "partition blocks overlap");
      seen[s] = 1;
      ++covered;
    }
  }
  detail::require(covered == r, "partition does not cover the state space");
}

Partition Partition::discrete(std::size_t r) {
  Partition p;
  for (std::size_t i = 0; i < r; ++i) {
    p.blocks.push_back({i});
    p.labels.push_back(std::to_string(i));
  }
  return p;
}

AggregationPair uv_matrices(const Partition& p, std::size_t r) {
  p.validate(r);
  const auto v = static_cast<Eigen::Index>(p.block_count());
  AggregationPair uv{Matrix::Zero(v, static_cast<Eigen::Index>(r)),
                     Matrix::Zero(static_cast<Eigen::Index>(r), v)};
  for (Eigen::Index b = 0; b < v; ++b) {
    const auto& block = p.blocks[static_cast<std::size_t>(b)];
    const double share = 1.0 / static_cast<double>(block.size());
    for (std::size_t s : block) {
      uv.U(b, static_cast<Eigen::Index>(s)) = share;
      uv.V(static_cast<Eigen::Index>(s), b) = 1.0;
    }
  }
  return uv;
}

AggregationPair drop_trailing(const AggregationPair& uv, std::size_t blocks, std::size_t states) {
  const auto v = uv.U.rows(), r = uv.U.cols();
  const auto keep_v = v - static_cast<Eigen::Index>(blocks);
  const auto keep_r = r - static_cast<Eigen::Index>(states);
  detail::require(keep_v >= 0 && keep_r >= 0, "drop_trailing: nothing left to keep");
  // The dropped blocks must own exactly the dropped states.
  const double leak = uv.V.bottomLeftCorner(r - keep_r, keep_v).cwiseAbs().sum() +
                      uv.V.topRightCorner(keep_r, v - keep_v).cwiseAbs().sum();
  detail::require(leak == 0.0, "drop_trailing: trailing blocks do not match trailing states");
  return {uv.U.topLeftCorner(keep_v, keep_r), uv.V.topLeftCorner(keep_r, keep_v)};
}

LumpReport check_lumpable(const Matrix& m, const Partition& p, MatrixKind, double tol) {
  detail::require(m.rows() == m.cols(), "check_lumpable: matrix must be square");
  detail::require(tol >= 0.0, "check_lumpable: tolerance must be non-negative");
  const auto uv = uv_matrices(p, static_cast<std::size_t>(m.rows()));
  const Matrix mv = m * uv.V;
  LumpReport report;
  report.max_violation = linalg::inf_norm(uv.V * (uv.U * mv) - mv);
  report.lumpable = report.max_violation <= tol;
  if (report.lumpable) report.lumped = uv.U * mv;
  return report;
}

Matrix lump(const Matrix& m, const Partition& p, MatrixKind kind) {
  detail::require(m.rows() == m.cols(), "lump: matrix must be square");
  const double expected_row_sum = kind == MatrixKind::Generator ? 0.0 : 1.0;
  const double scale = 1.0 + linalg::inf_norm(m);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    detail::require(std::abs(m.row(i).sum() - expected_row_sum) <= 1e-9 * scale,
                    kind == MatrixKind::Generator ? "lump: rows of a generator must sum to 0"
                                                  : "lump: rows of a stochastic matrix must sum to 1");
  auto report = check_lumpable(m, p, kind);
  if (!report.lumpable)
    throw NotLumpable("matrix is not lumpable with respect to the partition", report.max_violation);
  return std::move(*report.lumped);
}

Partition parity_partition(const StateSpace& space) {
  Partition p;
  for (int m = space.sample_size(); m >= 1; --m) {
    p.blocks.push_back(space.parity_class(m, Parity::Even));
    p.labels.push_back("E" + std::to_string(m));
    p.blocks.push_back(space.parity_class(m, Parity::Odd));
    p.labels.push_back("O" + std::to_string(m));
  }
  return p;
}

Eigen::Matrix2d parity_block_power(double x, unsigned k) {
  detail::require_color_parameter(x);
  const double decay = std::pow(1.0 - 2.0 * x, static_cast<double>(k));
  const double same = 0.5 + 0.5 * decay, cross = 0.5 - 0.5 * decay;
  Eigen::Matrix2d c;
  c << same, cross, cross, same;
  return c;
}

}  // namespace colorcoal
