#include "colorcoal/generator.hpp"

#include <cmath>

#include "colorcoal/error.hpp"

namespace colorcoal {

double choose(long n, long m) noexcept {
  if (m < 0 || n < m) return 0.0;
  if (m > n - m) m = n - m;
  double c = 1.0;
  for (long i = 1; i <= m; ++i) c = c * static_cast<double>(n - m + i) / static_cast<double>(i);
  return c;
}

std::array<Transition, 4> outgoing_transitions(ColorState from, double x) {
  const long k = from.black, l = from.white;
  const double xbar = 1.0 - x;
  const double kl = static_cast<double>(k * l);
  return {{
      {{from.black - 2, from.white + 1}, xbar * choose(k, 2)},
      {{from.black - 1, from.white}, x * choose(k, 2) + x * kl},
      {{from.black, from.white - 1}, xbar * choose(l, 2) + xbar * kl},
      {{from.black + 1, from.white - 2}, x * choose(l, 2)},
  }};
}

Generator build_generator(int n, double x) {
  detail::require(n >= 2, "build_generator: n must be at least 2");
  detail::require_color_parameter(x);
  StateSpace space(n);
  Matrix q = Matrix::Zero(space.size(), space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const ColorState s = space[i];
    if (s.level() < 2) continue;
    for (const auto& tr : outgoing_transitions(s, x))
      if (tr.rate > 0.0) q(i, space.index_of(tr.target)) += tr.rate;
    q(i, i) = -pair_rate(s.level());
  }
  return {std::move(space), x, std::move(q)};
}

Matrix embedded_jump_chain(const Matrix& q) {
  detail::require(q.rows() == q.cols(), "embedded_jump_chain: matrix must be square");
  Matrix j = Matrix::Zero(q.rows(), q.cols());
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    const double exit = -q(i, i);
    if (exit <= 0.0) {
      j(i, i) = 1.0;
      continue;
    }
    for (Eigen::Index c = 0; c < q.cols(); ++c)
      if (c != i) j(i, c) = q(i, c) / exit;
  }
  return j;
}

JumpChain jump_chain(const Generator& g) { return {g.space, embedded_jump_chain(g.rates)}; }

Matrix level_step(int j, double x) {
  detail::require(j >= 2, "level_step: level must be at least 2");
  detail::require_color_parameter(x);
  const double rj = pair_rate(j);
  Matrix block = Matrix::Zero(j + 1, j);
  for (int k = 0; k <= j; ++k)
    for (const auto& tr : outgoing_transitions({k, j - k}, x))
      if (tr.rate > 0.0) block(k, tr.target.black) += tr.rate / rj;
  return block;
}

Matrix c_matrix(int n, int m, double x) {
  detail::require(n >= 2, "c_matrix: n must be at least 2");
  detail::require(m >= 2 && m <= n + 1, "c_matrix: target level m must satisfy 2 <= m <= n+1");
  detail::require_color_parameter(x);
  Matrix product = Matrix::Identity(n + 1, n + 1);
  for (int j = n; j >= m; --j) product = product * level_step(j, x);
  return product;
}

Vector k_step_distribution(int n1, int n2, int k, double x) {
  detail::require(n1 >= 0 && n2 >= 0, "k_step_distribution: counts must be non-negative");
  const int n = n1 + n2;
  detail::require(n >= 2, "k_step_distribution: n1 + n2 must be at least 2");
  detail::require(k >= 1 && k <= n - 1, "k_step_distribution: k must satisfy 1 <= k <= n-1");
  return c_matrix(n, n - k + 1, x).row(n1).transpose();
}

Matrix absorption_probabilities_exact(int n, double x) { return c_matrix(n, 2, x); }

Matrix fundamental_matrix(const JumpChain& jc) {
  const auto r = static_cast<Eigen::Index>(jc.space.size());
  const auto t = static_cast<Eigen::Index>(jc.space.transient_count());
  detail::require(jc.transitions.rows() == r && jc.transitions.cols() == r,
                  "fundamental_matrix: chain does not match its state space");
  for (Eigen::Index a = t; a < r; ++a)
    detail::require(jc.transitions(a, a) == 1.0, "fundamental_matrix: level-1 states must be absorbing");
  const Matrix i_minus = Matrix::Identity(t, t) - jc.transitions.topLeftCorner(t, t);
  return linalg::solve_linear(i_minus, Matrix::Identity(t, t));
}

Vector expected_absorption_times(const JumpChain& jc) {
  const Matrix visits = fundamental_matrix(jc);
  Vector holding(visits.cols());
  for (Eigen::Index j = 0; j < holding.size(); ++j)
    holding(j) = 1.0 / pair_rate(jc.space[static_cast<std::size_t>(j)].level());
  return visits * holding;
}

Matrix conditional_generator(int n, double x, Parity target) {
  Generator g = build_generator(n, x);
  const std::size_t other = g.space.index_of(target == Parity::Even ? ColorState{1, 0} : ColorState{0, 1});
  Matrix q = std::move(g.rates);
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    const double deleted = q(i, static_cast<Eigen::Index>(other));
    if (deleted > 0.0) {
      q(i, i) += deleted;
      q(i, static_cast<Eigen::Index>(other)) = 0.0;
    }
  }
  return q;
}

Vector phase_type_means(const Matrix& q, std::size_t transient) {
  const auto t = static_cast<Eigen::Index>(transient);
  detail::require(q.rows() == q.cols() && t <= q.rows(), "phase_type_means: bad dimensions");
  const Matrix minus_s = -q.topLeftCorner(t, t);
  return linalg::solve_linear(minus_s, Matrix::Ones(t, 1)).col(0);
}

Matrix survival_on_grid(const Matrix& q, std::size_t target, double start, double step,
                        std::size_t count) {
  detail::require(q.rows() == q.cols(), "survival_on_grid: matrix must be square");
  detail::require(static_cast<Eigen::Index>(target) < q.rows(), "survival_on_grid: target out of range");
  detail::require(start >= 0.0 && step > 0.0, "survival_on_grid: need start >= 0 and step > 0");
  const Matrix step_matrix = linalg::mat_exp(q, step);
  Vector absorbed = linalg::mat_exp(q, start).col(static_cast<Eigen::Index>(target));
  Matrix out(static_cast<Eigen::Index>(count), q.rows());
  for (std::size_t i = 0; i < count; ++i) {
    out.row(static_cast<Eigen::Index>(i)) = (1.0 - absorbed.array()).transpose();
    absorbed = step_matrix * absorbed;
  }
  return out;
}

Vector conditional_mean_times(int n, double x, Parity target) {
  const Matrix q = conditional_generator(n, x, target);
  return phase_type_means(q, StateSpace(n).transient_count()).head(n + 1);
}

Matrix conditional_survival(int n, double x, Parity target, double start, double step,
                            std::size_t count) {
  const Matrix q = conditional_generator(n, x, target);
  const std::size_t root = StateSpace(n).index_of(target == Parity::Even ? ColorState{0, 1} : ColorState{1, 0});
  return survival_on_grid(q, root, start, step, count).leftCols(n + 1);
}

}  // namespace colorcoal
