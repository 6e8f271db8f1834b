#include "doctest.h"

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "colorcoal/error.hpp"
#include "colorcoal/generator.hpp"
#include "colorcoal/linalg.hpp"

using namespace colorcoal;
using linalg::inf_norm;

namespace {

Matrix random_generator(std::mt19937_64& rng, int size, double scale) {
  std::uniform_real_distribution<double> u(0.0, scale);
  Matrix q = Matrix::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j)
      if (i != j && u(rng) < 0.6 * scale) q(i, j) = u(rng);
    q(i, i) = -q.row(i).sum();
  }
  return q;
}

}  // namespace

TEST_CASE("mat_exp of the zero matrix is the identity") {
  for (double t : {0.0, 0.5, 30.0}) CHECK(inf_norm(linalg::mat_exp(Matrix::Zero(4, 4), t) - Matrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("mat_exp of a 2x2 triangular generator") {
  Matrix a(2, 2);
  a << -1.0, 1.0, 0.0, 0.0;
  Matrix expected(2, 2);
  expected << 0.36787944117144233, 0.6321205588285577, 0.0, 1.0;
  CHECK(inf_norm(linalg::mat_exp(a, 1.0) - expected) <= 1e-15);
}

TEST_CASE("mat_exp of a colored generator is stochastic") {
  const auto g = build_generator(3, 0.3);
  const Matrix p = linalg::mat_exp(g.rates, 0.5);
  CHECK(((p.rowwise().sum().array() - 1.0).abs().maxCoeff()) <= 1e-10);
  CHECK(p.minCoeff() >= 0.0);
}

TEST_CASE("mat_exp at t = 0 is exactly the identity") {
  const auto g = build_generator(6, 0.4);
  CHECK(inf_norm(linalg::mat_exp(g.rates, 0.0) - Matrix::Identity(g.rates.rows(), g.rates.cols())) <= 1e-14);
}

TEST_CASE("uniformization agrees with Pade on generators") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int size = 3 + trial % 9;
    const Matrix q = random_generator(rng, size, 1.0 + trial);
    for (double t : {0.01, 0.3, 2.0}) {
      const Matrix reference = (q * t).exp();
      const Matrix p = linalg::mat_exp(q, t);
      const double rel = ((p - reference).array().abs() / reference.array().abs().max(1e-300)).maxCoeff();
      // Relative error is only meaningful where the reference is not tiny.
      CHECK(inf_norm(p - reference) <= 1e-12);
      if (reference.minCoeff() > 1e-3) CHECK(rel <= 1e-12);
    }
  }
  // Colored generators up to n = 30 (495 states).
  for (int n : {5, 12, 30}) {
    const auto g = build_generator(n, 0.35);
    const Matrix reference = (g.rates * 0.2).exp();
    CHECK(inf_norm(linalg::mat_exp(g.rates, 0.2) - reference) <= 1e-12);
  }
}

TEST_CASE("mat_exp semigroup property") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int n : {3, 6, 9}) {
    const auto g = build_generator(n, 0.2 + 0.05 * n);
    for (int trial = 0; trial < 5; ++trial) {
      const double s = u(rng), t = u(rng);
      const Matrix lhs = linalg::mat_exp(g.rates, s + t);
      const Matrix rhs = linalg::mat_exp(g.rates, s) * linalg::mat_exp(g.rates, t);
      CHECK(inf_norm(lhs - rhs) <= 1e-9);
    }
  }
}

TEST_CASE("mat_exp of a general matrix falls back to Pade") {
  Matrix a(2, 2);
  a << 0.0, 1.0, -1.0, 0.0;  // rotation generator
  const Matrix r = linalg::mat_exp(a, M_PI / 2);
  Matrix expected(2, 2);
  expected << 0.0, 1.0, -1.0, 0.0;
  CHECK(inf_norm(r - expected) <= 1e-14);
}

TEST_CASE("mat_exp argument errors") {
  CHECK_THROWS_AS(linalg::mat_exp(Matrix::Zero(2, 3), 1.0), InvalidArgument);
  CHECK_THROWS_AS(linalg::mat_exp(Matrix::Zero(2, 2), -0.1), InvalidArgument);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(linalg::mat_exp(bad, 1.0), InvalidArgument);
}

TEST_CASE("solve_linear basics") {
  Matrix b(2, 3);
  b << 1, 2, 3, 4, 5, 6;
  CHECK(inf_norm(linalg::solve_linear(Matrix::Identity(2, 2), b) - b) == 0.0);

  Matrix d(2, 2);
  d << 2, 0, 0, 4;
  Matrix expected(2, 2);
  expected << 0.5, 0, 0, 0.25;
  CHECK(inf_norm(linalg::solve_linear(d, Matrix::Identity(2, 2)) - expected) <= 1e-16);
}

TEST_CASE("solve_linear residual on random systems") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int size : {1, 4, 17, 60}) {
    Matrix a(size, size), b(size, 2);
    for (auto& v : a.reshaped()) v = g(rng);
    for (auto& v : b.reshaped()) v = g(rng);
    a += size * Matrix::Identity(size, size);
    const Matrix x = linalg::solve_linear(a, b);
    CHECK(inf_norm(a * x - b) <= 1e-10 * inf_norm(b));
  }
}

TEST_CASE("solve_linear fundamental matrix is non-negative") {
  const auto jc = jump_chain(build_generator(4, 0.5));
  const auto t = static_cast<Eigen::Index>(jc.space.transient_count());
  const Matrix n = linalg::solve_linear(Matrix::Identity(t, t) - jc.transitions.topLeftCorner(t, t),
                                        Matrix::Identity(t, t));
  CHECK(n.minCoeff() >= 0.0);
}

TEST_CASE("solve_linear rejects singular systems") {
  Matrix s(2, 2);
  s << 1, 2, 2, 4;
  CHECK_THROWS_AS(linalg::solve_linear(s, Matrix::Identity(2, 2)), SingularMatrix);
  Matrix near(2, 2);
  near << 1, 1, 1, 1 + 1e-15;
  CHECK_THROWS_AS(linalg::solve_linear(near, Matrix::Identity(2, 2)), SingularMatrix);
  CHECK_THROWS_AS(linalg::solve_linear(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), InvalidArgument);
}

TEST_CASE("mat_pow matches repeated multiplication") {
  const auto jc = jump_chain(build_generator(5, 0.3));
  Matrix naive = Matrix::Identity(jc.transitions.rows(), jc.transitions.cols());
  for (int k = 0; k < 7; ++k) naive = naive * jc.transitions;
  CHECK(inf_norm(linalg::mat_pow(jc.transitions, 7) - naive) <= 1e-14);
}
