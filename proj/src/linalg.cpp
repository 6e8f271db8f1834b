#include "colorcoal/linalg.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "colorcoal/error.hpp"

namespace colorcoal::linalg {

namespace {

// Per-factor Poisson tail; squaring amplifies it by at most 2^s, which stays
// under 1e-13 for every t and rate used here.
constexpr double kTailBound = 1e-17;

// e^{hA} for a sub-generator with uniformization rate lambda, lambda*h <= 1.
Matrix uniformized_exp(const Matrix& a, double lambda, double h) {
  const auto n = a.rows();
  const Matrix k = Matrix::Identity(n, n) + a / lambda;
  const double mu = lambda * h;
  double weight = std::exp(-mu);
  Matrix power = Matrix::Identity(n, n);
  Matrix out = weight * power;
  // Poisson(mu) tail beyond term j is below weight_j * mu / (j + 1 - mu)
  // once j + 1 > mu; stop when that bound drops under the truncation level.
  for (int j = 1; j < 200; ++j) {
    power = power * k;
    weight *= mu / j;
    out.noalias() += weight * power;
    if (j + 1 > mu && weight * mu / (j + 1 - mu) < kTailBound) break;
  }
  return out;
}

}  // namespace

double inf_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite entry");
}

bool is_subgenerator(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j && a(i, j) < 0.0) return false;
      sum += a(i, j);
    }
    if (sum > tol * (1.0 + std::abs(a(i, i)))) return false;
  }
  return true;
}

Matrix mat_exp(const Matrix& a, double t) {
  if (a.rows() != a.cols()) throw InvalidArgument("mat_exp: matrix must be square");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("mat_exp: t must be finite and >= 0");
  require_finite(a, "mat_exp");
  const auto n = a.rows();
  if (t == 0.0 || n == 0) return Matrix::Identity(n, n);

  if (!is_subgenerator(a)) return Matrix((a * t).exp());

  const double lambda = (-a.diagonal()).maxCoeff();
  if (lambda <= 0.0) return Matrix::Identity(n, n);

  int squarings = 0;
  double h = t;
  while (lambda * h > 1.0) {
    h *= 0.5;
    ++squarings;
  }
  Matrix p = uniformized_exp(a, lambda, h);
  for (int s = 0; s < squarings; ++s) p = p * p;
  return p;
}

Matrix solve_linear(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols()) throw InvalidArgument("solve_linear: matrix must be square");
  if (b.rows() != a.rows()) throw InvalidArgument("solve_linear: dimension mismatch");
  require_finite(a, "solve_linear");
  require_finite(b, "solve_linear");
  if (a.rows() == 0) return b;
  Eigen::PartialPivLU<Matrix> lu(a);
  if (!(lu.rcond() >= 1e-12)) throw SingularMatrix("solve_linear: matrix is singular or ill-conditioned");
  return lu.solve(b);
}

Matrix mat_pow(const Matrix& a, unsigned k) {
  if (a.rows() != a.cols()) throw InvalidArgument("mat_pow: matrix must be square");
  Matrix result = Matrix::Identity(a.rows(), a.cols());
  Matrix base = a;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

}  // namespace colorcoal::linalg
