#pragma once

#include <Eigen/Dense>

namespace colorcoal {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace linalg {

/// Largest absolute row sum.
double inf_norm(const Matrix& a);

/// Throws InvalidArgument if any entry is NaN or infinite.
void require_finite(const Matrix& a, const char* what);

/// True when `a` is a (sub-)generator: non-negative off-diagonal entries and
/// row sums <= tol. Such matrices are exponentiated by uniformization.
bool is_subgenerator(const Matrix& a, double tol = 1e-12);

/// e^{tA}. Sub-generators go through uniformization with scaling and
/// squaring, which keeps every intermediate matrix non-negative; any other
/// square matrix falls back to Pade scaling and squaring.
Matrix mat_exp(const Matrix& a, double t);

/// Solves AX = B with partial-pivoting LU. Throws SingularMatrix when the
/// reciprocal condition estimate is below 1e-12.
Matrix solve_linear(const Matrix& a, const Matrix& b);

/// Repeated squaring.
Matrix mat_pow(const Matrix& a, unsigned k);

}  // namespace linalg
}  // namespace colorcoal
