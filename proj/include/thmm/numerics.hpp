#pragma once

#include "thmm/types.hpp"

namespace thmm {

// Matrices whose 1-norm condition estimate reaches this are treated as
// singular.
inline constexpr double kConditionLimit = 1e12;

// Reciprocal 1-norm condition estimate from a partial-pivot LU.
double rcond_estimate(const Matrix& a);
double condition_estimate(const Matrix& a);
bool is_invertible(const Matrix& a, double limit = kConditionLimit);

// Solves H X = B for hermitian H: Cholesky on the hermitized matrix,
// falling back to LU when H is not numerically positive definite.
// Throws SingularMatrix when the condition estimate exceeds the limit.
Matrix solve_hermitian(const Matrix& h, const Matrix& rhs);

// Solves A X = B with partial-pivot LU and a condition check.
Matrix solve(const Matrix& a, const Matrix& rhs);

// A^{-1}, via solve(A, I).
Matrix inverse(const Matrix& a);

// X (A^*)^{-1}, computed as (A^{-1} X^*)^* without forming an inverse.
Matrix times_inverse_adjoint(const Matrix& x, const Matrix& a);

// X A^{-1}.
Matrix times_inverse(const Matrix& x, const Matrix& a);

double min_eigenvalue(const Matrix& hermitian);
double max_eigenvalue(const Matrix& hermitian);
double spectral_norm_hermitian(const Matrix& hermitian);

// ||lhs - rhs||_F / (1 + max(||lhs||_F, ||rhs||_F)).
double residual(const Matrix& lhs, const Matrix& rhs);

}  // namespace thmm
