#include "thmm/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "thmm/blockkit.hpp"

namespace thmm {

namespace {

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) throw InvalidArgument(std::string(what) + ": matrix is not square");
}

}  // namespace

double rcond_estimate(const Matrix& a) {
  require_square(a, "rcond_estimate");
  if (a.size() == 0) return 1.0;
  if (!a.allFinite()) return 0.0;
  Eigen::PartialPivLU<Matrix> lu(a);
  return lu.rcond();
}

double condition_estimate(const Matrix& a) {
  const double rc = rcond_estimate(a);
  return rc > 0.0 ? 1.0 / rc : INFINITY;
}

bool is_invertible(const Matrix& a, double limit) {
  return condition_estimate(a) < limit;
}

Matrix solve_hermitian(const Matrix& h, const Matrix& rhs) {
  require_square(h, "solve_hermitian");
  const Matrix hh = hermitize(h);
  Eigen::LLT<Matrix> llt(hh);
  if (llt.info() == Eigen::Success && llt.rcond() > 1.0 / kConditionLimit) {
    return llt.solve(rhs);
  }
  return solve(hh, rhs);
}

Matrix solve(const Matrix& a, const Matrix& rhs) {
  require_square(a, "solve");
  Eigen::PartialPivLU<Matrix> lu(a);
  if (!a.allFinite() || !(lu.rcond() > 1.0 / kConditionLimit)) {
    throw SingularMatrix("matrix is singular to working precision (condition estimate " +
                         std::to_string(a.allFinite() ? 1.0 / lu.rcond() : INFINITY) + ")");
  }
  return lu.solve(rhs);
}

Matrix inverse(const Matrix& a) { return solve(a, Matrix::Identity(a.rows(), a.cols())); }

Matrix times_inverse_adjoint(const Matrix& x, const Matrix& a) {
  return solve(a, x.adjoint()).adjoint();
}

Matrix times_inverse(const Matrix& x, const Matrix& a) {
  return solve(a.adjoint(), x.adjoint()).adjoint();
}

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(hermitian), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(hermitian), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double spectral_norm_hermitian(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(hermitian), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double residual(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    throw InvalidArgument("residual: shape mismatch");
  }
  const double scale = 1.0 + std::max(lhs.norm(), rhs.norm());
  return (lhs - rhs).norm() / scale;
}

}  // namespace thmm
