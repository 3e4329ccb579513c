#pragma once

#include <utility>
#include <vector>

#include "thmm/types.hpp"

namespace thmm {

// Polynomial with rectangular complex matrix coefficients,
// P(z) = sum_k z^k c_k. Exactly-zero trailing coefficients are trimmed, so
// the zero polynomial has no coefficients and degree -1.
class MatrixPolynomial {
 public:
  MatrixPolynomial(Eigen::Index rows, Eigen::Index cols);
  explicit MatrixPolynomial(std::vector<Matrix> coeffs);

  static MatrixPolynomial constant(const Matrix& c);
  // c z^k
  static MatrixPolynomial monomial(const Matrix& c, int k);
  // Scalar polynomial sum_k z^k c_k times the identity of size n.
  static MatrixPolynomial scalar(const std::vector<cplx>& c, Eigen::Index n);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  // Largest k with ||c_k||_max > tol * max_k ||c_k||_max.
  int numerical_degree(double tol) const;
  const std::vector<Matrix>& coeffs() const { return coeffs_; }
  // Coefficient of z^k; zero beyond the degree.
  Matrix coeff(int k) const;

  // Horner evaluation.
  Matrix operator()(cplx z) const;
  Matrix eval(cplx z) const { return (*this)(z); }

  MatrixPolynomial derivative(int order = 1) const;

  // z -> P(conj z)^*: coefficient-wise adjoint.
  MatrixPolynomial adjoint() const;

  // Coefficients of the same polynomial in powers of (z - c), computed by
  // repeated synthetic division.
  std::vector<Matrix> recentered(cplx c) const;

  // P = (z - c) S + R; returns (S, R).
  std::pair<MatrixPolynomial, Matrix> divide_linear(cplx c) const;

  // Submatrix of every coefficient.
  MatrixPolynomial block(Eigen::Index r0, Eigen::Index c0, Eigen::Index nr,
                         Eigen::Index nc) const;

  MatrixPolynomial& operator+=(const MatrixPolynomial& o);
  MatrixPolynomial& operator-=(const MatrixPolynomial& o);

  friend MatrixPolynomial operator+(MatrixPolynomial a, const MatrixPolynomial& b) {
    return a += b;
  }
  friend MatrixPolynomial operator-(MatrixPolynomial a, const MatrixPolynomial& b) {
    return a -= b;
  }
  friend MatrixPolynomial operator-(const MatrixPolynomial& a);
  friend MatrixPolynomial operator*(const MatrixPolynomial& a, const MatrixPolynomial& b);
  friend MatrixPolynomial operator*(const MatrixPolynomial& a, const Matrix& m);
  friend MatrixPolynomial operator*(const Matrix& m, const MatrixPolynomial& a);
  friend MatrixPolynomial operator*(cplx s, const MatrixPolynomial& a);

 private:
  void trim();

  Eigen::Index rows_;
  Eigen::Index cols_;
  std::vector<Matrix> coeffs_;
};

// Assembles a 2x2 block polynomial from four equally sized blocks.
MatrixPolynomial block2x2(const MatrixPolynomial& a, const MatrixPolynomial& b,
                          const MatrixPolynomial& c, const MatrixPolynomial& d);

}  // namespace thmm
