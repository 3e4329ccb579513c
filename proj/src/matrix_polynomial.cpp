#include "thmm/matrix_polynomial.hpp"

#include <algorithm>

namespace thmm {

MatrixPolynomial::MatrixPolynomial(Eigen::Index rows, Eigen::Index cols)
    : rows_(rows), cols_(cols) {}

MatrixPolynomial::MatrixPolynomial(std::vector<Matrix> coeffs)
    : rows_(0), cols_(0), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("MatrixPolynomial needs at least one coefficient to fix its shape");
  rows_ = coeffs_.front().rows();
  cols_ = coeffs_.front().cols();
  for (const auto& c : coeffs_) {
    if (c.rows() != rows_ || c.cols() != cols_) {
      throw InvalidArgument("MatrixPolynomial coefficients differ in shape");
    }
  }
  trim();
}

MatrixPolynomial MatrixPolynomial::constant(const Matrix& c) {
  return MatrixPolynomial(std::vector<Matrix>{c});
}

MatrixPolynomial MatrixPolynomial::monomial(const Matrix& c, int k) {
  if (k < 0) throw InvalidArgument("negative monomial power");
  std::vector<Matrix> coeffs(static_cast<std::size_t>(k) + 1, Matrix::Zero(c.rows(), c.cols()));
  coeffs.back() = c;
  return MatrixPolynomial(std::move(coeffs));
}

MatrixPolynomial MatrixPolynomial::scalar(const std::vector<cplx>& c, Eigen::Index n) {
  if (c.empty()) return MatrixPolynomial(n, n);
  std::vector<Matrix> coeffs;
  coeffs.reserve(c.size());
  for (cplx x : c) coeffs.push_back(x * Matrix::Identity(n, n));
  return MatrixPolynomial(std::move(coeffs));
}

void MatrixPolynomial::trim() {
  while (!coeffs_.empty() && (coeffs_.back().array() == cplx(0.0)).all()) coeffs_.pop_back();
}

int MatrixPolynomial::numerical_degree(double tol) const {
  double scale = 0.0;
  for (const auto& c : coeffs_) scale = std::max(scale, c.cwiseAbs().maxCoeff());
  for (int k = degree(); k >= 0; --k) {
    if (coeffs_[k].cwiseAbs().maxCoeff() > tol * scale) return k;
  }
  return -1;
}

Matrix MatrixPolynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return Matrix::Zero(rows_, cols_);
  return coeffs_[static_cast<std::size_t>(k)];
}

Matrix MatrixPolynomial::operator()(cplx z) const {
  Matrix acc = Matrix::Zero(rows_, cols_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = z * acc + *it;
  return acc;
}

MatrixPolynomial MatrixPolynomial::derivative(int order) const {
  if (order < 0) throw InvalidArgument("negative derivative order");
  MatrixPolynomial d = *this;
  for (int o = 0; o < order; ++o) {
    if (d.coeffs_.empty()) break;
    std::vector<Matrix> next;
    for (std::size_t k = 1; k < d.coeffs_.size(); ++k) {
      next.push_back(static_cast<double>(k) * d.coeffs_[k]);
    }
    d.coeffs_ = std::move(next);
    d.trim();
  }
  return d;
}

MatrixPolynomial MatrixPolynomial::adjoint() const {
  MatrixPolynomial out(cols_, rows_);
  for (const auto& c : coeffs_) out.coeffs_.push_back(c.adjoint());
  return out;
}

std::vector<Matrix> MatrixPolynomial::recentered(cplx c) const {
  std::vector<Matrix> out;
  MatrixPolynomial rest = *this;
  while (rest.degree() >= 0) {
    auto [quotient, remainder] = rest.divide_linear(c);
    out.push_back(remainder);
    rest = std::move(quotient);
  }
  if (out.empty()) out.push_back(Matrix::Zero(rows_, cols_));
  return out;
}

std::pair<MatrixPolynomial, Matrix> MatrixPolynomial::divide_linear(cplx c) const {
  const int deg = degree();
  if (deg < 1) return {MatrixPolynomial(rows_, cols_), deg < 0 ? Matrix::Zero(rows_, cols_) : coeffs_[0]};
  std::vector<Matrix> q(static_cast<std::size_t>(deg));
  Matrix carry = coeffs_[static_cast<std::size_t>(deg)];
  for (int k = deg - 1; k >= 0; --k) {
    q[static_cast<std::size_t>(k)] = carry;
    carry = coeffs_[static_cast<std::size_t>(k)] + c * carry;
  }
  return {MatrixPolynomial(std::move(q)), carry};
}

MatrixPolynomial MatrixPolynomial::block(Eigen::Index r0, Eigen::Index c0, Eigen::Index nr,
                                         Eigen::Index nc) const {
  MatrixPolynomial out(nr, nc);
  for (const auto& c : coeffs_) out.coeffs_.push_back(c.block(r0, c0, nr, nc));
  out.trim();
  return out;
}

MatrixPolynomial& MatrixPolynomial::operator+=(const MatrixPolynomial& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw InvalidArgument("polynomial shape mismatch in +");
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Matrix::Zero(rows_, cols_));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

MatrixPolynomial& MatrixPolynomial::operator-=(const MatrixPolynomial& o) {
  return *this += -o;
}

MatrixPolynomial operator-(const MatrixPolynomial& a) {
  MatrixPolynomial out = a;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

MatrixPolynomial operator*(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("polynomial shape mismatch in *");
  MatrixPolynomial out(a.rows_, b.cols_);
  if (a.coeffs_.empty() || b.coeffs_.empty()) return out;
  out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Matrix::Zero(a.rows_, b.cols_));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  out.trim();
  return out;
}

MatrixPolynomial operator*(const MatrixPolynomial& a, const Matrix& m) {
  if (a.cols_ != m.rows()) throw InvalidArgument("polynomial shape mismatch in * matrix");
  MatrixPolynomial out(a.rows_, m.cols());
  for (const auto& c : a.coeffs_) out.coeffs_.push_back(c * m);
  out.trim();
  return out;
}

MatrixPolynomial operator*(const Matrix& m, const MatrixPolynomial& a) {
  if (m.cols() != a.rows_) throw InvalidArgument("matrix shape mismatch in * polynomial");
  MatrixPolynomial out(m.rows(), a.cols_);
  for (const auto& c : a.coeffs_) out.coeffs_.push_back(m * c);
  out.trim();
  return out;
}

MatrixPolynomial operator*(cplx s, const MatrixPolynomial& a) {
  MatrixPolynomial out = a;
  for (auto& c : out.coeffs_) c *= s;
  out.trim();
  return out;
}

MatrixPolynomial block2x2(const MatrixPolynomial& a, const MatrixPolynomial& b,
                          const MatrixPolynomial& c, const MatrixPolynomial& d) {
  const Eigen::Index r = a.rows() + c.rows();
  const Eigen::Index k = a.cols() + b.cols();
  const int deg = std::max({a.degree(), b.degree(), c.degree(), d.degree()});
  if (deg < 0) return MatrixPolynomial(r, k);
  std::vector<Matrix> coeffs;
  for (int j = 0; j <= deg; ++j) {
    Matrix m(r, k);
    m << a.coeff(j), b.coeff(j), c.coeff(j), d.coeff(j);
    coeffs.push_back(std::move(m));
  }
  return MatrixPolynomial(std::move(coeffs));
}

}  // namespace thmm
