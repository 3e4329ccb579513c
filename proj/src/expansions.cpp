#include "thmm/expansions.hpp"

#include <algorithm>

#include "thmm/blockkit.hpp"
#include "thmm/numerics.hpp"

namespace thmm {

std::string to_string(Center c) { return c == Center::Zero ? "0" : "a"; }

namespace {

Matrix power(const Matrix& x, int k) {
  Matrix out = identity(x.rows());
  for (int i = 0; i < k; ++i) out = out * x;
  return out;
}

Matrix inverse_adjoint(const Matrix& x) { return solve(x.adjoint(), identity(x.rows())); }

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// k-th derivative of z -> X(conj z)^* at the real point a; zero for k < 0.
Matrix adjoint_derivative(const MatrixPolynomial& x, int k, double a) {
  if (k < 0) return Matrix::Zero(x.cols(), x.rows());
  return x.adjoint().derivative(k)(a);
}

}  // namespace

SeriesCoefficients series_even_at_zero(const EvenResolvent& res) {
  const MomentSequence& seq = res.sequence();
  const int n = res.n();
  const int q = res.q();
  const double a = seq.a();
  const double b = seq.b();
  const Matrix id = identity(q);
  const Matrix o = zeros(q, q);
  const Matrix idn = identity(static_cast<Eigen::Index>(n + 1) * q);

  const BlockMatrix h1 = hankel_block(seq, n);
  const BlockMatrix ht = hankel_block(seq, n, 1);
  const BlockMatrix h3 = hankel(seq, 3, n).H;
  const BlockMatrix h4 = hankel(seq, 4, n).H;
  const BlockVector u = u_vectors(seq, n).u;
  const BlockVector v = make_v(n, q);
  const BlockMatrix ts = make_shift(n, q).adjoint();
  const BlockVector k = solve_hermitian(h4, ht * solve_hermitian(h3, v));
  const BlockVector htu = solve(ht, u);
  const BlockMatrix w = idn - (a + b) * ts + a * b * ts * ts;

  SeriesCoefficients s;
  s.center = Center::Zero;
  s.parity = Parity::Even;
  s.n = n;
  s.coeffs.assign(static_cast<std::size_t>(n + 3), Matrix());
  s.source.assign(static_cast<std::size_t>(n + 3), CoefficientSource::ClosedForm);

  s.coeffs[0] = block2x2(
      id, a * b * v.adjoint() * k, u.adjoint() * htu,
      id + a * b * u.adjoint() * (ts * k - solve_hermitian(h4, h1 * solve_hermitian(h3, v))));
  s.coeffs[1] = block2x2(v.adjoint() * htu, v.adjoint() * (a * b * ts - (a + b) * idn) * k,
                         u.adjoint() * ts * htu, u.adjoint() * w * k);
  for (int j = 2; j <= n - 1; ++j) {
    s.coeffs[j] = block2x2(v.adjoint() * power(ts, j - 1) * htu,
                           v.adjoint() * power(ts, j - 2) * w * k,
                           u.adjoint() * power(ts, j) * htu,
                           u.adjoint() * power(ts, j - 1) * w * k);
  }
  if (n >= 2) {
    // No closed form is displayed for this index; read it off the
    // assembled polynomial.
    s.coeffs[n] = res.V().coeff(n);
    s.source[n] = CoefficientSource::Extracted;
  }
  if (n >= 1) {
    s.coeffs[n + 1] = block2x2(v.adjoint() * power(ts, n) * htu,
                               v.adjoint() * power(ts, n - 1) * (idn - (a + b) * ts) * k, o,
                               u.adjoint() * power(ts, n) * k);
  }
  s.coeffs[n + 2] = block2x2(o, v.adjoint() * power(ts, n) * k, o, o);
  return s;
}

SeriesCoefficients series_odd_at_zero(const OddResolvent& res) {
  const MomentSequence& seq = res.sequence();
  const int n = res.n();
  const int q = res.q();
  const OddCoupling& c = res.coupling();
  const Matrix cd = c.C1 * c.D1;
  const Eigen::Index len = static_cast<Eigen::Index>(n + 1) * q;

  const BlockMatrix h1 = hankel_block(seq, n);
  const BlockVector u1 = u_vectors(seq, n).u1;
  const BlockVector v = make_v(n, q);
  const BlockMatrix ts = make_shift(n, q).adjoint();
  const Matrix idl = identity(len);

  Matrix mid(2 * len, 2 * len);
  mid << idl, -idl, idl, -idl;
  Matrix right = zeros(2 * len, 2 * q);
  right.topLeftCorner(len, q) = solve_hermitian(h1, u1);
  right.bottomRightCorner(len, q) = solve_hermitian(h1, v);

  SeriesCoefficients s;
  s.center = Center::Zero;
  s.parity = Parity::Odd;
  s.n = n;
  s.coeffs.push_back(cd);
  for (int j = 1; j <= n + 1; ++j) {
    const Matrix x = power(ts, j - 1);
    Matrix left = zeros(2 * q, 2 * len);
    left.topLeftCorner(q, len) = v.adjoint() * x;
    left.bottomRightCorner(q, len) = u1.adjoint() * x;
    s.coeffs.push_back(left * mid * right * cd);
  }
  s.source.assign(s.coeffs.size(), CoefficientSource::ClosedForm);
  return s;
}

SeriesCoefficients series_even_at_a(const EvenResolvent& res) {
  const MomentSequence& seq = res.sequence();
  const int n = res.n();
  const int q = res.q();
  const double a = seq.a();
  const double b = seq.b();
  const Matrix id = identity(q);
  const Matrix o = zeros(q, q);
  const Matrix q2a = inverse_adjoint(res.Q2()(a));
  const Matrix p1a = inverse_adjoint(res.P1()(a));
  auto Q2d = [&](int k) { return adjoint_derivative(res.Q2(), k, a); };
  auto Q1d = [&](int k) { return adjoint_derivative(res.Q1(), k, a); };
  auto P1d = [&](int k) { return adjoint_derivative(res.P1(), k, a); };
  auto P2d = [&](int k) { return adjoint_derivative(res.P2(), k, a); };

  SeriesCoefficients s;
  s.center = Center::A;
  s.parity = Parity::Even;
  s.n = n;
  s.coeffs.push_back(block2x2(id, -Q1d(0) * p1a, o, id));
  // The general display is used up to j = n+1; at j = n+1 it keeps the
  // upper left block -s_0 Q_{2,n}^{*-1}(a) coming from the leading term of
  // Q_{2,n}, which has degree n+1.
  for (int j = 1; j <= n + 1; ++j) {
    s.coeffs.push_back((1.0 / factorial(j)) *
                       block2x2(Q2d(j) * q2a, -Q1d(j) * p1a,
                                double(j) * ((j - 1) * P2d(j - 2) - (b - a) * P2d(j - 1)) * q2a,
                                P1d(j) * p1a));
  }
  s.coeffs.push_back((1.0 / factorial(n)) * block2x2(o, o, P2d(n) * q2a, o));
  s.source.assign(s.coeffs.size(), CoefficientSource::ClosedForm);
  return s;
}

SeriesCoefficients series_odd_at_a(const OddResolvent& res) {
  const MomentSequence& seq = res.sequence();
  const int n = res.n();
  const int q = res.q();
  const double a = seq.a();
  const double b = seq.b();
  const double width = b - a;
  const Matrix id = identity(q);
  const Matrix o = zeros(q, q);
  const Matrix q4a = inverse_adjoint(res.Q4()(a));
  const Matrix p3a = inverse_adjoint(res.P3()(a));
  auto Q4d = [&](int k) { return adjoint_derivative(res.Q4(), k, a); };
  auto Q3d = [&](int k) { return adjoint_derivative(res.Q3(), k, a); };
  auto P4d = [&](int k) { return adjoint_derivative(res.P4(), k, a); };
  auto P3d = [&](int k) { return adjoint_derivative(res.P3(), k, a); };

  SeriesCoefficients s;
  s.center = Center::A;
  s.parity = Parity::Odd;
  s.n = n;
  s.coeffs.push_back(block2x2(id, Q3d(0) * p3a / width, o, id));
  for (int j = 1; j <= n; ++j) {
    s.coeffs.push_back((1.0 / factorial(j)) *
                       block2x2(Q4d(j) * q4a, Q3d(j) * p3a / width, double(j) * P4d(j - 1) * q4a,
                                (P3d(j) - (j / width) * P3d(j - 1)) * p3a));
  }
  s.coeffs.push_back((1.0 / factorial(n)) *
                     block2x2(o, o, P4d(n) * q4a, -P3d(n) * p3a / width));
  s.source.assign(s.coeffs.size(), CoefficientSource::ClosedForm);
  return s;
}

std::vector<Matrix> extract_coefficients(const MatrixPolynomial& p, int count) {
  std::vector<Matrix> out;
  for (int j = 0; j < count; ++j) out.push_back(p.coeff(j));
  return out;
}

std::vector<Matrix> extract_recentered(const MatrixPolynomial& p, cplx c, int count) {
  std::vector<Matrix> all = p.recentered(c);
  std::vector<Matrix> out;
  for (int j = 0; j < count; ++j) {
    out.push_back(j < static_cast<int>(all.size()) ? all[j] : Matrix::Zero(p.rows(), p.cols()));
  }
  return out;
}

double ExpansionComparison::max_diff() const {
  return diff.empty() ? 0.0 : *std::max_element(diff.begin(), diff.end());
}

ExpansionComparison compare_expansion(const MomentSequence& seq, Center center) {
  ExpansionComparison out;
  if (parity_of(seq.order()) == Parity::Even) {
    const EvenResolvent res(seq);
    if (center == Center::Zero) {
      out.series = series_even_at_zero(res);
      out.extracted = extract_coefficients(res.V(), static_cast<int>(out.series.coeffs.size()));
    } else {
      out.series = series_even_at_a(res);
      out.extracted = extract_recentered(res.U(), seq.a(), static_cast<int>(out.series.coeffs.size()));
    }
  } else {
    const OddResolvent res(seq);
    if (center == Center::Zero) {
      out.series = series_odd_at_zero(res);
      out.extracted = extract_coefficients(res.V(), static_cast<int>(out.series.coeffs.size()));
    } else {
      out.series = series_odd_at_a(res);
      out.extracted = extract_recentered(res.U(), seq.a(), static_cast<int>(out.series.coeffs.size()));
    }
  }
  for (std::size_t j = 0; j < out.series.coeffs.size(); ++j) {
    out.diff.push_back(residual(out.series.coeffs[j], out.extracted[j]));
  }
  return out;
}

}  // namespace thmm
