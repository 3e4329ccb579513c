#pragma once

// Fixtures and independent oracles shared by the unit tests and the
// acceptance binary. The oracles work from the atoms of a discrete measure
// and never call the library routines they are used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "thmm/matrix_polynomial.hpp"
#include "thmm/moments.hpp"

namespace thmm::test {

inline Matrix scalar(cplx x) {
  Matrix m(1, 1);
  m(0, 0) = x;
  return m;
}

// Column vector with scalar blocks.
inline Matrix column(const std::vector<double>& xs) {
  Matrix m(static_cast<Eigen::Index>(xs.size()), 1);
  for (std::size_t k = 0; k < xs.size(); ++k) m(static_cast<Eigen::Index>(k), 0) = xs[k];
  return m;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double rel_diff(const Matrix& x, const Matrix& y) {
  return (x - y).norm() / (1.0 + std::max(x.norm(), y.norm()));
}

// Two unit atoms at 1/4 and 3/4 on [0, 1].
inline DiscreteMatrixMeasure two_atom_measure() {
  DiscreteMatrixMeasure mu;
  mu.interval = Interval(0.0, 1.0);
  mu.q = 1;
  mu.atoms = {{0.25, scalar(1.0)}, {0.75, scalar(1.0)}};
  return mu;
}

inline MomentSequence two_atom(int m) { return moments_from_measure(two_atom_measure(), m); }

// One unit atom at 1/2 on [0, 1].
inline DiscreteMatrixMeasure single_atom_measure() {
  DiscreteMatrixMeasure mu;
  mu.interval = Interval(0.0, 1.0);
  mu.q = 1;
  mu.atoms = {{0.5, scalar(1.0)}};
  return mu;
}

// Density of sigma_r with respect to sigma.
inline double rho(int r, double t, const Interval& iv) {
  switch (r) {
    case 2: return (t - iv.a) * (iv.b - t);
    case 3: return iv.b - t;
    case 4: return t - iv.a;
    default: return 1.0;
  }
}

// s^(r)_j by direct summation over the atoms.
inline MatrixQ atom_moment(const DiscreteMatrixMeasure& mu, int r, int j) {
  MatrixQ s = MatrixQ::Zero(mu.q, mu.q);
  for (const Atom& at : mu.atoms) s += rho(r, at.t, mu.interval) * std::pow(at.t, j) * at.weight;
  return s;
}

// <P, Q>_{sigma_r} = sum_k rho_r(t_k) P(t_k) W_k Q(t_k)^*.
inline MatrixQ atom_inner(const DiscreteMatrixMeasure& mu, int r, const MatrixPolynomial& p,
                          const MatrixPolynomial& q) {
  MatrixQ s = MatrixQ::Zero(p.rows(), q.rows());
  for (const Atom& at : mu.atoms) {
    s += rho(r, at.t, mu.interval) * p(at.t) * at.weight * q(at.t).adjoint();
  }
  return s;
}

// int dsigma_r(t) / (t - z).
inline MatrixQ atom_stieltjes(const DiscreteMatrixMeasure& mu, int r, cplx z) {
  MatrixQ s = MatrixQ::Zero(mu.q, mu.q);
  for (const Atom& at : mu.atoms) s += (rho(r, at.t, mu.interval) / (at.t - z)) * at.weight;
  return s;
}

// Monic orthogonal polynomials of sigma_r by block Gram-Schmidt on the
// monomials z^k I, with inner products summed over the atoms.
inline std::vector<MatrixPolynomial> atom_first_kind(const DiscreteMatrixMeasure& mu, int r,
                                                     int j_max) {
  const int q = mu.q;
  std::vector<MatrixPolynomial> ps;
  for (int j = 0; j <= j_max; ++j) {
    const MatrixPolynomial zj = MatrixPolynomial::monomial(Matrix::Identity(q, q), j);
    MatrixPolynomial p = zj;
    for (const MatrixPolynomial& pl : ps) {
      const MatrixQ g = atom_inner(mu, r, pl, pl);
      const MatrixQ c = atom_inner(mu, r, zj, pl) * g.inverse();
      p -= c * pl;
    }
    ps.push_back(p);
  }
  return ps;
}

// Second kind polynomial from the divided difference
// sign_r int (rho_r(t) P(t) - rho_r(z) P(z)) / (t - z) dsigma(t),
// sign_r = +1 for r = 1, 2 and -1 for r = 3, 4.
inline MatrixQ atom_second_kind(const DiscreteMatrixMeasure& mu, int r, const MatrixPolynomial& p,
                                cplx z) {
  const double sign = r <= 2 ? 1.0 : -1.0;
  const Interval& iv = mu.interval;
  cplx rz = 1.0;
  if (r == 2) rz = (z - iv.a) * (iv.b - z);
  if (r == 3) rz = iv.b - z;
  if (r == 4) rz = z - iv.a;
  const Matrix pz = p(z);
  MatrixQ s = MatrixQ::Zero(mu.q, mu.q);
  for (const Atom& at : mu.atoms) {
    s += (rho(r, at.t, iv) * p(at.t) - rz * pz) * at.weight / (at.t - z);
  }
  return sign * s;
}

// Dense (I - z T)^{-1} for a block shift of j+1 blocks of size q.
inline Matrix dense_shift_inverse(int j, int q, cplx z) {
  const Eigen::Index n = static_cast<Eigen::Index>(j + 1) * q;
  Matrix a = Matrix::Identity(n, n);
  for (Eigen::Index k = q; k < n; ++k) a(k, k - q) = -z;
  return a.lu().solve(Matrix::Identity(n, n));
}

// Points off [a, b] in the upper half plane.
inline std::vector<cplx> upper_points(const Interval& iv, int count) {
  std::vector<cplx> zs;
  for (int k = 0; k < count; ++k) {
    const double x = iv.a - 1.0 + (iv.b - iv.a + 2.0) * k / std::max(1, count - 1);
    zs.emplace_back(x, 0.3 + 0.2 * k);
  }
  return zs;
}

}  // namespace thmm::test
