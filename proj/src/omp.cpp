#include "thmm/omp.hpp"

#include <algorithm>

#include "thmm/blockkit.hpp"
#include "thmm/numerics.hpp"

namespace thmm {

MatrixQ schur_complement(const MomentSequence& seq, int r, int j) {
  const MomentSequence sr = transform_moments(seq, r);
  if (j == 0) return sr[0];
  const BlockVector y = moment_column(sr, j, 2 * j - 1);
  const BlockMatrix h = hankel_block(sr, j - 1);
  return hermitize(sr[2 * j] - y.adjoint() * solve_hermitian(h, y));
}

BlockVector sigma(const MomentSequence& seq, int r, int j) {
  const int q = seq.q();
  if (j == 0) return MatrixQ::Identity(q, q);
  const MomentSequence sr = transform_moments(seq, r);
  const BlockVector y = moment_column(sr, j, 2 * j - 1);
  const BlockMatrix h = hankel_block(sr, j - 1);
  BlockVector out(static_cast<Eigen::Index>(j + 1) * q, q);
  out.topRows(static_cast<Eigen::Index>(j) * q) = -solve_hermitian(h, y);
  out.bottomRows(q).setIdentity();
  return out;
}

MatrixPolynomial resolvent_sandwich(const BlockVector& left, const BlockVector& right, int q) {
  const int blocks = static_cast<int>(left.rows() / q);
  if (left.rows() != right.rows() || left.rows() % q != 0) {
    throw InvalidArgument("resolvent_sandwich: block columns differ");
  }
  // (R_j(z) x)_k = sum_{l <= k} z^{k-l} x_l, so the z^p coefficient is
  // sum_k left_k^* x_{k-p}.
  std::vector<Matrix> coeffs;
  for (int p = 0; p < blocks; ++p) {
    Matrix c = Matrix::Zero(left.cols(), right.cols());
    for (int k = p; k < blocks; ++k) {
      c += left.middleRows(k * q, q).adjoint() * right.middleRows((k - p) * q, q);
    }
    coeffs.push_back(std::move(c));
  }
  return MatrixPolynomial(std::move(coeffs));
}

MatrixPolynomial resolvent_adjoint_sandwich(const BlockVector& left, const BlockVector& right,
                                            int q) {
  const int blocks = static_cast<int>(left.rows() / q);
  if (left.rows() != right.rows() || left.rows() % q != 0) {
    throw InvalidArgument("resolvent_adjoint_sandwich: block columns differ");
  }
  std::vector<Matrix> coeffs;
  for (int p = 0; p < blocks; ++p) {
    Matrix c = Matrix::Zero(left.cols(), right.cols());
    for (int k = 0; k + p < blocks; ++k) {
      c += left.middleRows(k * q, q).adjoint() * right.middleRows((k + p) * q, q);
    }
    coeffs.push_back(std::move(c));
  }
  return MatrixPolynomial(std::move(coeffs));
}

MatrixPolynomial first_kind(const MomentSequence& seq, int r, int j) {
  const int q = seq.q();
  if (j == 0) return MatrixPolynomial::constant(MatrixQ::Identity(q, q));
  return resolvent_sandwich(sigma(seq, r, j), make_v(j, q), q);
}

MatrixPolynomial second_kind(const MomentSequence& seq, int r, int j) {
  const int q = seq.q();
  const BlockVector s = sigma(seq, r, j);
  const UVectors u = u_vectors(seq, j);
  switch (r) {
    case 1:
      return -resolvent_sandwich(s, u.u1, q);
    case 2: {
      if (!u.u2hat) throw InvalidArgument("Q_{2,j} needs s_{j+1}");
      // The z v_j s_0 part of u_{2,j} raises the degree by one.
      MatrixPolynomial constant_part = resolvent_sandwich(s, *u.u2hat, q);
      MatrixPolynomial linear_part =
          MatrixPolynomial::monomial(MatrixQ::Identity(q, q), 1) * resolvent_sandwich(s, u.v_s0, q);
      return -(constant_part + linear_part);
    }
    case 3:
      return resolvent_sandwich(s, u.u3, q);
    case 4:
      return resolvent_sandwich(s, u.u4, q);
    default:
      throw InvalidArgument("family index must be 1..4");
  }
}

MatrixPolynomial tilde_second_kind(const MomentSequence& seq, int n) {
  const int q = seq.q();
  const UVectors u = u_vectors(seq, n);
  BlockVector row(static_cast<Eigen::Index>(n + 1) * q, q);
  if (n >= 1) {
    const BlockVector y = moment_column(seq, n + 1, 2 * n);
    const BlockMatrix ht = hankel_block(seq, n - 1, 1);
    // The adjoint of the row (-(Y^*) Ht^{-1}, I) is (-Ht^{-1} Y; I).
    row.topRows(static_cast<Eigen::Index>(n) * q) = -solve(ht, y);
  }
  row.bottomRows(q).setIdentity();
  return -resolvent_sandwich(row, u.u, q);
}

MatrixQ tilde_schur_complement(const MomentSequence& seq, int n) {
  if (n == 0) return seq[1];
  const BlockVector y = moment_column(seq, n + 1, 2 * n);
  const BlockMatrix ht = hankel_block(seq, n - 1, 1);
  return hermitize(seq[2 * n + 1] - y.adjoint() * solve(ht, y));
}

int max_first_kind_index(const MomentSequence& seq, int r) {
  const int m = seq.order();
  const int mr = r == 1 ? m : (r == 2 ? m - 2 : m - 1);
  // Sigma_{r,j} needs s^(r)_{2j-1}.
  return mr < 0 ? 0 : (mr + 1) / 2;
}

OmpFamily build_family(const MomentSequence& seq, int r, int n_max) {
  const int limit = max_first_kind_index(seq, r);
  if (n_max < 0) n_max = limit;
  if (n_max > limit) throw InvalidArgument("not enough moments for the requested family order");
  OmpFamily f;
  f.r = r;
  f.n_max = n_max;
  const int hhat_limit = max_hankel_order(seq, r);
  for (int j = 0; j <= n_max; ++j) {
    f.Sigma.push_back(sigma(seq, r, j));
    f.P.push_back(first_kind(seq, r, j));
    f.Q.push_back(second_kind(seq, r, j));
    if (j <= hhat_limit) f.Hhat.push_back(schur_complement(seq, r, j));
  }
  return f;
}

MatrixQ moment_inner_product(const MatrixPolynomial& p, const MatrixPolynomial& q,
                             const MomentSequence& seq_r) {
  const int dp = p.degree();
  const int dq = q.degree();
  MatrixQ acc = MatrixQ::Zero(p.rows(), q.rows());
  if (dp + dq > seq_r.order()) throw InvalidArgument("inner product needs more moments");
  for (int k = 0; k <= dp; ++k) {
    for (int l = 0; l <= dq; ++l) acc += p.coeff(k) * seq_r[k + l] * q.coeff(l).adjoint();
  }
  return acc;
}

}  // namespace thmm
