#include "thmm/blockkit.hpp"

#include <vector>

namespace thmm {

namespace {

void require_sizes(int j, int q) {
  if (j < 0 || q < 1) throw InvalidArgument("block order must be >= 0 and q >= 1");
}

}  // namespace

BlockMatrix make_shift(int j, int q) {
  require_sizes(j, q);
  const Eigen::Index n = static_cast<Eigen::Index>(j + 1) * q;
  BlockMatrix t = BlockMatrix::Zero(n, n);
  for (int k = 1; k <= j; ++k) t.block(k * q, (k - 1) * q, q, q).setIdentity();
  return t;
}

std::pair<BlockMatrix, BlockMatrix> make_truncations(int j, int q) {
  require_sizes(j, q);
  if (j == 0) throw InvalidArgument("truncations need j >= 1");
  const Eigen::Index rows = static_cast<Eigen::Index>(j + 1) * q;
  const Eigen::Index cols = static_cast<Eigen::Index>(j) * q;
  BlockMatrix l1 = BlockMatrix::Zero(rows, cols);
  BlockMatrix l2 = BlockMatrix::Zero(rows, cols);
  l1.bottomRows(cols).setIdentity();
  l2.topRows(cols).setIdentity();
  return {l1, l2};
}

BlockMatrix shift_resolvent(int j, int q, cplx z) {
  require_sizes(j, q);
  const Eigen::Index n = static_cast<Eigen::Index>(j + 1) * q;
  BlockMatrix r = BlockMatrix::Zero(n, n);
  cplx power = 1.0;
  for (int l = 0; l <= j; ++l) {
    for (int k = l; k <= j; ++k) {
      r.block(k * q, (k - l) * q, q, q) = power * MatrixQ::Identity(q, q);
    }
    power *= z;
  }
  return r;
}

BlockVector make_v(int j, int q) {
  require_sizes(j, q);
  BlockVector v = BlockVector::Zero(static_cast<Eigen::Index>(j + 1) * q, q);
  v.topRows(q).setIdentity();
  return v;
}

Signatures signature_matrices(int q) {
  if (q < 1) throw InvalidArgument("q must be >= 1");
  const cplx i(0.0, 1.0);
  Signatures s;
  s.J = BlockMatrix::Zero(2 * q, 2 * q);
  s.J.topRightCorner(q, q) = -i * MatrixQ::Identity(q, q);
  s.J.bottomLeftCorner(q, q) = i * MatrixQ::Identity(q, q);
  s.Jfrak = BlockMatrix::Zero(2 * q, 2 * q);
  s.Jfrak.topRightCorner(q, q).setIdentity();
  s.Jfrak.bottomLeftCorner(q, q).setIdentity();
  return s;
}

MatrixQ block(const Matrix& m, int q, int k, int l) {
  return m.block(static_cast<Eigen::Index>(k) * q, static_cast<Eigen::Index>(l) * q, q, q);
}

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

Matrix zeros(Eigen::Index rows, Eigen::Index cols) { return Matrix::Zero(rows, cols); }

Matrix block2x2(const MatrixQ& a, const MatrixQ& b, const MatrixQ& c,
                const MatrixQ& d) {
  Matrix m(a.rows() + c.rows(), a.cols() + b.cols());
  m << a, b, c, d;
  return m;
}

BlockVector stack_blocks(const std::vector<MatrixQ>& blocks) {
  if (blocks.empty()) throw InvalidArgument("cannot stack an empty block list");
  const Eigen::Index q = blocks.front().rows();
  BlockVector out(q * static_cast<Eigen::Index>(blocks.size()), blocks.front().cols());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    out.middleRows(static_cast<Eigen::Index>(k) * q, q) = blocks[k];
  }
  return out;
}

double max_norm(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (tol < 0.0) tol = 1e-12 * max_norm(m);
  return max_norm(m - m.adjoint()) <= tol;
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace thmm
