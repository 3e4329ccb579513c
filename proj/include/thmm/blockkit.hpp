#pragma once

#include <utility>
#include <vector>

#include "thmm/types.hpp"

namespace thmm {

// Block down shift T_j: (j+1)x(j+1) blocks, identity on the subdiagonal.
BlockMatrix make_shift(int j, int q);

// Truncations (L_{1,j}, L_{2,j}), each (j+1)q x jq. L_1 drops the first
// block row of a block column, L_2 drops the last one.
std::pair<BlockMatrix, BlockMatrix> make_truncations(int j, int q);

// R_j(z) = (I - z T_j)^{-1} = sum_l z^l T_j^l, filled as a block Toeplitz
// lower triangle.
BlockMatrix shift_resolvent(int j, int q, cplx z);

// v_j = (I; 0; ...; 0).
BlockVector make_v(int j, int q);

struct Signatures {
  BlockMatrix J;      // [[0, -iI], [iI, 0]]
  BlockMatrix Jfrak;  // [[0, I], [I, 0]]
};
Signatures signature_matrices(int q);

// Block helpers.
MatrixQ block(const Matrix& m, int q, int k, int l);
Matrix identity(Eigen::Index n);
Matrix zeros(Eigen::Index rows, Eigen::Index cols);
Matrix block2x2(const MatrixQ& a, const MatrixQ& b, const MatrixQ& c,
                const MatrixQ& d);
BlockVector stack_blocks(const std::vector<MatrixQ>& blocks);

double max_norm(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = -1.0);
Matrix hermitize(const Matrix& m);

}  // namespace thmm
