#pragma once

#include <vector>

#include "thmm/matrix_polynomial.hpp"
#include "thmm/moments.hpp"

namespace thmm {

// Hhat_{r,j} = s^(r)_{2j} - Y^* H_{r,j-1}^{-1} Y, with Hhat_{r,0} = s^(r)_0.
MatrixQ schur_complement(const MomentSequence& seq, int r, int j);

// Sigma_{r,j} = (-H_{r,j-1}^{-1} Y_{r,j}; I), Sigma_{r,0} = I.
BlockVector sigma(const MomentSequence& seq, int r, int j);

// Polynomial z -> left^* R_j(z) right for block columns of j+1 blocks.
MatrixPolynomial resolvent_sandwich(const BlockVector& left, const BlockVector& right, int q);

// Polynomial z -> left^* R_j(conj z)^* right = sum_p z^p left^* T_j^{*p} right.
MatrixPolynomial resolvent_adjoint_sandwich(const BlockVector& left, const BlockVector& right,
                                            int q);

// P_{r,j}(z) = Sigma_{r,j}^* R_j(z) v_j; monic of degree j.
MatrixPolynomial first_kind(const MomentSequence& seq, int r, int j);

// Q_{1,j} = -Sigma^* R u_{1,j}, Q_{2,j} = -Sigma_2^* R (uhat_{2,j} + z v s_0),
// Q_{3,j} = Sigma^* R u_{3,j}, Q_{4,j} = Sigma^* R u_{4,j}.
MatrixPolynomial second_kind(const MomentSequence& seq, int r, int j);

// Qtilde_{2,n}(z) = -(-(s_{n+1}, ..., s_{2n})^* Htilde_{1,n-1}^{-1}, I) R_n(z) u_n.
MatrixPolynomial tilde_second_kind(const MomentSequence& seq, int n);

// Schur complement of the last block of Htilde_{1,n}.
MatrixQ tilde_schur_complement(const MomentSequence& seq, int n);

// Largest j for which P_{r,j} is defined by the available moments.
int max_first_kind_index(const MomentSequence& seq, int r);

struct OmpFamily {
  int r = 1;
  int n_max = 0;
  std::vector<MatrixPolynomial> P;
  std::vector<MatrixPolynomial> Q;
  std::vector<BlockVector> Sigma;
  std::vector<MatrixQ> Hhat;  // only for j with s^(r)_{2j} available
};

// Builds P_{r,j}, Q_{r,j} for j = 0..n_max (n_max < 0: as far as possible).
OmpFamily build_family(const MomentSequence& seq, int r, int n_max = -1);

// <P, Q> of the r-th perturbed measure from its moments:
// sum_{k,l} P_k s^(r)_{k+l} Q_l^*.
MatrixQ moment_inner_product(const MatrixPolynomial& p, const MatrixPolynomial& q,
                             const MomentSequence& seq_r);

}  // namespace thmm
