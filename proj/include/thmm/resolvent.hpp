#pragma once

#include <array>
#include <vector>

#include "thmm/matrix_polynomial.hpp"
#include "thmm/moments.hpp"

namespace thmm {

struct ResolventEval {
  cplx z;
  Matrix M;  // 2q x 2q
  int q = 1;

  MatrixQ alpha() const { return M.topLeftCorner(q, q); }
  MatrixQ beta() const { return M.topRightCorner(q, q); }
  MatrixQ gamma() const { return M.bottomLeftCorner(q, q); }
  MatrixQ delta() const { return M.bottomRightCorner(q, q); }
};

// 25 points: five real parts spread over [a-1, b+1] times imaginary parts
// {0, +-0.5, +-1}. Points landing on a or b are moved right by 1e-3.
std::vector<cplx> default_grid(const Interval& interval);

// ---- Kovalishina matrix -------------------------------------------------

// Ingredients of Vtilde_r^{(n)}: H_{r,n}, u_{r,n} (uhat_{2,n} for r = 2), v_n.
struct KovalishinaData {
  int r = 1;
  int n = 0;
  int q = 1;
  BlockMatrix H;
  BlockVector u;
  BlockVector v;
};
KovalishinaData kovalishina_data(const MomentSequence& seq, int r, int n);

// Vtilde(z) = I - i z W^* R_n(conj z)^* H^{-1} W J, W = (v_n, u_{r,n}).
ResolventEval kovalishina(const KovalishinaData& data, cplx z);
ResolventEval kovalishina(const MomentSequence& seq, int r, int n, cplx z);

// Block form: alpha~ = I + z v^* R^* H^{-1} u, beta~ = -z v^* R^* H^{-1} v,
// gamma~ = z u^* R^* H^{-1} u, delta~ = I - z u^* R^* H^{-1} v, as
// polynomial coefficients.
MatrixPolynomial kovalishina_polynomial(const KovalishinaData& data);

// ---- even number of moments, m = 2n+1 ----------------------------------

struct EvenCoupling {
  int n = 0;
  MatrixQ M;  // -a u_n^* Htilde_{1,n}^{-1} u_n
  MatrixQ N;  // -b v_n^* H_{4,n}^{-1} Htilde_{1,n} H_{3,n}^{-1} v_n
  MatrixQ d;  // P_{1,n+1}^*(0) P_{1,n+1}^{*-1}(a)
  Matrix C;   // [[I, 0], [M, I]]
  Matrix D;   // [[I, N], [0, I]]
  Matrix Dfrak;  // diag(d^{*-1}, d)
};

class EvenResolvent {
 public:
  // Throws InvalidArgument unless the order is odd, AssumptionViolated when
  // H_{3,n}, H_{4,n} are not positive definite or Htilde_{1,n} is singular.
  explicit EvenResolvent(const MomentSequence& seq);

  int n() const { return n_; }
  int q() const { return q_; }
  const MomentSequence& sequence() const { return seq_; }
  const EvenCoupling& coupling() const { return coupling_; }
  const KovalishinaData& kovalishina_data() const { return kov_; }

  // V^{(2n+1)} assembled as a polynomial (removable singularity at a
  // cancelled by exact division).
  const MatrixPolynomial& V() const { return V_; }
  // Remainder of the division of the lower-left block by (z - a).
  double division_remainder() const { return division_remainder_; }
  // diag(I, (z-a)^{-1}) Vtilde_4(z) C D diag(I, (z-a)), z != a, rebuilt
  // from the moments in long double so that it can serve as a reference
  // for V close to a.
  Matrix V_raw(cplx z) const;

  const MatrixPolynomial& U() const { return U_; }

  ResolventEval V_at(cplx z) const { return {z, V_(z), q_}; }
  // Endpoint factors are applied after evaluation, so the blocks that
  // vanish at an endpoint are exactly zero there.
  ResolventEval U_at(cplx z) const;

  const MatrixPolynomial& P1() const { return P1_; }  // P_{1,n+1}
  const MatrixPolynomial& Q1() const { return Q1_; }  // Q_{1,n+1}
  const MatrixPolynomial& P2() const { return P2_; }  // P_{2,n}
  const MatrixPolynomial& Q2() const { return Q2_; }  // Q_{2,n}

  // Residuals of the four block identities at z (z != a); the beta block is
  // compared after multiplying both sides by (z - a).
  std::array<double, 4> block_residuals(cplx z) const;

 private:
  MomentSequence seq_;
  int n_;
  int q_;
  KovalishinaData kov_;
  EvenCoupling coupling_;
  MatrixPolynomial P1_, Q1_, P2_, Q2_;
  MatrixPolynomial V_, U_;
  MatrixPolynomial gamma_factor_;  // gamma = (z - a) gamma_factor
  double division_remainder_ = 0.0;
};

// ---- odd number of moments, m = 2n --------------------------------------

struct OddCoupling {
  int n = 0;
  MatrixQ Gamma_a;
  MatrixQ Gamma_b;
  MatrixQ M;  // a Gamma_a
  MatrixQ N;  // (b Gamma_b - a Gamma_a)^{-1}
  MatrixQ d;  // Q_{4,n}^*(0) Q_{4,n}^{*-1}(a)
  Matrix C1;  // [[I, M], [0, I]]
  Matrix D1;  // [[I, 0], [N, I]]
  Matrix Dfrak;  // diag(d, d^{*-1})
};

class OddResolvent {
 public:
  explicit OddResolvent(const MomentSequence& seq);

  int n() const { return n_; }
  int q() const { return q_; }
  const MomentSequence& sequence() const { return seq_; }
  const OddCoupling& coupling() const { return coupling_; }
  const KovalishinaData& kovalishina_data() const { return kov_; }

  const MatrixPolynomial& V() const { return V_; }
  const MatrixPolynomial& U() const { return U_; }
  ResolventEval V_at(cplx z) const { return {z, V_(z), q_}; }
  // Endpoint factors are applied after evaluation, so the blocks that
  // vanish at an endpoint are exactly zero there.
  ResolventEval U_at(cplx z) const;

  const MatrixPolynomial& P3() const { return P3_; }
  const MatrixPolynomial& Q3() const { return Q3_; }
  const MatrixPolynomial& P4() const { return P4_; }
  const MatrixPolynomial& Q4() const { return Q4_; }

  std::array<double, 4> block_residuals(cplx z) const;

 private:
  MomentSequence seq_;
  int n_;
  int q_;
  KovalishinaData kov_;
  OddCoupling coupling_;
  MatrixPolynomial P3_, Q3_, P4_, Q4_;
  MatrixPolynomial V_, U_;
  MatrixPolynomial gamma_factor_;  // gamma = (z - a) gamma_factor
  MatrixPolynomial delta_factor_;  // delta = (b - z) delta_factor
};

EvenCoupling even_coupling(const MomentSequence& seq);
OddCoupling odd_coupling(const MomentSequence& seq);

// max over the grid of ||U - Jfrak V Jfrak Dfrak||_F / (1 + ||U||_F); the
// parity comes from the sequence order.
double coupling_residual(const MomentSequence& seq, const std::vector<cplx>& grid);

struct JPropertyResult {
  double max_eigenvalue = 0.0;     // over grid points with Im z > 0
  // ||Vtilde(z) X - I|| / (1 + ||Vtilde(z)|| ||X||), X = J Vtilde(conj z)^* J.
  double inverse_residual = 0.0;
  int upper_points = 0;
};
JPropertyResult j_property_check(const MomentSequence& seq, int r, int n,
                                 const std::vector<cplx>& grid);

// p_r(z)^{-1} Q_{r,n}^*(conj z) P_{r,n}^{*-1}(conj z) with p_1 = 1,
// p_2 = (z-a)(b-z), p_3 = b-z, p_4 = z-a.
MatrixQ canonical_solution(const MomentSequence& seq, int r, int n, cplx z);

}  // namespace thmm
