#include "thmm/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thmm/blockkit.hpp"
#include "thmm/numerics.hpp"
#include "thmm/omp.hpp"

namespace thmm {

std::vector<cplx> default_grid(const Interval& interval) {
  const double a = interval.a;
  const double b = interval.b;
  const double eps = 1e-3;
  std::vector<cplx> grid;
  for (int i = 0; i < 5; ++i) {
    double x = (a - 1.0) + (b - a + 2.0) * i / 4.0;
    if (std::abs(x - a) < eps || std::abs(x - b) < eps) x += eps;
    for (double y : {0.0, 0.5, -0.5, 1.0, -1.0}) grid.emplace_back(x, y);
  }
  return grid;
}

KovalishinaData kovalishina_data(const MomentSequence& seq, int r, int n) {
  KovalishinaData k;
  k.r = r;
  k.n = n;
  k.q = seq.q();
  k.H = hankel(seq, r, n).H;
  k.u = u_r(u_vectors(seq, n), r);
  k.v = make_v(n, k.q);
  return k;
}

ResolventEval kovalishina(const KovalishinaData& data, cplx z) {
  const int q = data.q;
  BlockVector w(data.v.rows(), 2 * q);
  w << data.v, data.u;
  const BlockMatrix rstar = shift_resolvent(data.n, q, std::conj(z)).adjoint();
  const Matrix j = signature_matrices(q).J;
  const cplx i(0.0, 1.0);
  Matrix m = identity(2 * q) - i * z * w.adjoint() * rstar * solve_hermitian(data.H, w) * j;
  return {z, std::move(m), q};
}

ResolventEval kovalishina(const MomentSequence& seq, int r, int n, cplx z) {
  return kovalishina(kovalishina_data(seq, r, n), z);
}

MatrixPolynomial kovalishina_polynomial(const KovalishinaData& data) {
  const int q = data.q;
  const Matrix id = identity(q);
  const BlockVector hu = solve_hermitian(data.H, data.u);
  const BlockVector hv = solve_hermitian(data.H, data.v);
  const MatrixPolynomial z = MatrixPolynomial::monomial(id, 1);
  const MatrixPolynomial one = MatrixPolynomial::constant(id);
  const MatrixPolynomial alpha = one + z * resolvent_adjoint_sandwich(data.v, hu, q);
  const MatrixPolynomial beta = -(z * resolvent_adjoint_sandwich(data.v, hv, q));
  const MatrixPolynomial gamma = z * resolvent_adjoint_sandwich(data.u, hu, q);
  const MatrixPolynomial delta = one - z * resolvent_adjoint_sandwich(data.u, hv, q);
  return block2x2(alpha, beta, gamma, delta);
}

namespace {

std::string describe_failures(const SolvabilityVerdict& v) {
  std::ostringstream os;
  for (std::size_t k = 0; k < v.failures.size(); ++k) os << (k ? "; " : "") << v.failures[k];
  return os.str();
}

void require_assumptions(const MomentSequence& seq, Parity expected) {
  if (seq.order() < 1) throw InvalidArgument("resolvent matrices need order m >= 1");
  if (parity_of(seq.order()) != expected) {
    throw InvalidArgument(expected == Parity::Even ? "even case needs an odd order m = 2n+1"
                                                   : "odd case needs an even order m = 2n");
  }
  const SolvabilityVerdict v = check_solvability(seq);
  if (!v.pd || !v.assumptions_hold()) throw AssumptionViolated(describe_failures(v));
}

Matrix inverse_adjoint(const Matrix& x) { return solve(x.adjoint(), identity(x.rows())); }

MatrixPolynomial linear(double root, int q) {
  return MatrixPolynomial::scalar({-root, 1.0}, q);
}

}  // namespace

EvenResolvent::EvenResolvent(const MomentSequence& seq)
    : seq_(seq), n_(0), q_(seq.q()), P1_(q_, q_), Q1_(q_, q_), P2_(q_, q_), Q2_(q_, q_),
      V_(2 * q_, 2 * q_), U_(2 * q_, 2 * q_), gamma_factor_(q_, q_) {
  require_assumptions(seq, Parity::Even);
  n_ = half_order(seq.order());
  const int n = n_;
  const int q = q_;
  const double a = seq.a();
  const double b = seq.b();
  const Matrix id = identity(q);

  kov_ = thmm::kovalishina_data(seq, 4, n);
  P1_ = first_kind(seq, 1, n + 1);
  Q1_ = second_kind(seq, 1, n + 1);
  P2_ = first_kind(seq, 2, n);
  Q2_ = second_kind(seq, 2, n);

  const BlockMatrix ht = hankel_block(seq, n, 1);
  const BlockMatrix h3 = hankel(seq, 3, n).H;
  const BlockMatrix h4 = hankel(seq, 4, n).H;
  const BlockVector un = u_vectors(seq, n).u;
  const BlockVector vn = make_v(n, q);

  EvenCoupling& c = coupling_;
  c.n = n;
  c.M = -a * un.adjoint() * solve(ht, un);
  c.N = -b * vn.adjoint() * solve_hermitian(h4, ht * solve_hermitian(h3, vn));
  const Matrix pa_inv_adj = inverse_adjoint(P1_(a));
  c.d = P1_(0.0).adjoint() * pa_inv_adj;
  c.C = block2x2(id, zeros(q, q), c.M, id);
  c.D = block2x2(id, c.N, zeros(q, q), id);
  c.Dfrak = block2x2(inverse_adjoint(c.d), zeros(q, q), zeros(q, q), c.d);

  // V: multiply the upper right block by (z - a) and divide the lower left
  // block by (z - a); the division is exact up to roundoff.
  const MatrixPolynomial x = kovalishina_polynomial(kov_) * (c.C * c.D);
  const MatrixPolynomial x21 = x.block(q, 0, q, q);
  auto [quotient, remainder] = x21.divide_linear(a);
  double scale = 1.0;
  for (const auto& coef : x21.coeffs()) scale = std::max(scale, 1.0 + coef.norm());
  division_remainder_ = remainder.norm() / scale;
  V_ = block2x2(x.block(0, 0, q, q), linear(a, q) * x.block(0, q, q, q), quotient,
                x.block(q, q, q, q));

  const Matrix q2a_inv_adj = inverse_adjoint(Q2_(a));
  const MatrixPolynomial weight = MatrixPolynomial::scalar({a * b, -(a + b), 1.0}, q);
  U_ = block2x2(Q2_.adjoint() * q2a_inv_adj, -(Q1_.adjoint() * pa_inv_adj),
                weight * P2_.adjoint() * q2a_inv_adj, P1_.adjoint() * pa_inv_adj);
  gamma_factor_ = linear(b, q) * P2_.adjoint() * q2a_inv_adj;
}

ResolventEval EvenResolvent::U_at(cplx z) const {
  Matrix m = U_(z);
  m.bottomLeftCorner(q_, q_) = (z - seq_.a()) * gamma_factor_(z);
  return {z, std::move(m), q_};
}

namespace {

using cplx_ld = std::complex<long double>;
using MatrixLd = Eigen::Matrix<cplx_ld, Eigen::Dynamic, Eigen::Dynamic>;

// Block Hankel matrix [x_{k+l+shift}]_{k,l=0..n}.
MatrixLd hankel_ld(const std::vector<MatrixLd>& x, int n, int shift) {
  const Eigen::Index q = x[0].rows();
  MatrixLd h((n + 1) * q, (n + 1) * q);
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l) h.block(k * q, l * q, q, q) = x[k + l + shift];
  return h;
}

}  // namespace

Matrix EvenResolvent::V_raw(cplx z) const {
  const int q = q_;
  const int n = n_;
  const cplx shift_d = z - seq_.a();
  if (shift_d == cplx(0.0)) throw InvalidArgument("raw conjugated form is undefined at z = a");

  // Everything is rebuilt from the moments in extended precision. Near a the
  // lower left block of Vtilde_4 C D is a difference of nearly equal terms
  // divided by (z - a), so double precision inputs would dominate the result.
  const long double a = seq_.a();
  const long double b = seq_.b();
  const cplx_ld zl(static_cast<long double>(z.real()), static_cast<long double>(z.imag()));
  const cplx_ld shift = zl - cplx_ld(a);
  std::vector<MatrixLd> s;
  for (const MatrixQ& x : seq_.moments()) s.push_back(x.cast<cplx_ld>());
  std::vector<MatrixLd> s3;
  std::vector<MatrixLd> s4;
  for (int j = 0; j + 1 <= seq_.order(); ++j) {
    s3.push_back(b * s[j] - s[j + 1]);
    s4.push_back(-a * s[j] + s[j + 1]);
  }
  const Eigen::Index nq = static_cast<Eigen::Index>(n + 1) * q;
  const MatrixLd h3 = hankel_ld(s3, n, 0);
  const MatrixLd h4 = hankel_ld(s4, n, 0);
  const MatrixLd ht = hankel_ld(s, n, 1);
  MatrixLd u(nq, q);
  MatrixLd t = MatrixLd::Zero(nq, nq);
  for (int k = 0; k <= n; ++k) u.block(k * q, 0, q, q) = -s[k];
  for (int k = 1; k <= n; ++k) t.block(k * q, (k - 1) * q, q, q).setIdentity();
  const MatrixLd v = MatrixLd::Identity(nq, q);
  const MatrixLd id = MatrixLd::Identity(nq, nq);
  const MatrixLd u4 = (id - a * t) * u;

  const MatrixLd m = -a * u.adjoint() * ht.partialPivLu().solve(u);
  const MatrixLd nn = -b * v.adjoint() * h4.partialPivLu().solve(ht * h3.partialPivLu().solve(v));
  const MatrixLd idq = MatrixLd::Identity(q, q);
  MatrixLd cd(2 * q, 2 * q);
  cd << idq, nn, m, idq + m * nn;

  // R_n(conj z)^* = sum_k z^k T^{*k}.
  MatrixLd rstar = id;
  MatrixLd power = id;
  for (int k = 1; k <= n; ++k) {
    power = zl * power * t.adjoint();
    rstar += power;
  }
  MatrixLd w(nq, 2 * q);
  w << v, u4;
  MatrixLd j = MatrixLd::Zero(2 * q, 2 * q);
  j.topRightCorner(q, q) = cplx_ld(0, -1) * idq;
  j.bottomLeftCorner(q, q) = cplx_ld(0, 1) * idq;
  const MatrixLd kov = MatrixLd::Identity(2 * q, 2 * q) -
                       cplx_ld(0, 1) * zl * w.adjoint() * rstar * h4.partialPivLu().solve(w) * j;
  MatrixLd x = kov * cd;
  x.topRightCorner(q, q) *= shift;
  x.bottomLeftCorner(q, q) /= shift;
  Matrix out(2 * q, 2 * q);
  for (Eigen::Index r = 0; r < 2 * q; ++r)
    for (Eigen::Index c = 0; c < 2 * q; ++c)
      out(r, c) = cplx(static_cast<double>(x(r, c).real()), static_cast<double>(x(r, c).imag()));
  return out;
}

std::array<double, 4> EvenResolvent::block_residuals(cplx z) const {
  const int q = q_;
  const ResolventEval k = kovalishina(kov_, z);
  const ResolventEval u = U_at(z);
  const EvenCoupling& c = coupling_;
  const Matrix id = identity(q);
  const Matrix mn = id + c.M * c.N;
  const Matrix d_inv_adj = inverse_adjoint(c.d);
  const cplx shift = z - seq_.a();
  return {residual(u.alpha(), (k.gamma() * c.N + k.delta() * mn) * d_inv_adj),
          residual(shift * u.beta(), (k.gamma() + k.delta() * c.M) * c.d),
          residual(u.gamma(), shift * (k.alpha() * c.N + k.beta() * mn) * d_inv_adj),
          residual(u.delta(), (k.alpha() + k.beta() * c.M) * c.d)};
}

EvenCoupling even_coupling(const MomentSequence& seq) { return EvenResolvent(seq).coupling(); }

OddResolvent::OddResolvent(const MomentSequence& seq)
    : seq_(seq), n_(0), q_(seq.q()), P3_(q_, q_), Q3_(q_, q_), P4_(q_, q_), Q4_(q_, q_),
      V_(2 * q_, 2 * q_), U_(2 * q_, 2 * q_), gamma_factor_(q_, q_), delta_factor_(q_, q_) {
  require_assumptions(seq, Parity::Odd);
  n_ = half_order(seq.order());
  const int n = n_;
  const int q = q_;
  const double a = seq.a();
  const double b = seq.b();
  const Matrix id = identity(q);

  kov_ = thmm::kovalishina_data(seq, 1, n);
  P3_ = first_kind(seq, 3, n);
  Q3_ = second_kind(seq, 3, n);
  P4_ = first_kind(seq, 4, n);
  Q4_ = second_kind(seq, 4, n);

  OddCoupling& c = coupling_;
  c.n = n;
  c.Gamma_a = gamma_at(seq, n, a).gamma;
  c.Gamma_b = gamma_at(seq, n, b).gamma;
  c.M = a * c.Gamma_a;
  c.N = inverse(b * c.Gamma_b - a * c.Gamma_a);
  const Matrix q4a_inv_adj = inverse_adjoint(Q4_(a));
  c.d = Q4_(0.0).adjoint() * q4a_inv_adj;
  c.C1 = block2x2(id, c.M, zeros(q, q), id);
  c.D1 = block2x2(id, zeros(q, q), c.N, id);
  c.Dfrak = block2x2(c.d, zeros(q, q), zeros(q, q), inverse_adjoint(c.d));

  V_ = kovalishina_polynomial(kov_) * (c.C1 * c.D1);

  const Matrix p3a_inv_adj = inverse_adjoint(P3_(a));
  const double width = b - a;
  U_ = block2x2(Q4_.adjoint() * q4a_inv_adj, (1.0 / width) * (Q3_.adjoint() * p3a_inv_adj),
                linear(a, q) * P4_.adjoint() * q4a_inv_adj,
                MatrixPolynomial::scalar({b / width, -1.0 / width}, q) * P3_.adjoint() *
                    p3a_inv_adj);
  gamma_factor_ = P4_.adjoint() * q4a_inv_adj;
  delta_factor_ = (1.0 / width) * (P3_.adjoint() * p3a_inv_adj);
}

ResolventEval OddResolvent::U_at(cplx z) const {
  Matrix m = U_(z);
  m.bottomLeftCorner(q_, q_) = (z - seq_.a()) * gamma_factor_(z);
  m.bottomRightCorner(q_, q_) = (seq_.b() - z) * delta_factor_(z);
  return {z, std::move(m), q_};
}

std::array<double, 4> OddResolvent::block_residuals(cplx z) const {
  const ResolventEval k = kovalishina(kov_, z);
  const ResolventEval u = U_at(z);
  const OddCoupling& c = coupling_;
  const Matrix mn = identity(q_) + c.M * c.N;
  const Matrix d_inv_adj = inverse_adjoint(c.d);
  return {residual(u.alpha(), (k.gamma() * c.M + k.delta()) * c.d),
          residual(u.beta(), (k.gamma() * mn + k.delta() * c.N) * d_inv_adj),
          residual(u.gamma(), (k.alpha() * c.M + k.beta()) * c.d),
          residual(u.delta(), (k.alpha() * mn + k.beta() * c.N) * d_inv_adj)};
}

OddCoupling odd_coupling(const MomentSequence& seq) { return OddResolvent(seq).coupling(); }

namespace {

template <class Resolvent>
double coupling_residual_impl(const Resolvent& res, const Matrix& dfrak,
                              const std::vector<cplx>& grid) {
  const Matrix jf = signature_matrices(res.q()).Jfrak;
  double worst = 0.0;
  for (cplx z : grid) {
    const Matrix u = res.U()(z);
    const Matrix rhs = jf * res.V()(z) * jf * dfrak;
    worst = std::max(worst, (u - rhs).norm() / (1.0 + u.norm()));
  }
  return worst;
}

}  // namespace

double coupling_residual(const MomentSequence& seq, const std::vector<cplx>& grid) {
  if (parity_of(seq.order()) == Parity::Even) {
    const EvenResolvent res(seq);
    return coupling_residual_impl(res, res.coupling().Dfrak, grid);
  }
  const OddResolvent res(seq);
  return coupling_residual_impl(res, res.coupling().Dfrak, grid);
}

JPropertyResult j_property_check(const MomentSequence& seq, int r, int n,
                                 const std::vector<cplx>& grid) {
  const KovalishinaData data = kovalishina_data(seq, r, n);
  const Matrix j = signature_matrices(seq.q()).J;
  JPropertyResult out;
  out.max_eigenvalue = -INFINITY;
  for (cplx z : grid) {
    const Matrix k = kovalishina(data, z).M;
    const Matrix kbar = kovalishina(data, std::conj(z)).M;
    const Matrix x = j * kbar.adjoint() * j;
    const double res = (k * x - identity(k.rows())).norm() / (1.0 + k.norm() * x.norm());
    out.inverse_residual = std::max(out.inverse_residual, res);
    if (z.imag() > 0.0) {
      ++out.upper_points;
      out.max_eigenvalue = std::max(out.max_eigenvalue, max_eigenvalue(j - k * j * k.adjoint()));
    }
  }
  return out;
}

MatrixQ canonical_solution(const MomentSequence& seq, int r, int n, cplx z) {
  const double a = seq.a();
  const double b = seq.b();
  if (z.imag() == 0.0 && z.real() >= a && z.real() <= b) {
    throw InvalidArgument("canonical solution is evaluated off [a, b]");
  }
  cplx p;
  switch (r) {
    case 1: p = 1.0; break;
    case 2: p = (z - a) * (b - z); break;
    case 3: p = b - z; break;
    case 4: p = z - a; break;
    default: throw InvalidArgument("canonical solution index must be 1..4");
  }
  const MatrixPolynomial pp = first_kind(seq, r, n);
  const MatrixPolynomial qq = second_kind(seq, r, n);
  const cplx zb = std::conj(z);
  return times_inverse(qq(zb).adjoint(), pp(zb).adjoint()) / p;
}

}  // namespace thmm
