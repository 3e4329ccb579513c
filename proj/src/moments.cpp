#include "thmm/moments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "thmm/blockkit.hpp"
#include "thmm/numerics.hpp"

namespace thmm {

Interval::Interval(double lo, double hi) : a(lo), b(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InvalidArgument("interval needs finite a < b");
  }
}

MomentSequence::MomentSequence(Interval interval, std::vector<MatrixQ> s)
    : interval_(interval), q_(0), s_(std::move(s)) {
  if (s_.empty()) throw InvalidArgument("moment sequence is empty");
  q_ = static_cast<int>(s_.front().rows());
  if (q_ < 1) throw InvalidArgument("moment blocks must be at least 1x1");
  for (std::size_t j = 0; j < s_.size(); ++j) {
    auto& m = s_[j];
    if (m.rows() != q_ || m.cols() != q_) throw InvalidArgument("moment blocks differ in size");
    if (!m.allFinite()) throw InvalidArgument("moment s_" + std::to_string(j) + " is not finite");
    if (!is_hermitian(m)) throw InvalidArgument("moment s_" + std::to_string(j) + " is not hermitian");
    m = hermitize(m);
  }
}

const MatrixQ& MomentSequence::operator[](int j) const {
  if (j < 0 || j > order()) {
    throw InvalidArgument("moment s_" + std::to_string(j) + " requested, sequence has order " +
                          std::to_string(order()));
  }
  return s_[static_cast<std::size_t>(j)];
}

MomentSequence MomentSequence::truncated(int m) const {
  if (m < 0 || m > order()) throw InvalidArgument("truncation order out of range");
  return MomentSequence(interval_, std::vector<MatrixQ>(s_.begin(), s_.begin() + m + 1));
}

void DiscreteMatrixMeasure::validate(double psd_tol) const {
  if (q < 1) throw InvalidArgument("measure block size must be >= 1");
  std::vector<double> ts;
  for (const auto& atom : atoms) {
    if (!std::isfinite(atom.t) || atom.t < interval.a || atom.t > interval.b) {
      throw InvalidArgument("atom outside [a, b]");
    }
    if (atom.weight.rows() != q || atom.weight.cols() != q) throw InvalidArgument("atom weight has wrong size");
    if (!atom.weight.allFinite() || !is_hermitian(atom.weight)) {
      throw InvalidArgument("atom weight is not hermitian");
    }
    const double scale = std::max(1.0, max_norm(atom.weight));
    if (min_eigenvalue(atom.weight) < -psd_tol * scale) {
      throw InvalidArgument("atom weight is not positive semidefinite");
    }
    ts.push_back(atom.t);
  }
  std::sort(ts.begin(), ts.end());
  if (std::adjacent_find(ts.begin(), ts.end()) != ts.end()) throw InvalidArgument("repeated atom");
}

MomentSequence moments_from_measure(const DiscreteMatrixMeasure& mu, int m) {
  mu.validate();
  if (m < 0) throw InvalidArgument("negative moment order");
  std::vector<MatrixQ> s(static_cast<std::size_t>(m) + 1, MatrixQ::Zero(mu.q, mu.q));
  for (const auto& atom : mu.atoms) {
    double power = 1.0;
    for (int j = 0; j <= m; ++j) {
      s[static_cast<std::size_t>(j)] += power * atom.weight;
      power *= atom.t;
    }
  }
  for (auto& x : s) x = hermitize(x);
  return MomentSequence(mu.interval, std::move(s));
}

MomentSequence transform_moments(const MomentSequence& seq, int r) {
  const double a = seq.a();
  const double b = seq.b();
  const int m = seq.order();
  std::vector<MatrixQ> out;
  switch (r) {
    case 1:
      return seq;
    case 2:
      if (m < 2) throw InvalidArgument("s^(2) needs order >= 2");
      for (int j = 0; j + 2 <= m; ++j) {
        out.push_back(hermitize(-a * b * seq[j] + (a + b) * seq[j + 1] - seq[j + 2]));
      }
      break;
    case 3:
      if (m < 1) throw InvalidArgument("s^(3) needs order >= 1");
      for (int j = 0; j + 1 <= m; ++j) out.push_back(hermitize(b * seq[j] - seq[j + 1]));
      break;
    case 4:
      if (m < 1) throw InvalidArgument("s^(4) needs order >= 1");
      for (int j = 0; j + 1 <= m; ++j) out.push_back(hermitize(-a * seq[j] + seq[j + 1]));
      break;
    default:
      throw InvalidArgument("transform index must be 1..4");
  }
  return MomentSequence(seq.interval(), std::move(out));
}

BlockMatrix hankel_block(const MomentSequence& seq, int j, int shift) {
  if (j < 0) throw InvalidArgument("negative Hankel order");
  if (2 * j + shift > seq.order()) {
    throw InvalidArgument("Hankel matrix of order " + std::to_string(j) + " needs s_" +
                          std::to_string(2 * j + shift) + ", sequence has order " +
                          std::to_string(seq.order()));
  }
  const int q = seq.q();
  BlockMatrix h(static_cast<Eigen::Index>(j + 1) * q, static_cast<Eigen::Index>(j + 1) * q);
  for (int k = 0; k <= j; ++k) {
    for (int l = 0; l <= j; ++l) h.block(k * q, l * q, q, q) = seq[k + l + shift];
  }
  return h;
}

BlockVector moment_column(const MomentSequence& seq, int from, int to) {
  std::vector<MatrixQ> blocks;
  for (int k = from; k <= to; ++k) blocks.push_back(seq[k]);
  return stack_blocks(blocks);
}

HankelBundle hankel(const MomentSequence& seq, int r, int j) {
  const MomentSequence sr = transform_moments(seq, r);
  HankelBundle out;
  out.r = r;
  out.j = j;
  out.H = hankel_block(sr, j);
  if (2 * j + 1 <= sr.order()) out.Htilde = hankel_block(sr, j, 1);
  if (j >= 1) out.Y = moment_column(sr, j, 2 * j - 1);
  return out;
}

int max_hankel_order(const MomentSequence& seq, int r) {
  const int m = seq.order();
  const int mr = r == 1 ? m : (r == 2 ? m - 2 : m - 1);
  return mr < 0 ? -1 : mr / 2;
}

BlockVector UVectors::u2(cplx z) const {
  if (!u2hat) throw InvalidArgument("u_{2,j} needs s_{j+1}");
  return *u2hat + z * v_s0;
}

UVectors u_vectors(const MomentSequence& seq, int j) {
  const int q = seq.q();
  const double a = seq.a();
  const double b = seq.b();
  UVectors out;
  out.j = j;
  out.u = -moment_column(seq, 0, j);
  const BlockMatrix t = make_shift(j, q);
  const BlockMatrix id = identity(t.rows());
  out.u1 = t * out.u;
  out.u3 = -(id - b * t) * out.u;
  out.u4 = (id - a * t) * out.u;
  out.v_s0 = make_v(j, q) * seq[0];
  if (j + 1 <= seq.order()) {
    const BlockVector un1 = -moment_column(seq, 0, j + 1);
    const BlockMatrix t1 = make_shift(j + 1, q);
    const BlockMatrix id1 = identity(t1.rows());
    const BlockMatrix l1 = make_truncations(j + 1, q).first;
    out.u2hat = -l1.adjoint() * (id1 - b * t1) * (id1 - a * t1) * un1;
  }
  return out;
}

BlockVector u_r(const UVectors& u, int r) {
  switch (r) {
    case 1:
      return u.u1;
    case 2:
      if (!u.u2hat) throw InvalidArgument("uhat_{2,j} needs s_{j+1}");
      return *u.u2hat;
    case 3:
      return u.u3;
    case 4:
      return u.u4;
    default:
      throw InvalidArgument("u-vector index must be 1..4");
  }
}

Parity parity_of(int m) { return m % 2 == 1 ? Parity::Even : Parity::Odd; }

int half_order(int m) { return m / 2; }

std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

bool SolvabilityVerdict::assumptions_hold() const {
  return h1tilde_invertible.value_or(true) && gamma_invertible.value_or(true);
}

GammaParts gamma_at(const MomentSequence& seq, int n, double x) {
  const int q = seq.q();
  const BlockMatrix h1 = hankel_block(seq, n);
  const UVectors u = u_vectors(seq, n);
  const BlockVector v = make_v(n, q);
  const BlockMatrix rstar = shift_resolvent(n, q, x).adjoint();
  const Matrix w = v.adjoint() * rstar;
  GammaParts parts;
  parts.denominator = MatrixQ::Identity(q, q) + x * w * solve_hermitian(h1, u.u1);
  parts.gamma = solve(parts.denominator, w * solve_hermitian(h1, v));
  return parts;
}

namespace {

NamedEigenvalue classify(const std::string& name, const Matrix& h, double tol) {
  NamedEigenvalue e;
  e.name = name;
  e.min_eig = min_eigenvalue(h);
  e.norm = spectral_norm_hermitian(h);
  e.pd = e.min_eig > tol * e.norm;
  e.psd = e.min_eig >= -tol * e.norm;
  return e;
}

std::string hankel_name(int r, int j) {
  std::ostringstream os;
  os << "H_{" << r << "," << j << "}";
  return os.str();
}

}  // namespace

SolvabilityVerdict check_solvability(const MomentSequence& seq, double tol) {
  const int m = seq.order();
  if (m < 1) throw InvalidArgument("solvability check needs order m >= 1");
  SolvabilityVerdict v;
  v.parity = parity_of(m);
  v.n = half_order(m);
  const int n = v.n;
  if (v.parity == Parity::Odd) {
    v.min_eigs.push_back(classify(hankel_name(1, n), hankel(seq, 1, n).H, tol));
    v.min_eigs.push_back(classify(hankel_name(2, n - 1), hankel(seq, 2, n - 1).H, tol));
  } else {
    v.min_eigs.push_back(classify(hankel_name(3, n), hankel(seq, 3, n).H, tol));
    v.min_eigs.push_back(classify(hankel_name(4, n), hankel(seq, 4, n).H, tol));
  }
  v.pd = std::all_of(v.min_eigs.begin(), v.min_eigs.end(), [](const auto& e) { return e.pd; });
  v.psd = std::all_of(v.min_eigs.begin(), v.min_eigs.end(), [](const auto& e) { return e.psd; });
  for (const auto& e : v.min_eigs) {
    if (!e.pd) v.failures.push_back(e.name + " is not positive definite");
  }

  if (v.parity == Parity::Even) {
    bool ok = is_invertible(hankel_block(seq, n, 1));
    if (!ok) v.failures.push_back("Htilde_{1," + std::to_string(n) + "} is not invertible");
    if (n >= 1 && !is_invertible(hankel_block(seq, n - 1, 1))) {
      ok = false;
      v.failures.push_back("Htilde_{1," + std::to_string(n - 1) + "} is not invertible");
    }
    v.h1tilde_invertible = ok;
  } else {
    bool ok = true;
    try {
      const GammaParts ga = gamma_at(seq, n, seq.a());
      const GammaParts gb = gamma_at(seq, n, seq.b());
      if (!is_invertible(ga.denominator) || !is_invertible(gb.denominator)) {
        ok = false;
        v.failures.push_back("I + a v^* R^*(a) H_{1,n}^{-1} u_{1,n} is not invertible");
      } else if (!is_invertible(seq.b() * gb.gamma - seq.a() * ga.gamma)) {
        ok = false;
        v.failures.push_back("b Gamma_b - a Gamma_a is not invertible");
      }
    } catch (const Error&) {
      ok = false;
      v.failures.push_back("Gamma matrices could not be formed");
    }
    v.gamma_invertible = ok;
  }
  return v;
}

GeneratedInstance random_hausdorff_sequence(int q, int m, Interval interval, std::uint64_t seed) {
  if (q < 1 || m < 1) throw InvalidArgument("generator needs q >= 1 and m >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int k = (m + 1) / 2 + 2;
  const double a = interval.a;
  const double b = interval.b;
  for (int attempt = 0; attempt < 100; ++attempt) {
    DiscreteMatrixMeasure mu;
    mu.interval = interval;
    mu.q = q;
    for (int i = 0; i < k; ++i) {
      // One atom per grid cell, jittered inside the middle 60% of the cell.
      const double t = a + (b - a) * (i + 0.2 + 0.6 * unit(rng)) / k;
      MatrixQ g(q, q);
      for (int r = 0; r < q; ++r) {
        for (int c = 0; c < q; ++c) g(r, c) = cplx(normal(rng), normal(rng));
      }
      MatrixQ w = g * g.adjoint() + 0.1 * MatrixQ::Identity(q, q);
      mu.atoms.push_back({t, hermitize(w)});
    }
    MomentSequence s = moments_from_measure(mu, m);
    if (check_solvability(s).pd) return {std::move(mu), std::move(s)};
  }
  throw Error("generator could not produce a positive definite sequence");
}

}  // namespace thmm
