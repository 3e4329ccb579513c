#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thmm/types.hpp"

namespace thmm {

struct Interval {
  double a = 0.0;
  double b = 1.0;

  Interval() = default;
  Interval(double lo, double hi);
};

// Hermitian moments s_0..s_m of a matrix measure on [a, b].
class MomentSequence {
 public:
  // Rejects non-hermitian or non-square input, then stores (M + M^*)/2.
  MomentSequence(Interval interval, std::vector<MatrixQ> s);

  const Interval& interval() const { return interval_; }
  double a() const { return interval_.a; }
  double b() const { return interval_.b; }
  int q() const { return q_; }
  int order() const { return static_cast<int>(s_.size()) - 1; }
  const MatrixQ& operator[](int j) const;
  const std::vector<MatrixQ>& moments() const { return s_; }

  MomentSequence truncated(int m) const;

 private:
  Interval interval_;
  int q_;
  std::vector<MatrixQ> s_;
};

struct Atom {
  double t;
  MatrixQ weight;
};

struct DiscreteMatrixMeasure {
  Interval interval;
  int q = 1;
  std::vector<Atom> atoms;

  // Throws InvalidArgument for atoms outside [a, b], repeated atoms, or
  // weights that are not hermitian positive semidefinite.
  void validate(double psd_tol = 1e-12) const;
};

MomentSequence moments_from_measure(const DiscreteMatrixMeasure& mu, int m);

// s^(1) = s, s^(2)_j = -ab s_j + (a+b) s_{j+1} - s_{j+2},
// s^(3)_j = b s_j - s_{j+1}, s^(4)_j = -a s_j + s_{j+1}.
MomentSequence transform_moments(const MomentSequence& seq, int r);

// Block Hankel matrix [s_{k+l+shift}]_{k,l=0..j} of the given sequence.
BlockMatrix hankel_block(const MomentSequence& seq, int j, int shift = 0);

// Column (s_from; ...; s_to).
BlockVector moment_column(const MomentSequence& seq, int from, int to);

struct HankelBundle {
  int r = 1;
  int j = 0;
  BlockMatrix H;
  std::optional<BlockMatrix> Htilde;  // needs s^(r)_{2j+1}
  std::optional<BlockVector> Y;       // (s^(r)_j; ...; s^(r)_{2j-1}), j >= 1
};

// Hankel data of the r-th transformed sequence at order j.
HankelBundle hankel(const MomentSequence& seq, int r, int j);

// Largest j with H_{r,j} defined for this sequence, or -1.
int max_hankel_order(const MomentSequence& seq, int r);

struct UVectors {
  int j = 0;
  BlockVector u;    // -(s_0; ...; s_j)
  BlockVector u1;   // T_j u_j
  BlockVector u3;   // -(I - b T_j) u_j
  BlockVector u4;   // (I - a T_j) u_j
  std::optional<BlockVector> u2hat;  // needs s_{j+1}
  BlockVector v_s0;                  // v_j s_0, the z-part of u_{2,j}

  // u_{2,j}(z) = u2hat + z v_j s_0.
  BlockVector u2(cplx z) const;
};

UVectors u_vectors(const MomentSequence& seq, int j);

// u_{r,j} with u_{2,j} represented by uhat_{2,j}.
BlockVector u_r(const UVectors& u, int r);

enum class Parity { Even, Odd };  // Even: m = 2n+1, Odd: m = 2n

Parity parity_of(int m);
int half_order(int m);  // n with m = 2n or m = 2n+1
std::string to_string(Parity p);

struct NamedEigenvalue {
  std::string name;
  double min_eig;
  double norm;
  bool pd;
  bool psd;
};

struct SolvabilityVerdict {
  Parity parity = Parity::Odd;
  int n = 0;
  bool pd = false;
  bool psd = false;
  std::vector<NamedEigenvalue> min_eigs;
  std::optional<bool> h1tilde_invertible;  // even case
  std::optional<bool> gamma_invertible;    // odd case, both Gamma conditions
  std::vector<std::string> failures;

  bool assumptions_hold() const;
};

SolvabilityVerdict check_solvability(const MomentSequence& seq, double tol = 1e-10);

// Gamma_x = (I + x v^* R^*(x) H_{1,n}^{-1} u_{1,n})^{-1} v^* R^*(x) H_{1,n}^{-1} v.
// Also returns the matrix that has to be inverted.
struct GammaParts {
  MatrixQ gamma;
  MatrixQ denominator;
};
GammaParts gamma_at(const MomentSequence& seq, int n, double x);

struct GeneratedInstance {
  DiscreteMatrixMeasure measure;
  MomentSequence moments;
};

GeneratedInstance random_hausdorff_sequence(int q, int m, Interval interval, std::uint64_t seed);

}  // namespace thmm
