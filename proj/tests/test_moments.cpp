#include <doctest.h>

#include "support.hpp"
#include "thmm/blockkit.hpp"
#include "thmm/moments.hpp"
#include "thmm/numerics.hpp"

using namespace thmm;
using thmm::test::column;
using thmm::test::max_abs;
using thmm::test::scalar;

namespace {

struct Case {
  int q;
  int m;
  Interval iv;
  std::uint64_t seed;
};

std::vector<Case> random_cases() {
  std::vector<Case> cs;
  const std::vector<Interval> ivs = {{-1, 1}, {0, 1}, {0.5, 2}, {-2, -0.5}, {-1, 2}};
  std::uint64_t seed = 100;
  for (const Interval& iv : ivs)
    for (int q = 1; q <= 2; ++q)
      for (int m : {2, 3, 4, 5}) cs.push_back({q, m, iv, seed++});
  return cs;
}

}  // namespace

TEST_CASE("moments from atoms") {
  const MomentSequence one = moments_from_measure(thmm::test::single_atom_measure(), 2);
  CHECK(one.order() == 2);
  CHECK(max_abs(one[0] - scalar(1.0)) == 0.0);
  CHECK(max_abs(one[1] - scalar(0.5)) == 0.0);
  CHECK(max_abs(one[2] - scalar(0.25)) == 0.0);

  const MomentSequence two = thmm::test::two_atom(4);
  const double expected[] = {2.0, 1.0, 5.0 / 8, 7.0 / 16, 41.0 / 128};
  for (int j = 0; j <= 4; ++j) CHECK(std::abs(two[j](0, 0) - expected[j]) < 1e-15);

  DiscreteMatrixMeasure empty;
  empty.q = 2;
  const MomentSequence zero = moments_from_measure(empty, 3);
  for (int j = 0; j <= 3; ++j) CHECK(zero[j] == Matrix::Zero(2, 2));
}

TEST_CASE("transformed moments on the two-atom fixture") {
  const DiscreteMatrixMeasure mu = thmm::test::two_atom_measure();
  const MomentSequence s = thmm::test::two_atom(4);
  const MomentSequence s3 = transform_moments(s, 3);
  CHECK(std::abs(s3[0](0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(s3[1](0, 0) - 3.0 / 8) < 1e-15);
  CHECK(std::abs(s3[2](0, 0) - 3.0 / 16) < 1e-15);
  const MomentSequence s4 = transform_moments(s, 4);
  CHECK(std::abs(s4[0](0, 0) - 1.0) < 1e-15);
  const MomentSequence s2 = transform_moments(s, 2);
  CHECK(std::abs(s2[0](0, 0) - 3.0 / 8) < 1e-15);
  CHECK(s2.order() == 2);
  CHECK(s3.order() == 3);
  for (int r = 1; r <= 4; ++r) {
    const MomentSequence t = transform_moments(s, r);
    for (int j = 0; j <= t.order(); ++j) {
      CHECK(max_abs(t[j] - thmm::test::atom_moment(mu, r, j)) < 1e-14);
    }
  }
}

TEST_CASE("transformed moments agree with atom sums on random measures") {
  for (const Case& c : random_cases()) {
    const GeneratedInstance inst = random_hausdorff_sequence(c.q, c.m, c.iv, c.seed);
    for (int r = 1; r <= 4; ++r) {
      if ((r == 2 && c.m < 2) || c.m < 1) continue;
      const MomentSequence t = transform_moments(inst.moments, r);
      for (int j = 0; j <= t.order(); ++j) {
        const MatrixQ oracle = thmm::test::atom_moment(inst.measure, r, j);
        CHECK(max_abs(t[j] - oracle) <= 1e-12 * (1.0 + max_abs(oracle)));
      }
    }
  }
}

TEST_CASE("Hankel examples") {
  const MomentSequence s = thmm::test::two_atom(3);
  const HankelBundle h = hankel(s, 1, 1);
  Matrix expected(2, 2);
  expected << 2, 1, 1, 5.0 / 8;
  CHECK(max_abs(h.H - expected) < 1e-15);
  CHECK(std::abs(h.H.determinant() - 0.25) < 1e-14);
  REQUIRE(h.Htilde.has_value());
  Matrix ht(2, 2);
  ht << 1, 5.0 / 8, 5.0 / 8, 7.0 / 16;
  CHECK(max_abs(*h.Htilde - ht) < 1e-15);
  REQUIRE(h.Y.has_value());
  CHECK(max_abs(*h.Y - column({1})) < 1e-15);

  const MomentSequence one = moments_from_measure(thmm::test::single_atom_measure(), 2);
  const Matrix h1 = hankel(one, 1, 1).H;
  Matrix oh(2, 2);
  oh << 1, 0.5, 0.5, 0.25;
  CHECK(max_abs(h1 - oh) == 0.0);
  CHECK_FALSE(is_invertible(h1));

  CHECK_THROWS_AS(hankel_block(s, 2), InvalidArgument);
  CHECK(max_hankel_order(s, 1) == 1);
  CHECK(max_hankel_order(s, 2) == 0);
  CHECK(max_hankel_order(s, 3) == 1);
}

TEST_CASE("u vectors on the fixture") {
  const MomentSequence s = thmm::test::two_atom(3);
  const UVectors u = u_vectors(s, 1);
  CHECK(max_abs(u.u - column({-2, -1})) == 0.0);
  CHECK(max_abs(u.u1 - column({0, -2})) == 0.0);
  CHECK(max_abs(u.u3 - column({2, -1})) == 0.0);
  // a = 0 makes u_{4,j} = u_j.
  CHECK(max_abs(u.u4 - u.u) == 0.0);
  REQUIRE(u.u2hat.has_value());
  // u_{2,j}(z) = uhat_{2,j} + z v_j s_0.
  const cplx z(0.4, 0.3);
  CHECK(max_abs(u.u2(z) - (*u.u2hat + z * make_v(1, 1) * s[0])) < 1e-15);
  CHECK(max_abs(u_r(u, 3) - u.u3) == 0.0);
}

TEST_CASE("solvability verdicts") {
  const SolvabilityVerdict v2 = check_solvability(thmm::test::two_atom(2));
  CHECK(v2.pd);
  CHECK(v2.parity == Parity::Odd);
  CHECK(v2.n == 1);
  REQUIRE(v2.min_eigs.size() == 2);
  CHECK(v2.min_eigs[0].name == "H_{1,1}");
  CHECK(v2.min_eigs[0].min_eig > 0.0);
  CHECK(std::abs(v2.min_eigs[1].min_eig - 3.0 / 8) < 1e-15);

  const SolvabilityVerdict bad = check_solvability(moments_from_measure(thmm::test::single_atom_measure(), 2));
  CHECK_FALSE(bad.pd);
  REQUIRE_FALSE(bad.failures.empty());
  CHECK(bad.failures[0].find("H_{1,1}") != std::string::npos);

  const SolvabilityVerdict v3 = check_solvability(thmm::test::two_atom(3));
  CHECK(v3.parity == Parity::Even);
  CHECK(v3.pd);
  CHECK(v3.min_eigs[0].name == "H_{3,1}");
  CHECK(v3.min_eigs[1].name == "H_{4,1}");
  CHECK(v3.h1tilde_invertible.value_or(false));
  CHECK(v3.assumptions_hold());
}

TEST_CASE("generator examples and determinism") {
  const GeneratedInstance a = random_hausdorff_sequence(1, 2, Interval(0, 1), 42);
  CHECK(check_solvability(a.moments).pd);
  const GeneratedInstance again = random_hausdorff_sequence(1, 2, Interval(0, 1), 42);
  for (int j = 0; j <= 2; ++j) CHECK(a.moments[j] == again.moments[j]);

  const GeneratedInstance b = random_hausdorff_sequence(2, 5, Interval(-1, 2), 7);
  CHECK(check_solvability(b.moments).pd);
  for (int j = 0; j <= 5; ++j) {
    CHECK(b.moments[j].rows() == 2);
    CHECK(max_abs(b.moments[j] - b.moments[j].adjoint()) == 0.0);
  }
  CHECK_THROWS_AS(random_hausdorff_sequence(0, 2, Interval(0, 1), 1), InvalidArgument);
}

TEST_CASE("Hankel relations between the transformed sequences") {
  for (const Case& c : random_cases()) {
    const MomentSequence s = random_hausdorff_sequence(c.q, c.m, c.iv, c.seed).moments;
    const double a = s.a();
    const double b = s.b();
    CAPTURE(c.seed);
    for (int j = 0; 2 * j + 1 <= c.m; ++j) {
      const Matrix h1 = hankel_block(s, j);
      const Matrix ht = hankel_block(s, j, 1);
      const Matrix h3 = hankel(s, 3, j).H;
      const Matrix h4 = hankel(s, 4, j).H;
      const double scale = 1e-12 * (1.0 + ht.norm());
      CHECK((h3 - (b * h1 - ht)).norm() <= scale);
      CHECK((h4 - (-a * h1 + ht)).norm() <= scale);
      CHECK((ht - (a * h3 + b * h4) / (b - a)).norm() <= scale);
      if (2 * j + 2 <= c.m) {
        const Matrix h2 = hankel(s, 2, j).H;
        const Matrix h4t = *hankel(s, 4, j).Htilde;
        const Matrix h3t = *hankel(s, 3, j).Htilde;
        CHECK((h2 - (b * h4 - h4t)).norm() <= 1e-12 * (1.0 + h4t.norm()));
        CHECK((h2 - (-a * h3 + h3t)).norm() <= 1e-12 * (1.0 + h3t.norm()));
      }
    }
  }
}

TEST_CASE("Htilde is definite when the interval does not straddle zero") {
  for (const Case& c : random_cases()) {
    if (c.iv.a < 0.0 && c.iv.b > 0.0) continue;
    const MomentSequence s = random_hausdorff_sequence(c.q, c.m, c.iv, c.seed).moments;
    for (int j = 0; 2 * j + 1 <= c.m; ++j) {
      const Matrix ht = hankel_block(s, j, 1);
      const double lo = min_eigenvalue(ht);
      const double hi = max_eigenvalue(ht);
      CHECK(lo * hi > 0.0);
      CHECK(std::min(std::abs(lo), std::abs(hi)) > 1e-12 * ht.norm());
    }
  }
}

TEST_CASE("measures with enough atoms give positive definite H_{1,n}") {
  for (const Case& c : random_cases()) {
    const GeneratedInstance inst = random_hausdorff_sequence(c.q, c.m, c.iv, c.seed);
    const int n = c.m / 2;
    REQUIRE(static_cast<int>(inst.measure.atoms.size()) >= n + 2);
    CHECK(min_eigenvalue(hankel_block(inst.moments, n)) > 0.0);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(Interval(1.0, 0.0), InvalidArgument);
  Matrix nh(2, 2);
  nh << 1, 2, 3, 4;
  CHECK_THROWS_AS(MomentSequence(Interval(0, 1), {nh}), InvalidArgument);
  DiscreteMatrixMeasure mu = thmm::test::two_atom_measure();
  mu.atoms.push_back({2.0, scalar(1.0)});
  CHECK_THROWS_AS(mu.validate(), InvalidArgument);
  mu = thmm::test::two_atom_measure();
  mu.atoms[0].weight = scalar(-1.0);
  CHECK_THROWS_AS(mu.validate(), InvalidArgument);
  CHECK_THROWS_AS(transform_moments(thmm::test::two_atom(1), 2), InvalidArgument);
  CHECK_THROWS_AS(u_vectors(thmm::test::two_atom(1), 2), InvalidArgument);
}
