#include <doctest.h>

#include "support.hpp"
#include "thmm/blockkit.hpp"
#include "thmm/numerics.hpp"

using namespace thmm;
using thmm::test::max_abs;

namespace {

const std::vector<cplx> kGrid = {{0.0, 0.0}, {0.5, 0.0}, {-1.5, 0.25}, {2.0, -1.0}, {0.0, 1.0}};

}  // namespace

TEST_CASE("make_shift examples") {
  CHECK(make_shift(0, 1) == Matrix::Zero(1, 1));

  Matrix t1(2, 2);
  t1 << 0, 0, 1, 0;
  CHECK(make_shift(1, 1) == t1);

  const Matrix t = make_shift(2, 2);
  REQUIRE(t.rows() == 6);
  Matrix expected = Matrix::Zero(6, 6);
  expected.block(2, 0, 2, 2) = Matrix::Identity(2, 2);
  expected.block(4, 2, 2, 2) = Matrix::Identity(2, 2);
  CHECK(t == expected);
}

TEST_CASE("make_truncations examples") {
  const auto [l1, l2] = make_truncations(1, 1);
  CHECK(l1 == thmm::test::column({0, 1}));
  CHECK(l2 == thmm::test::column({1, 0}));

  const auto [m1, m2] = make_truncations(2, 1);
  CHECK(m1 * m2.adjoint() == make_shift(2, 1));
  CHECK(m2.adjoint() * m1 == make_shift(1, 1));
}

TEST_CASE("shift identities hold exactly") {
  for (int q = 1; q <= 3; ++q) {
    for (int j = 1; j <= 6; ++j) {
      CAPTURE(q);
      CAPTURE(j);
      const Matrix t = make_shift(j, q);
      const Matrix tm = make_shift(j - 1, q);
      const auto [l1, l2] = make_truncations(j, q);
      REQUIRE(l1.rows() == (j + 1) * q);
      REQUIRE(l1.cols() == j * q);
      CHECK(l1.adjoint() * t == l2.adjoint());
      CHECK(t * l2 == l1);
      CHECK(l1.adjoint() * t * l2 == Matrix::Identity(j * q, j * q));
      CHECK(l1.adjoint() * t * l1 == tm);
      CHECK(l2.adjoint() * t * l2 == tm);
      CHECK(t * l1 == l1 * tm);
      CHECK(t.adjoint() * l2 == l2 * tm.adjoint());
      CHECK(l1 * l2.adjoint() == t);
      CHECK(l2.adjoint() * l1 == tm);
    }
  }
}

TEST_CASE("shift_resolvent examples") {
  const cplx z(0.3, -0.7);
  Matrix r1(2, 2);
  r1 << 1, 0, z, 1;
  CHECK(max_abs(shift_resolvent(1, 1, z) - r1) == 0.0);
  for (int q = 1; q <= 2; ++q) {
    CHECK(shift_resolvent(3, q, 0.0) == Matrix::Identity(4 * q, 4 * q));
  }
  const Matrix r = shift_resolvent(3, 1, 2.0);
  CHECK(std::abs(r(3, 0) - 8.0) < 1e-15);
  CHECK(max_abs(r - thmm::test::dense_shift_inverse(3, 1, 2.0)) < 1e-12);
}

TEST_CASE("shift_resolvent inverts I - zT and commutes with truncation") {
  for (int q = 1; q <= 3; ++q) {
    for (int j = 1; j <= 6; ++j) {
      const auto [l1, l2] = make_truncations(j, q);
      const Matrix t = make_shift(j, q);
      const Eigen::Index n = static_cast<Eigen::Index>(j + 1) * q;
      for (cplx z : kGrid) {
        CAPTURE(q);
        CAPTURE(j);
        CAPTURE(z);
        const Matrix r = shift_resolvent(j, q, z);
        const Matrix rm = shift_resolvent(j - 1, q, z);
        const double scale_j = 1.0 + std::pow(std::abs(z), j);
        CHECK(max_abs((Matrix::Identity(n, n) - z * t) * r - Matrix::Identity(n, n)) <=
              1e-13 * (1.0 + std::pow(std::abs(z), j + 1)));
        CHECK(max_abs(r * l1 - l1 * rm) <= 1e-13 * scale_j);
        CHECK(max_abs(r.adjoint() * l2 - l2 * rm.adjoint()) <= 1e-13 * scale_j);
        CHECK(max_abs(r - thmm::test::dense_shift_inverse(j, q, z)) <= 1e-12 * scale_j);
      }
    }
  }
}

TEST_CASE("make_v examples") {
  CHECK(make_v(0, 2) == Matrix::Identity(2, 2));
  CHECK(make_v(2, 1) == thmm::test::column({1, 0, 0}));
  const auto [l1, l2] = make_truncations(3, 1);
  CHECK(l2 * make_v(2, 1) == make_v(3, 1));
}

TEST_CASE("signature matrices") {
  const Signatures s1 = signature_matrices(1);
  Matrix j(2, 2);
  j << 0, cplx(0, -1), cplx(0, 1), 0;
  Matrix jf(2, 2);
  jf << 0, 1, 1, 0;
  CHECK(s1.J == j);
  CHECK(s1.Jfrak == jf);
  for (int q = 1; q <= 4; ++q) {
    const Signatures s = signature_matrices(q);
    CHECK(s.J * s.J == Matrix::Identity(2 * q, 2 * q));
    CHECK(s.J.adjoint() == s.J);
    CHECK(s.Jfrak.adjoint() == s.Jfrak);
    CHECK(s.Jfrak * s.Jfrak == Matrix::Identity(2 * q, 2 * q));
  }
}

TEST_CASE("block helpers") {
  Matrix m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) m(i, k) = cplx(i, k);
  CHECK(block(m, 2, 1, 0) == m.block(2, 0, 2, 2));
  const Matrix a = Matrix::Constant(2, 2, 1.0);
  const Matrix bb = block2x2(a, 2.0 * a, 3.0 * a, 4.0 * a);
  CHECK(bb.rows() == 4);
  CHECK(block(bb, 2, 1, 0) == 3.0 * a);
  CHECK(stack_blocks({a, 2.0 * a}).rows() == 4);
  CHECK(is_hermitian(hermitize(m)));
  CHECK_FALSE(is_hermitian(m));
}

TEST_CASE("shift arguments are validated") {
  CHECK_THROWS_AS(make_shift(-1, 1), InvalidArgument);
  CHECK_THROWS_AS(make_shift(1, 0), InvalidArgument);
  CHECK_THROWS_AS(make_truncations(0, 1), InvalidArgument);
}
