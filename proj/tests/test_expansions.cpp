#include <doctest.h>

#include "support.hpp"
#include "thmm/expansions.hpp"
#include "thmm/identities.hpp"
#include "thmm/numerics.hpp"

using namespace thmm;
using thmm::test::max_abs;
using thmm::test::rel_diff;

namespace {

const std::vector<Interval> kIntervals = {{-1, 1}, {0, 1}, {-1, 2}, {0, 2}};

MomentSequence random_seq(int q, int m, const Interval& iv, std::uint64_t seed) {
  return random_hausdorff_sequence(q, m, iv, seed).moments;
}

}  // namespace

TEST_CASE("even expansion at zero on the fixture") {
  const EvenResolvent res(thmm::test::two_atom(3));
  const SeriesCoefficients sc = series_even_at_zero(res);
  REQUIRE(sc.coeffs.size() == 4);
  CHECK(max_abs(sc.coeffs[0].topLeftCorner(1, 1) - Matrix::Identity(1, 1)) < 1e-14);
  const Matrix& last = sc.coeffs.back();
  CHECK(max_abs(last.topLeftCorner(1, 1)) == 0.0);
  CHECK(max_abs(last.bottomRows(1)) == 0.0);
  CHECK(max_abs(last.topRightCorner(1, 1)) > 0.0);
  const std::vector<Matrix> ex = extract_coefficients(res.V(), 4);
  for (std::size_t j = 0; j < 4; ++j) CHECK(rel_diff(sc.coeffs[j], ex[j]) <= 1e-10);
  const ExpansionComparison cmp = compare_expansion(thmm::test::two_atom(3), Center::Zero);
  CHECK(cmp.series.coeffs.size() == 4);
  CHECK(cmp.max_diff() <= 1e-9);
}

TEST_CASE("odd expansion at zero") {
  const OddResolvent fres(thmm::test::two_atom(2));
  const SeriesCoefficients fsc = series_odd_at_zero(fres);
  REQUIRE(fsc.coeffs.size() == 3);
  CHECK(max_abs(fsc.coeffs[0] - fres.coupling().C1 * fres.coupling().D1) == 0.0);
  CHECK(max_abs(fsc.coeffs[0].bottomLeftCorner(1, 1) - fres.coupling().N) == 0.0);
  const std::vector<Matrix> ex = extract_coefficients(fres.V(), 3);
  for (std::size_t j = 0; j < 3; ++j) CHECK(rel_diff(fsc.coeffs[j], ex[j]) <= 1e-10);

  const OddResolvent res(random_seq(2, 4, Interval(-1, 2), 3));
  const SeriesCoefficients sc = series_odd_at_zero(res);
  CHECK(max_abs(sc.coeffs[0] - res.coupling().C1 * res.coupling().D1) == 0.0);
}

TEST_CASE("even expansion at a") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const MomentSequence s = random_seq(2, 5, kIntervals[seed - 1], seed);
    const EvenResolvent res(s);
    const SeriesCoefficients sc = series_even_at_a(res);
    REQUIRE(sc.coeffs.size() == static_cast<std::size_t>(res.n() + 3));
    const double a = s.a();
    Matrix c0 = Matrix::Identity(4, 4);
    c0.topRightCorner(2, 2) = -res.Q1()(a).adjoint() * res.P1()(a).adjoint().inverse();
    CHECK(rel_diff(sc.coeffs[0], c0) <= 1e-11);
    CHECK(rel_diff(sc.coeffs[0], res.U_at(a).M) <= 1e-11);
  }
}

TEST_CASE("odd expansion at a on the fixture") {
  const OddResolvent res(thmm::test::two_atom(2));
  const SeriesCoefficients sc = series_odd_at_a(res);
  REQUIRE(sc.coeffs.size() == 3);
  CHECK(max_abs(sc.coeffs.back().topRows(1)) == 0.0);
  const std::vector<Matrix> ex = res.U().recentered(0.0);
  for (std::size_t j = 0; j < 3; ++j) {
    const Matrix e = j < ex.size() ? ex[j] : Matrix::Zero(2, 2);
    CHECK(rel_diff(sc.coeffs[j], e) <= 1e-10);
  }
  const ExpansionComparison cmp = compare_expansion(thmm::test::two_atom(2), Center::A);
  CHECK(cmp.series.coeffs.size() == 3);
  CHECK(cmp.max_diff() <= 1e-9);
}

TEST_CASE("closed forms match extraction for q in {1, 2}, n in {1, 2, 3}") {
  std::uint64_t seed = 500;
  for (const Interval& iv : kIntervals) {
    for (int q = 1; q <= 2; ++q) {
      for (int n = 1; n <= 3; ++n) {
        for (int m : {2 * n, 2 * n + 1}) {
          const MomentSequence s = random_seq(q, m, iv, seed++);
          for (Center c : {Center::Zero, Center::A}) {
            CAPTURE(seed);
            CAPTURE(m);
            const ExpansionComparison cmp = compare_expansion(s, c);
            const std::size_t expected = static_cast<std::size_t>(m % 2 == 1 ? n + 3 : n + 2);
            CHECK(cmp.series.coeffs.size() == expected);
            CHECK(cmp.max_diff() <= 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("series constant terms agree with the assembled matrices") {
  std::uint64_t seed = 600;
  for (const Interval& iv : kIntervals) {
    for (int n = 1; n <= 3; ++n) {
      const MomentSequence s = random_seq(2, 2 * n + 1, iv, seed++);
      const EvenResolvent res(s);
      const Matrix a0 = series_even_at_zero(res).coeffs[0];
      const Matrix c0 = series_even_at_a(res).coeffs[0];
      CHECK(max_abs(a0 - res.V_at(0.0).M) <= 1e-11 * (1.0 + max_abs(a0)));
      CHECK(max_abs(c0 - res.U_at(s.a()).M) <= 1e-11 * (1.0 + max_abs(c0)));
    }
  }
}

TEST_CASE("degree profile of V") {
  std::uint64_t seed = 700;
  for (const Interval& iv : kIntervals) {
    for (int n = 0; n <= 3; ++n) {
      const EvenResolvent er(random_seq(2, 2 * n + 1, iv, seed++));
      CHECK(er.V().numerical_degree(1e-12) == n + 2);
      if (n >= 1) {
        const OddResolvent orr(random_seq(2, 2 * n, iv, seed++));
        CHECK(orr.V().numerical_degree(1e-12) == n + 1);
      }
    }
  }
}

TEST_CASE("the identity linking the two Hankel inverses holds standalone") {
  std::uint64_t seed = 800;
  for (const Interval& iv : kIntervals) {
    for (int q = 1; q <= 2; ++q) {
      const MomentSequence s = random_seq(q, 5, iv, seed++);
      const IdentityReport rep = run_battery(s, default_grid(iv));
      const IdentityEntry* e = rep.find("eqZZ1");
      REQUIRE(e != nullptr);
      REQUIRE(e->residual.has_value());
      CHECK(*e->residual <= 1e-11);
    }
  }
}

TEST_CASE("coefficient extraction pads with zeros") {
  const MatrixPolynomial p = MatrixPolynomial::scalar({1.0, 2.0}, 1);
  const std::vector<Matrix> c = extract_coefficients(p, 4);
  REQUIRE(c.size() == 4);
  CHECK(c[3] == Matrix::Zero(1, 1));
  const std::vector<Matrix> r = extract_recentered(p, 1.0, 3);
  CHECK(std::abs(r[0](0, 0) - 3.0) < 1e-15);
  CHECK(std::abs(r[1](0, 0) - 2.0) < 1e-15);
  CHECK(r[2] == Matrix::Zero(1, 1));
}
