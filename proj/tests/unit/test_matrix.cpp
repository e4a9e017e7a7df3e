#include <cmath>

#include "doctest.h"

#include "torsionlab/matrix.hpp"

using torsionlab::Rational;
using torsionlab::RationalMatrix;

TEST_CASE("rational parsing") {
  CHECK(torsionlab::parse_rational("3/6") == Rational(1, 2));
  CHECK(torsionlab::parse_rational("-1.25") == Rational(-5, 4));
  CHECK(torsionlab::parse_rational(" 7 ") == Rational(7));
  CHECK(torsionlab::to_string(Rational(-6, 4)) == "-3/2");
  CHECK_THROWS_AS(torsionlab::parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(torsionlab::parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(torsionlab::parse_rational(""), std::invalid_argument);
}

TEST_CASE("log_abs survives huge rationals") {
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 500);
  const Rational r(big, 3);
  CHECK(torsionlab::log_abs(r) == doctest::Approx(500 * std::log(10.0) - std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("determinant, inverse and rank") {
  const auto a = RationalMatrix::from_rows({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  CHECK(a.determinant() == 18);
  const auto inv = a.inverse();
  REQUIRE(inv);
  CHECK(a * *inv == RationalMatrix::identity(3));
  CHECK(RationalMatrix::from_rows({{1, 2}, {2, 4}}).rank() == 1);
  CHECK(RationalMatrix::from_rows({{1, 2}, {2, 4}}).inverse() == std::nullopt);
  CHECK(RationalMatrix(0, 0).determinant() == 1);
  CHECK(RationalMatrix::from_rows({{0, 1}, {1, 0}}).determinant() == -1);
}

TEST_CASE("pivots and kernel") {
  const auto d = RationalMatrix::from_rows({{1, 2, 0, 1}, {2, 4, 1, 3}});
  CHECK(d.pivot_columns() == std::vector<std::size_t>{0, 2});
  const auto k = d.kernel_basis();
  CHECK(k.cols() == 2);
  CHECK((d * k).is_zero());
}

TEST_CASE("solve reports inconsistency") {
  const auto a = RationalMatrix::from_rows({{1, 1}, {2, 2}});
  CHECK_FALSE(torsionlab::solve(a, RationalMatrix::from_rows({{1}, {3}})));
  const auto x = torsionlab::solve(a, RationalMatrix::from_rows({{1}, {2}}));
  REQUIRE(x);
  CHECK(a * *x == RationalMatrix::from_rows({{1}, {2}}));
}

TEST_CASE("concatenation with empty operands") {
  const auto a = RationalMatrix::from_rows({{1}, {2}});
  CHECK(torsionlab::hconcat(RationalMatrix(0, 0), a) == a);
  CHECK(torsionlab::hconcat(a, RationalMatrix(2, 0)) == a);
  CHECK(torsionlab::block_diagonal(a, RationalMatrix(0, 1)).cols() == 2);
}
