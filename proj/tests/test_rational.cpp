#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "curv/rational.hpp"

using curv::Rational;

TEST_CASE("rationals are stored in lowest terms with positive denominator",
          "[rational]") {
  Rational r(6, 8);
  CHECK(curv::rational_num(r) == 3);
  CHECK(curv::rational_den(r) == 4);

  Rational s(-2, 4);
  CHECK(curv::rational_num(s) == -1);
  CHECK(curv::rational_den(s) == 2);
  CHECK(curv::rational_den(s - 1) > 0);
}

TEST_CASE("rational arithmetic is exact", "[rational]") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 12) == Rational(5, 4) - Rational(14, 12));
  CHECK(Rational(2, 3) * Rational(3, 2) == 1);
  CHECK(Rational(1, 10) + Rational(2, 10) == Rational(3, 10));
}

TEST_CASE("fraction strings round-trip", "[rational]") {
  CHECK(curv::to_fraction_string(Rational(1, 12)) == "1/12");
  CHECK(curv::to_fraction_string(Rational(2)) == "2");
  CHECK(curv::to_fraction_string(Rational(-1, 2)) == "-1/2");
  CHECK(curv::parse_fraction("1/12") == Rational(1, 12));
  CHECK(curv::parse_fraction("2") == Rational(2));
  CHECK_THROWS_AS(curv::parse_fraction("banana"), std::invalid_argument);

  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    long long num = static_cast<long long>(rng() % 2000) - 1000;
    long long den = 1 + rng() % 999;
    Rational r(num, den);
    CHECK(curv::parse_fraction(curv::to_fraction_string(r)) == r);
  }
}

TEST_CASE("approx strings are display-only decimals", "[rational]") {
  CHECK(curv::approx_string(Rational(1, 2)) == "0.5");
  CHECK(curv::approx_string(Rational(2)) == "2");
  CHECK(curv::approx_string(Rational(1, 12)).substr(0, 7) == "0.08333");
}
