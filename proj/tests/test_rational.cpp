#include <doctest.h>

#include "fibertree/errors.hpp"
#include "fibertree/rational.hpp"

using namespace fibertree;

TEST_CASE("parse_rational accepts integers, fractions and decimals") {
  CHECK(parse_rational("-3") == -3);
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("1.25") == Rational(5, 4));
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("2e-3") == Rational(1, 500));
  CHECK(parse_rational("1.5E2") == 150);
  CHECK(parse_rational(" 7 ") == 7);
}

TEST_CASE("parse_rational rejects malformed text") {
  CHECK_THROWS_AS(parse_rational(""), InvalidInput);
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("x/2"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("1.2.3"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("inf"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("-"), InvalidInput);
}

TEST_CASE("to_string is canonical") {
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(to_string(Rational(-3, 6)) == "-1/2");
  CHECK(to_string(Rational(0)) == "0");
}

TEST_CASE("to_decimal rounds half away from zero") {
  CHECK(to_decimal(Rational(1, 3), 3) == "0.333");
  CHECK(to_decimal(Rational(2, 3), 2) == "0.67");
  CHECK(to_decimal(Rational(-5, 2), 0) == "-3");
  CHECK(to_decimal(Rational(1, 8), 2) == "0.13");
  CHECK(to_decimal(Rational(-1, 1000), 2) == "0.00");
  CHECK(to_decimal(Rational(7), 1) == "7.0");
}

TEST_CASE("round trip through text") {
  for (long p = -20; p <= 20; ++p) {
    for (long q = 1; q <= 7; ++q) {
      Rational r(p, q);
      r.canonicalize();
      CHECK(parse_rational(to_string(r)) == r);
    }
  }
}
