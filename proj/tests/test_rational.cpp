#include "doctest.h"
#include "sts/rational.hpp"

using namespace sts;

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("0.8") == Rational(4, 5));
  CHECK(parse_rational("2.25") == Rational(9, 4));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("format_rational renders lowest terms") {
  CHECK(format_rational(Rational(4, 8)) == "1/2");
  CHECK(format_rational(Rational(6, 3)) == "2");
  CHECK(format_rational(Rational(0)) == "0");
}

TEST_CASE("floor and ceil on rationals") {
  CHECK(floor_rat(Rational(7, 4)) == 1);
  CHECK(floor_rat(Rational(-7, 4)) == -2);
  CHECK(floor_rat(Rational(2)) == 2);
  CHECK(ceil_rat(Rational(7, 4)) == 2);
  CHECK(ceil_rat(Rational(-7, 4)) == -1);
  CHECK(floor_long(Rational(19, 16)) == 1);
}
