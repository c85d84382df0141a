#include "shiftlab/rational.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace shiftlab;

TEST_CASE("parse_rational accepts integers and canonicalizes fractions") {
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(to_string(parse_rational("2/4")) == "1/2");
  CHECK(to_string(parse_rational("6/3")) == "2");
  CHECK(to_string(parse_rational("73/1296")) == "73/1296");
}

TEST_CASE("parse_rational rejects malformed text and zero denominators") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
}

TEST_CASE("pow keeps results canonical") {
  CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(pow(Rational(5, 7), 0) == Rational(1));
  CHECK(to_string(pow(Rational(-1, 2), 5)) == "-1/32");
}

TEST_CASE("to_double is close to the exact value") {
  CHECK(to_double(Rational(1, 4)) == doctest::Approx(0.25));
}
