#include <doctest.h>

#include <stdexcept>

#include "tfmst/rational.hpp"

using tfmst::Rational;

TEST_CASE("rational parsing accepts integers, decimals and fractions") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("2.5") == Rational(5, 2));
  CHECK(Rational::parse("0.125") == Rational(1, 8));
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational::parse("0") == Rational(0));

  CHECK_FALSE(Rational::parse(""));
  CHECK_FALSE(Rational::parse("-1"));
  CHECK_FALSE(Rational::parse("1/0"));
  CHECK_FALSE(Rational::parse("1."));
  CHECK_FALSE(Rational::parse(".5"));
  CHECK_FALSE(Rational::parse("3x"));
  CHECK_FALSE(Rational::parse("99999999999999999999"));
}

TEST_CASE("rational is normalized and prints canonically") {
  CHECK(Rational(10, -4).num() == -5);
  CHECK(Rational(10, -4).den() == 2);
  CHECK(Rational(4, 2).to_string() == "2");
  CHECK(Rational(3, 9).to_string() == "1/3");
  for (const char* text : {"0", "12", "1/3", "7/2"})
    CHECK(Rational::parse(text)->to_string() == text);
}

TEST_CASE("rational arithmetic and ordering") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(3, 4) == Rational(-1, 4));
  CHECK(Rational(2, 3) < Rational(3, 4));
  CHECK(Rational(4) > Rational(7, 2));
  CHECK(Rational(4) == Rational(8, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(INT64_MAX) + Rational(1), std::overflow_error);
}
