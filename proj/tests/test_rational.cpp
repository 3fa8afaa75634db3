#include <doctest.h>

#include "beattycensus/errors.hpp"
#include "beattycensus/rational.hpp"

using bc::Rational;

TEST_SUITE("rational") {

TEST_CASE("parse integer, fraction and decimal forms") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational::parse("-1/3") == Rational(-1, 3));
  CHECK(Rational::parse("0.125") == Rational(1, 8));
  CHECK(Rational::parse("-0.5") == Rational(-1, 2));
  CHECK(Rational::parse("2.5e-3") == Rational(1, 400));
  CHECK(Rational::parse("1e8") == Rational(100000000));
  CHECK(Rational::parse("1.5E2") == Rational(150));
}

TEST_CASE("normalization") {
  const Rational r(4, -6);
  CHECK(r.num() == -2);
  CHECK(r.den() == 3);
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(Rational(0, 5).den() == 1);
}

TEST_CASE("arithmetic and ordering") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(-Rational(2, 7) == Rational(-2, 7));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(3, 9) == Rational(1, 3));
  CHECK(Rational(5, 2).to_double() == doctest::Approx(2.5));
}

TEST_CASE("round trip through to_string") {
  for (const char* s : {"0", "5", "-7", "1/2", "-1/3", "22/7"}) {
    CHECK(Rational::parse(s).to_string() == s);
  }
}

TEST_CASE("malformed input is a usage error") {
  CHECK_THROWS_AS(Rational::parse(""), bc::UsageError);
  CHECK_THROWS_AS(Rational::parse("abc"), bc::UsageError);
  CHECK_THROWS_AS(Rational::parse("1/0"), bc::UsageError);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), bc::UsageError);
  CHECK_THROWS_AS(Rational::parse("3/"), bc::UsageError);
  CHECK_THROWS_AS(Rational(1, 0), bc::UsageError);
}

TEST_CASE("results outside 64 bits are a resource error") {
  const Rational big(INT64_MAX);
  CHECK_THROWS_AS(big + Rational(1), bc::ResourceError);
  CHECK_THROWS_AS(Rational::parse("1e40"), bc::ResourceError);
}

}
