#include <doctest.h>

#include <cmath>
#include <random>

#include "beattycensus/alpha.hpp"
#include "beattycensus/errors.hpp"
#include "oracles.hpp"

using namespace bc;

TEST_SUITE("alpha") {

TEST_CASE("construction validates irrationality and size") {
  CHECK_NOTHROW(AlphaValue::sqrt(2));
  CHECK_THROWS_AS(AlphaValue::sqrt(4), UsageError);
  CHECK_THROWS_AS(AlphaValue::quadratic(1, 0, 1, 2), UsageError);
  CHECK_THROWS_AS(AlphaValue::quadratic(0, 1, 2, 2), UsageError);   // sqrt(2)/2 < 1
  CHECK_THROWS_AS(AlphaValue::quadratic(-1, 1, 1, 2), UsageError);  // sqrt(2) - 1 < 1
  CHECK_THROWS_AS(AlphaValue::quadratic(1, 1, 0, 5), UsageError);
  CHECK_THROWS_AS(AlphaValue::quadratic(1, 1, 2, -5), UsageError);
  CHECK_THROWS_AS(AlphaValue::quadratic(1LL << 40, 1, 1, 2), UsageError);
}

TEST_CASE("normalized quadratic form") {
  const auto a = AlphaValue::quadratic(2, 2, 4, 5);
  const auto& f = a.quadratic_form();
  CHECK(f.p == 1);
  CHECK(f.q == 1);
  CHECK(f.r == 2);
  CHECK(f.d == 5);
  CHECK(a.label() == "quad:1,1,2,5");
  const auto b = AlphaValue::quadratic(-1, -1, -2, 5);
  CHECK(b.quadratic_form().p == 1);
  CHECK(b.quadratic_form().r == 2);
  CHECK(AlphaValue::sqrt(3).label() == "sqrt:3");
}

TEST_CASE("parse grammar") {
  CHECK(AlphaValue::parse("sqrt:2").to_double() == doctest::Approx(std::sqrt(2.0)));
  CHECK(AlphaValue::parse("quad:1,1,2,5").to_double() == doctest::Approx((1 + std::sqrt(5.0)) / 2));
  CHECK(AlphaValue::parse("e").to_double() == doctest::Approx(std::exp(1.0)));
  CHECK(AlphaValue::parse("pi").to_double() == doctest::Approx(M_PI));
  CHECK_FALSE(AlphaValue::parse("e").is_exact());
  CHECK(AlphaValue::parse("sqrt:2").is_exact());
  CHECK_THROWS_AS(AlphaValue::parse("sqrt:4"), UsageError);
  CHECK_THROWS_AS(AlphaValue::parse("sqrt:x"), UsageError);
  CHECK_THROWS_AS(AlphaValue::parse("quad:1,2,3"), UsageError);
  CHECK_THROWS_AS(AlphaValue::parse("tau"), UsageError);
  CHECK_THROWS_AS(AlphaValue::parse("e").quadratic_form(), UsageError);
}

TEST_CASE("double-double value") {
  const auto [hi, lo] = AlphaValue::sqrt(2).to_double_double();
  CHECK(hi == std::sqrt(2.0));
  CHECK(std::abs(lo) < 1e-16);
  CHECK(lo != 0.0);
  const auto [rhi, rlo] = AlphaValue::sqrt(2).to_double_double(Operand::Reciprocal);
  CHECK(rhi == doctest::Approx(std::sqrt(0.5)));
  CHECK(std::abs(rlo) < 1e-16);
}

TEST_CASE("floor and sign of affine expressions") {
  const auto s2 = AlphaValue::sqrt(2);
  CHECK(s2.floor_affine(0, 5) == 7);
  CHECK(s2.floor_affine(Rational(1, 2), 2) == 3);
  CHECK(s2.floor_affine(0, -1) == -2);
  CHECK(s2.floor_affine(0, 10, Operand::Reciprocal) == 7);
  CHECK(s2.sign_affine(-7, 5) == 1);
  CHECK(s2.sign_affine(-8, 5) == -1);
  CHECK(s2.sign_affine(0, 0) == 0);
  const auto e = AlphaValue::euler_e();
  CHECK(e.floor_affine(0, 10) == 27);
  CHECK(e.floor_affine(0, 12345) == 33557);
  const auto pi = AlphaValue::pi();
  CHECK(pi.floor_affine(0, 100) == 314);
  CHECK(pi.floor_affine(0, -7) == -22);
}

TEST_CASE("near-integer decisions and the precision cap") {
  // q*sqrt(2) - p = -2.47e-18 for this Pell convergent
  const Rational p(202605639573839043LL), q(143263821649299118LL);
  CHECK(AlphaValue::sqrt(2).floor_affine(-p, q) == -1);
  CHECK(AlphaValue::adaptive_quadratic(0, 1, 1, 2).floor_affine(-p, q) == -1);
  const auto capped = AlphaValue::adaptive_quadratic(0, 1, 1, 2, {64, 64});
  CHECK_THROWS_AS(capped.floor_affine(-p, q), PrecisionError);
  CHECK_THROWS_AS(capped.sign_affine(-p, q), PrecisionError);
  CHECK(AlphaValue::adaptive_quadratic(0, 1, 1, 2, {64, 128}).sign_affine(-p, q) == -1);
}

TEST_CASE("nearest integer distance") {
  const auto s2 = AlphaValue::sqrt(2);
  CHECK(s2.nearest_int_distance_affine(0, 1) == doctest::Approx(0.41421356237309504880).epsilon(1e-15));
  CHECK(s2.nearest_int_distance_affine(0, 5) == doctest::Approx(0.07106781186547524400844362).epsilon(1e-15));
  const Rational p(202605639573839043LL), q(143263821649299118LL);
  CHECK(s2.nearest_int_distance_affine(-p, q) == doctest::Approx(2.46784838295567995e-18).epsilon(1e-14));
  CHECK(AlphaValue::adaptive_quadratic(0, 1, 1, 2).nearest_int_distance_affine(-p, q) ==
        doctest::Approx(2.46784838295567995e-18).epsilon(1e-14));
}

TEST_CASE("exact and adaptive forms agree on random affine floors") {
  const oracle::Quad quads[] = {{0, 1, 1, 2}, {0, 1, 1, 3}, {1, 1, 2, 5}, {1, 1, 1, 3}, {5, -1, 1, 7}};
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> num(-1'000'000, 1'000'000);
  std::uniform_int_distribution<std::int64_t> den(1, 1000);
  for (const auto& f : quads) {
    const auto exact = AlphaValue::quadratic(f.p, f.q, f.r, f.d);
    const auto adaptive = AlphaValue::adaptive_quadratic(f.p, f.q, f.r, f.d);
    for (int i = 0; i < 2000; ++i) {
      const Rational u(num(rng), den(rng)), v(num(rng), den(rng));
      for (auto which : {Operand::Alpha, Operand::Reciprocal}) {
        REQUIRE(exact.floor_affine(u, v, which) == adaptive.floor_affine(u, v, which));
        REQUIRE(exact.sign_affine(u, v, which) == adaptive.sign_affine(u, v, which));
      }
    }
  }
}

TEST_CASE("exact floors match the integer square root oracle") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> k(-1'000'000'000, 1'000'000'000);
  const auto a = AlphaValue::quadratic(1, 1, 2, 5);
  for (int i = 0; i < 5000; ++i) {
    const auto v = k(rng);
    if (v <= 0) continue;
    REQUIRE(a.floor_affine(Rational(1, 3), v) == oracle::quad_term(1, 1, 2, 5, v, 1, 3));
  }
}

}
