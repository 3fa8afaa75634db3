#include <doctest.h>

#include <cmath>
#include <random>

#include "beattycensus/beatty.hpp"
#include "beattycensus/errors.hpp"
#include "oracles.hpp"

using namespace bc;
using namespace bc::beatty;

namespace {

const AlphaValue kSqrt2 = AlphaValue::sqrt(2);
const AlphaValue kGolden = AlphaValue::quadratic(1, 1, 2, 5);

std::vector<std::int64_t> as_vector(const std::set<std::int64_t>& s, std::int64_t lo = 1) {
  std::vector<std::int64_t> out;
  for (auto v : s) {
    if (v >= lo) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_SUITE("beatty") {

TEST_CASE("floor_div_alpha") {
  CHECK(floor_div_alpha(10, kSqrt2) == 7);
  CHECK(floor_div_alpha(0, kSqrt2) == 0);
  CHECK(floor_div_alpha(3, kGolden) == 1);
  CHECK(floor_div_alpha(-1, kSqrt2) == -1);
  CHECK(floor_div_alpha(Rational(7, 2), kSqrt2) == 2);
}

TEST_CASE("nth_term") {
  CHECK(nth_term(5, {kSqrt2, 0}) == 7);
  CHECK(nth_term(1, {kGolden, 0}) == 1);
  CHECK(nth_term(2, {kSqrt2, Rational(1, 2)}) == 3);
  CHECK_THROWS_AS(nth_term(0, {kSqrt2, 0}), UsageError);
}

TEST_CASE("contains") {
  CHECK(contains(4, {kSqrt2, 0}));
  CHECK_FALSE(contains(3, {kSqrt2, 0}));
  CHECK(contains(6, {kGolden, 0}));
  CHECK_THROWS_AS(contains(0, {kSqrt2, 0}), UsageError);
}

TEST_CASE("enumerate_up_to") {
  CHECK(enumerate_up_to(10, {kSqrt2, 0}) == std::vector<std::int64_t>{1, 2, 4, 5, 7, 8, 9});
  CHECK(enumerate_up_to(0, {kSqrt2, 0}).empty());
  CHECK(enumerate_up_to(12, {kGolden, 0}) == std::vector<std::int64_t>{1, 3, 4, 6, 8, 9, 11, 12});
  CHECK(enumerate_up_to(20, {kSqrt2, 0}) ==
        std::vector<std::int64_t>{1, 2, 4, 5, 7, 8, 9, 11, 12, 14, 15, 16, 18, 19});
  CHECK(count_up_to(20, {kSqrt2, 0}) == 14);
}

TEST_CASE("negative shifts drop terms below 1") {
  // floor(sqrt(2) - 5/3) = -1 is not a member of [1, x]
  const BeattyParams p{kSqrt2, Rational(-5, 3)};
  const auto got = enumerate_up_to(30, p);
  CHECK(got == as_vector(oracle::members({0, 1, 1, 2}, -5, 3, 30)));
  CHECK(got.front() >= 1);
}

TEST_CASE("indices_between") {
  const BeattyParams p{kSqrt2, 0};
  const auto r = indices_between(5, 12, p);
  CHECK(r.first == 4);   // floor(4 sqrt 2) = 5
  CHECK(r.last == 9);    // floor(9 sqrt 2) = 12
  CHECK(r.size() == 6);
  CHECK(indices_between(3, 3, p).empty());
}

TEST_CASE("membership agrees with the term search for every test sequence") {
  const oracle::Quad quads[] = {{0, 1, 1, 2}, {0, 1, 1, 3}, {1, 1, 2, 5}, {1, 1, 1, 3}, {5, -1, 1, 7}};
  const std::pair<std::int64_t, std::int64_t> betas[] = {{0, 1}, {1, 2}, {-1, 3}, {7, 5}};
  const std::int64_t x = 20'000;
  for (const auto& f : quads) {
    const auto alpha = AlphaValue::quadratic(f.p, f.q, f.r, f.d);
    for (const auto& [bn, bd] : betas) {
      const BeattyParams params{alpha, Rational(bn, bd)};
      const auto expected = oracle::members(f, bn, bd, x);
      for (std::int64_t n = 1; n <= x; ++n) {
        const bool in = expected.count(n) != 0;
        REQUIRE(contains(n, params) == in);
        REQUIRE(contains_by_fractional_window(n, params) == in);
      }
      REQUIRE(enumerate_up_to(x, params) == as_vector(expected));
      REQUIRE(std::abs(static_cast<double>(count_up_to(x, params)) - x / alpha.to_double()) <= 2.0);
    }
  }
}

TEST_CASE("nth_term is strictly increasing") {
  const BeattyParams p{kGolden, Rational(-1, 3)};
  std::int64_t prev = nth_term(1, p);
  for (std::int64_t r = 2; r <= 10'000; ++r) {
    const auto t = nth_term(r, p);
    REQUIRE(t > prev);
    prev = t;
  }
}

TEST_CASE("exact and adaptive forms agree on membership and terms") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<std::int64_t> dist(1, 1'000'000'000);
  const oracle::Quad quads[] = {{0, 1, 1, 2}, {1, 1, 2, 5}};
  for (const auto& f : quads) {
    const BeattyParams exact{AlphaValue::quadratic(f.p, f.q, f.r, f.d), Rational(1, 2)};
    const BeattyParams adaptive{AlphaValue::adaptive_quadratic(f.p, f.q, f.r, f.d), Rational(1, 2)};
    for (int i = 0; i < 10'000; ++i) {
      const auto n = dist(rng);
      REQUIRE(contains(n, exact) == contains(n, adaptive));
      REQUIRE(nth_term(n, exact) == nth_term(n, adaptive));
    }
  }
}

TEST_CASE("adaptive constants enumerate like a float reference at small range") {
  const BeattyParams p{AlphaValue::pi(), 0};
  std::vector<std::int64_t> expected;
  for (std::int64_t r = 1; r <= 300; ++r) expected.push_back(static_cast<std::int64_t>(std::floor(M_PI * r)));
  CHECK(enumerate_up_to(942, p) == expected);
}

TEST_CASE("continued fractions") {
  auto quotients = [](const AlphaValue& a, int k) {
    std::vector<long> out;
    for (const auto& q : continued_fraction(a, k).quotients) out.push_back(q.get_si());
    return out;
  };
  CHECK(quotients(kSqrt2, 4) == std::vector<long>{1, 2, 2, 2, 2});
  CHECK(quotients(kGolden, 4) == std::vector<long>{1, 1, 1, 1, 1});
  CHECK(quotients(AlphaValue::quadratic(1, 1, 1, 3), 4) == std::vector<long>{2, 1, 2, 1, 2});
  CHECK(quotients(AlphaValue::euler_e(), 9) == std::vector<long>{2, 1, 2, 1, 1, 4, 1, 1, 6, 1});
  CHECK(quotients(AlphaValue::pi(), 4) == std::vector<long>{3, 7, 15, 1, 292});
  CHECK(quotients(AlphaValue::adaptive_quadratic(0, 1, 1, 2), 6) == quotients(kSqrt2, 6));
  CHECK_THROWS_AS(continued_fraction(kSqrt2, -1), UsageError);

  // recurrence and approximation bound
  const auto cf = continued_fraction(AlphaValue::sqrt(7), 30);
  for (std::size_t i = 2; i < cf.convergents.size(); ++i) {
    CHECK(cf.convergents[i].first == cf.quotients[i] * cf.convergents[i - 1].first + cf.convergents[i - 2].first);
    CHECK(cf.convergents[i].second == cf.quotients[i] * cf.convergents[i - 1].second + cf.convergents[i - 2].second);
    CHECK(cf.quotients[i] >= 1);
  }
  for (std::size_t i = 0; i + 1 < 12; ++i) {
    const double pi = cf.convergents[i].first.get_d(), qi = cf.convergents[i].second.get_d();
    const double qn = cf.convergents[i + 1].second.get_d();
    CHECK(std::abs(std::sqrt(7.0) - pi / qi) < 1.0 / (qi * qn));
  }
}

TEST_CASE("nearest integer distance") {
  CHECK(nearest_int_distance(kSqrt2, 1) == doctest::Approx(0.41421356237309504880).epsilon(1e-15));
  CHECK(nearest_int_distance(kSqrt2, 5) == doctest::Approx(0.07106781186547524400844362).epsilon(1e-15));
  CHECK(nearest_int_distance(kSqrt2, 1, Rational(1, 2)) == doctest::Approx(0.08578643762690495).epsilon(1e-14));
  CHECK_THROWS_AS(nearest_int_distance(kSqrt2, 0), UsageError);
  for (std::int64_t n = 1; n < 1000; ++n) {
    const double d = nearest_int_distance(kGolden, n);
    CHECK(d >= 0.0);
    CHECK(d <= 0.5);
  }
}

TEST_CASE("type estimates") {
  const auto s = estimate_type(kSqrt2, 1'000'000);
  CHECK(s.tau >= 1.0);
  CHECK(s.tau <= 1.01);
  CHECK(s.evidence.size() >= 2);
  for (const auto& e : s.evidence) CHECK(e.q >= 2);
  const auto g = estimate_type(kGolden, 1'000'000);
  CHECK(g.tau >= 1.0);
  CHECK(g.tau <= 1.01);
  CHECK_THROWS_AS(estimate_type(kSqrt2, 2), InsufficientDataError);
  CHECK_THROWS_AS(estimate_type(kSqrt2, 1), InsufficientDataError);
}

}
