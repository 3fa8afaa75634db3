#include <doctest.h>

#include <cmath>
#include <numbers>

#include "beattycensus/analytic.hpp"
#include "beattycensus/beatty.hpp"
#include "beattycensus/errors.hpp"
#include "oracles.hpp"

using namespace bc;
using namespace bc::analytic;

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("analytic") {

TEST_CASE("constants") {
  const auto& k = constants();
  CHECK(k.gamma == doctest::Approx(0.5772156649015328606).epsilon(1e-16));
  CHECK(k.zeta3 == doctest::Approx(1.2020569031595942854).epsilon(1e-16));
  CHECK(k.exp_neg_gamma == doctest::Approx(0.56145948356688516982).epsilon(1e-16));
  CHECK(k.exp_neg_gamma == doctest::Approx(std::exp(-k.gamma)).epsilon(1e-15));
  CHECK(k.mertens == doctest::Approx(0.26149721284764278376).epsilon(1e-16));
  CHECK(k.pi == std::numbers::pi);
  CHECK(k.pi_sq == doctest::Approx(std::numbers::pi * std::numbers::pi).epsilon(1e-16));
  CHECK(k.gamma_digits.rfind("0.577215664901532860606512090082", 0) == 0);
  CHECK(k.zeta3_digits.rfind("1.20205690315959428539973816151", 0) == 0);
}

TEST_CASE("Mertens sum") {
  CHECK(mertens_sum_fraction(10) == "247/210");
  CHECK(mertens_sum_fraction(3) == "5/6");
  CHECK(mertens_sum(10).observed == doctest::Approx(247.0 / 210.0).epsilon(1e-15));
  const auto big = mertens_sum(1'000'000);
  CHECK(std::abs(big.observed - big.predicted) < 1e-3);
  CHECK(big.predicted == doctest::Approx(std::log(std::log(1e6)) + 0.2614972128476428).epsilon(1e-15));

  double direct = 0;
  for (std::uint64_t p = 2; p <= 5000; ++p) {
    if (is_prime(p)) direct += 1.0 / static_cast<double>(p);
  }
  CHECK(mertens_sum(5000).observed == doctest::Approx(direct).epsilon(1e-13));
  CHECK_THROWS_AS(mertens_sum(2), UsageError);
  CHECK_THROWS_AS(mertens_sum(kMertensCap + 1), ResourceError);
}

TEST_CASE("Mertens product") {
  CHECK(mertens_product(10).observed == doctest::Approx(8.0 / 35.0).epsilon(1e-15));
  CHECK(mertens_product(3).observed == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(mertens_product(1), UsageError);

  double previous = 1.0;
  for (std::uint64_t X : {1000ULL, 10'000ULL, 100'000ULL, 1'000'000ULL}) {
    const auto r = mertens_product(X);
    CHECK(r.predicted == doctest::Approx(std::exp(-constants().gamma) / std::log(static_cast<double>(X))));
    const double dev = std::abs(r.observed / r.predicted - 1.0);
    CHECK(dev < previous);
    previous = dev;
  }
  CHECK(previous < 1e-2);
}

TEST_CASE("cutoff parameters") {
  const auto c = cutoff_params(1e8);
  CHECK(c.y == doctest::Approx(2.72453770712542).epsilon(1e-12));
  CHECK(c.z == doctest::Approx(8.19429465088628).epsilon(1e-12));
  const auto big = cutoff_params(1e100);
  CHECK(big.y == doctest::Approx(3.2115601888696).epsilon(1e-12));
  CHECK(big.z == doctest::Approx(19.9859360924893).epsilon(1e-12));
  CHECK_THROWS_AS(cutoff_params(16), DomainError);
  CHECK_THROWS_AS(cutoff_params(-1), DomainError);
}

TEST_CASE("rough numbers in a Beatty sequence") {
  const BeattyParams p{AlphaValue::sqrt(2), 0};
  CHECK(rough_beatty_count(20, 2, p).count == 14);
  CHECK(rough_beatty_count(20, 3, p).count == 7);
  CHECK(rough_beatty_count(0, 3, p).count == 0);

  for (std::uint64_t x : {1000ULL, 54'321ULL}) {
    CHECK(rough_beatty_count(x, 2, p).count == static_cast<std::uint64_t>(beatty::count_up_to(static_cast<std::int64_t>(x), p)));
  }

  // brute force against the member list
  const auto members = oracle::members({1, 1, 2, 5}, 1, 2, 100'000);
  const BeattyParams g{AlphaValue::quadratic(1, 1, 2, 5), Rational(1, 2)};
  for (double y : {5.0, 7.5, 30.0}) {
    std::uint64_t expected = 0;
    for (auto n : members) {
      if (n < 1) continue;
      bool rough = true;
      for (std::int64_t q = 2; q < y; ++q) {
        if (is_prime(static_cast<std::uint64_t>(q)) && n % q == 0) rough = false;
      }
      expected += rough;
    }
    RoughOptions opt;
    opt.segment_size = 7777;
    opt.worker_count = 2;
    CHECK(rough_beatty_count(100'000, y, g, opt).count == expected);
  }

  const auto r = rough_beatty_count(1000, 30, p);
  CHECK(r.product_prediction ==
        doctest::Approx(1000 / std::sqrt(2.0) * (1. / 2) * (2. / 3) * (4. / 5) * (6. / 7) * (10. / 11) *
                        (12. / 13) * (16. / 17) * (18. / 19) * (22. / 23) * (28. / 29)));
  CHECK(r.mertens_prediction == doctest::Approx(std::exp(-constants().gamma) * 1000 / (std::sqrt(2.0) * std::log(30.0))));

  CHECK_THROWS_AS(rough_beatty_count(100, 1.5, p), UsageError);
  RoughOptions capped;
  capped.y_cap = 100;
  CHECK_THROWS_AS(rough_beatty_count(100, 101, p, capped), ResourceError);
}

TEST_CASE("rough numbers whose prime factors lie in the sequence") {
  const BeattyParams p{AlphaValue::sqrt(2), 0};
  RoughOptions opt;
  opt.mode = RoughMode::PrimeFactorsInBeatty;
  const auto members = oracle::members({0, 1, 1, 2}, 0, 1, 5000);
  std::uint64_t expected = 0;
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    bool ok = true;
    std::uint64_t m = n;
    for (std::uint64_t q = 2; q <= m; ++q) {
      if (m % q != 0) continue;
      if (q < 3 || members.count(static_cast<std::int64_t>(q)) == 0) ok = false;
      while (m % q == 0) m /= q;
    }
    expected += ok;
  }
  CHECK(rough_beatty_count(5000, 3, p, opt).count == expected);
}

TEST_CASE("series coefficients") {
  struct Case {
    SeriesClass c;
    std::vector<double> coefficients;
    int max_order;
  };
  const Case cases[] = {
      {SeriesClass::Cyclic, {1, -0.57721566490153286061, 0.34162135577791348861, -2.4179093522667197334}, 3},
      {SeriesClass::AbelianMinusCyclic, {1, -1.1544313298030657212, 1.0248640673337404658, -9.6716374090668789337}, 3},
      {SeriesClass::NilpotentMinusAbelian, {1, -0.15443132980306572121, 1.3234475465644574011}, 2},
  };
  for (const auto& c : cases) {
    const auto s = series_expansion(c.c);
    CHECK(s.max_printed_order == c.max_order);
    REQUIRE(s.coefficients.size() == c.coefficients.size());
    for (std::size_t i = 0; i < c.coefficients.size(); ++i)
      CHECK(std::abs(s.coefficients[i] - c.coefficients[i]) < 1e-12);
  }
}

TEST_CASE("series evaluation") {
  CHECK(eval_series(SeriesClass::Cyclic, 1e8, 0) == doctest::Approx(52504931.942577779325).epsilon(1e-13));
  CHECK(eval_series(SeriesClass::Cyclic, 1e8, 1) == doctest::Approx(24163624.147043570374).epsilon(1e-13));
  CHECK(eval_series(SeriesClass::AbelianMinusCyclic, 1e8, 2) == doctest::Approx(13763357.997179279704).epsilon(1e-13));
  CHECK(eval_series(SeriesClass::NilpotentMinusAbelian, 1e8, 2) == doctest::Approx(11643726.228527209614).epsilon(1e-13));
  CHECK(eval_series(SeriesClass::Cyclic, 1e8, 0, std::sqrt(2.0)) ==
        doctest::Approx(52504931.942577779325 / std::sqrt(2.0)).epsilon(1e-13));

  for (auto c : {SeriesClass::Cyclic, SeriesClass::AbelianMinusCyclic, SeriesClass::NilpotentMinusAbelian}) {
    const double x = 1e12;
    CHECK(eval_series(c, x, 0) == series_prefactor(c, x));
    const auto s = series_expansion(c);
    const double l3 = std::log(std::log(std::log(x)));
    for (int k = 1; k <= s.max_printed_order; ++k) {
      const double step = std::abs(eval_series(c, x, k) - eval_series(c, x, k - 1));
      CHECK(step <= std::abs(s.coefficients[static_cast<std::size_t>(k)]) / std::pow(l3, k) * series_prefactor(c, x) * (1 + 1e-12));
    }
  }
  CHECK_THROWS_AS(eval_series(SeriesClass::Cyclic, 1e8, 4), UsageError);
  CHECK_THROWS_AS(eval_series(SeriesClass::NilpotentMinusAbelian, 1e8, 3), UsageError);
  CHECK_THROWS_AS(eval_series(SeriesClass::Cyclic, 1e8, -1), UsageError);
  CHECK_THROWS_AS(eval_series(SeriesClass::Cyclic, 16, 0), DomainError);
}

TEST_CASE("series class names") {
  CHECK(parse_series_class("cyclic") == SeriesClass::Cyclic);
  CHECK(parse_series_class("C") == SeriesClass::Cyclic);
  CHECK(parse_series_class("abelian-minus-cyclic") == SeriesClass::AbelianMinusCyclic);
  CHECK(parse_series_class("A-C") == SeriesClass::AbelianMinusCyclic);
  CHECK(parse_series_class("N-A") == SeriesClass::NilpotentMinusAbelian);
  CHECK(to_string(SeriesClass::NilpotentMinusAbelian) == "nilpotent-minus-abelian");
  CHECK_THROWS_AS(parse_series_class("abelian"), UsageError);
}

}
