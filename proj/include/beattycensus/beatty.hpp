#pragma once

// Beatty sequences B(alpha, beta) = { floor(alpha*r + beta) : r >= 1 } and the
// diophantine helpers built on them.

#include <cstdint>
#include <functional>
#include <vector>

#include <gmpxx.h>

#include "beattycensus/alpha.hpp"

namespace bc::beatty {

/// floor(t / alpha), exact.
std::int64_t floor_div_alpha(const Rational& t, const AlphaValue& alpha);

/// floor(alpha*r + beta) for r >= 1.
std::int64_t nth_term(std::int64_t r, const BeattyParams& params);

/// n is a member iff n > alpha + beta - 1 and
/// floor((n + 1 - beta)/alpha) - floor((n - beta)/alpha) = 1.
bool contains(std::int64_t n, const BeattyParams& params);

/// Equivalent membership test through the fractional window
/// 0 < {(n + 1 - beta)/alpha} <= 1/alpha (plus n > alpha + beta - 1).
bool contains_by_fractional_window(std::int64_t n, const BeattyParams& params);

/// Index range [first, last] of the terms lying in [lo, hi]; empty when first > last.
struct IndexRange {
  std::int64_t first = 1;
  std::int64_t last = 0;
  bool empty() const { return first > last; }
  std::int64_t size() const { return empty() ? 0 : last - first + 1; }
};
IndexRange indices_between(std::int64_t lo, std::int64_t hi, const BeattyParams& params);

/// Calls visit(n) for every member n in [lo, hi], ascending.
void for_each_member(std::int64_t lo, std::int64_t hi, const BeattyParams& params,
                     const std::function<void(std::int64_t)>& visit);

/// Members in [1, x], ascending.
std::vector<std::int64_t> enumerate_up_to(std::int64_t x, const BeattyParams& params);

/// Number of members in [1, x].
std::int64_t count_up_to(std::int64_t x, const BeattyParams& params);

struct ContinuedFraction {
  std::vector<mpz_class> quotients;                        // a0; a1, a2, ...
  std::vector<std::pair<mpz_class, mpz_class>> convergents;  // (p_i, q_i)
};

/// First k + 1 partial quotients with their convergents.
ContinuedFraction continued_fraction(const AlphaValue& alpha, int k);

/// ||alpha*n + beta||.
double nearest_int_distance(const AlphaValue& alpha, std::int64_t n,
                            const Rational& beta = Rational(0));

struct TypeEvidence {
  std::int64_t q;       // convergent denominator
  double distance;      // ||alpha q||
  double exponent;      // log(1/||alpha q||) / log q
};

struct TypeEstimate {
  double tau;  // least-squares slope of log(1/||alpha q||) on log q, clamped to >= 1
  std::vector<TypeEvidence> evidence;
};

/// Empirical type from the convergent denominators 2 <= q_i <= q_max.
TypeEstimate estimate_type(const AlphaValue& alpha, std::int64_t q_max);

}  // namespace bc::beatty
