#pragma once

// Exact decisions on numbers of the form (a + b*sqrt(d)) / c with d > 0 not a
// perfect square. Everything reduces to an integer square root; nothing is rounded.

#include <cstdint>

#include "int128.hpp"

namespace bc::detail {

/// Sign of a + b*sqrt(d). Never zero when b != 0 because sqrt(d) is irrational.
inline int surd_sign(i128 a, i128 b, i128 d) {
  if (b == 0) return (a > 0) - (a < 0);
  if (a == 0) return b > 0 ? 1 : -1;
  if ((a > 0) == (b > 0)) return a > 0 ? 1 : -1;
  // Opposite signs: compare a^2 with b^2 d.
  const i128 a2 = checked_mul(a, a);
  const i128 b2d = checked_mul(checked_mul(b, b), d);
  const bool a_dominates = a2 > b2d;
  return a_dominates ? (a > 0 ? 1 : -1) : (b > 0 ? 1 : -1);
}

inline int surd_sign(const mpz_class& a, const mpz_class& b, const mpz_class& d) {
  const int sb = sgn(b);
  const int sa = sgn(a);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const mpz_class a2 = a * a;
  const mpz_class b2d = b * b * d;
  return cmp(a2, b2d) > 0 ? sa : sb;
}

/// floor(b * sqrt(d)).
inline i128 floor_b_sqrt_d(i128 b, i128 d) {
  if (b == 0) return 0;
  const i128 m = checked_mul(checked_mul(b, b), d);
  const auto r = static_cast<i128>(isqrt(static_cast<u128>(m)));
  // m is never a perfect square, so ceil = floor + 1.
  return b > 0 ? r : -r - 1;
}

inline mpz_class floor_b_sqrt_d(const mpz_class& b, const mpz_class& d) {
  if (sgn(b) == 0) return 0;
  mpz_class m = b * b * d;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
  return sgn(b) > 0 ? r : mpz_class(-r - 1);
}

/// floor((a + b*sqrt(d)) / c) for c > 0.
inline i128 surd_floor(i128 a, i128 b, i128 c, i128 d) {
  return floor_div(checked_add(a, floor_b_sqrt_d(b, d)), c);
}

inline mpz_class surd_floor(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                            const mpz_class& d) {
  return floor_div(a + floor_b_sqrt_d(b, d), c);
}

}  // namespace bc::detail
