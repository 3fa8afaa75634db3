#pragma once

// Checked 128-bit helpers and GMP conversions shared by the exact-arithmetic code.

#include <cmath>
#include <cstdint>

#include <gmpxx.h>

namespace bc::detail {

using i128 = __int128;
using u128 = unsigned __int128;

/// Thrown internally when a 128-bit intermediate overflows; callers retry in mpz.
struct Overflow {};

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}

inline i128 checked_neg(i128 a) {
  i128 r;
  if (__builtin_sub_overflow(i128{0}, a, &r)) throw Overflow{};
  return r;
}

/// floor(a / c) for c > 0.
inline i128 floor_div(i128 a, i128 c) {
  i128 q = a / c;
  if ((a % c) != 0 && a < 0) --q;
  return q;
}

/// floor(sqrt(m)).
inline u128 isqrt(u128 m) {
  if (m == 0) return 0;
  auto r = static_cast<u128>(std::sqrt(static_cast<long double>(m)));
  // The long double estimate is within a few units; correct in both directions.
  auto square_le = [m](u128 x) {
    if (x == 0) return true;
    if (x > (~u128{0}) / x) return false;
    return x * x <= m;
  };
  while (!square_le(r)) --r;
  while (square_le(r + 1)) ++r;
  return r;
}

inline mpz_class to_mpz(i128 v) {
  const bool neg = v < 0;
  u128 u = neg ? u128(0) - static_cast<u128>(v) : static_cast<u128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

/// Narrow an mpz to i128; throws Overflow if it does not fit.
inline i128 to_i128(const mpz_class& v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 126) throw Overflow{};
  mpz_class a = abs(v);
  mpz_class lo_part = a & mpz_class("18446744073709551615");
  mpz_class hi_part = a >> 64;
  u128 u = (static_cast<u128>(mpz_get_ui(hi_part.get_mpz_t())) << 64) |
           static_cast<u128>(mpz_get_ui(lo_part.get_mpz_t()));
  i128 r = static_cast<i128>(u);
  return sgn(v) < 0 ? -r : r;
}

inline mpz_class floor_div(const mpz_class& a, const mpz_class& c) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  return q;
}

}  // namespace bc::detail
