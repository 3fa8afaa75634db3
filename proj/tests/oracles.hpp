#pragma once

// Brute-force references used only by the tests. They share no code with the
// library: Beatty terms come from a GMP integer square root, classification
// from trial division and a literal gcd with phi(n).

#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace oracle {

// floor((p + q*sqrt(d))/r * k + bn/bd) for q > 0, r > 0, bd > 0, d not a square.
inline std::int64_t quad_term(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t d,
                              std::int64_t k, std::int64_t bn, std::int64_t bd) {
  // value = (bd*k*p + bd*k*q*sqrt(d) + r*bn) / (r*bd)
  mpz_class s = mpz_class(bd) * k * q;  // coefficient of sqrt(d)
  mpz_class sq = s * s * d;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());  // floor(s*sqrt(d)) for s >= 0
  if (s < 0) root = -root - 1;
  mpz_class num = root + mpz_class(bd) * k * p + mpz_class(r) * bn;
  mpz_class den = mpz_class(r) * bd;
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out.get_si();
}

struct Quad {
  std::int64_t p, q, r, d;
};

// Members of the sequence up to x by direct enumeration of terms.
inline std::set<std::int64_t> members(const Quad& a, std::int64_t bn, std::int64_t bd, std::int64_t x) {
  std::set<std::int64_t> out;
  for (std::int64_t k = 1;; ++k) {
    const auto t = quad_term(a.p, a.q, a.r, a.d, k, bn, bd);
    if (t > x) break;
    out.insert(t);
  }
  return out;
}

inline std::uint64_t phi(std::uint64_t n) {
  std::uint64_t out = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      out -= out / p;
    }
  }
  if (n > 1) out -= out / n;
  return out;
}

inline bool cubefree(std::uint64_t n) {
  for (std::uint64_t k = 2; k * k * k <= n; ++k) {
    if (n % (k * k * k) == 0) return false;
  }
  return true;
}

// gcd(n, F(n)) with F(p^a) = (p^a - 1)(p^(a-1) - 1)...(p - 1), F built by trial division.
inline bool nilpotent(std::uint64_t n) {
  mpz_class F = 1;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p <= m; ++p) {
    if (p * p > m) p = m;
    std::uint32_t a = 0;
    while (m % p == 0) {
      m /= p;
      ++a;
    }
    mpz_class pk = 1;
    for (std::uint32_t i = 1; i <= a; ++i) {
      pk *= p;
      F *= pk - 1;
    }
    if (m == 1) break;
  }
  mpz_class g;
  mpz_class nn = static_cast<unsigned long>(n);
  mpz_gcd(g.get_mpz_t(), nn.get_mpz_t(), F.get_mpz_t());
  return g == 1;
}

inline bool cyclic(std::uint64_t n) { return std::gcd(n, phi(n)) == 1; }
inline bool abelian(std::uint64_t n) { return cubefree(n) && nilpotent(n); }

}  // namespace oracle
