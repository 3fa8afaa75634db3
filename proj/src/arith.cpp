#include "beattycensus/arith.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "beattycensus/errors.hpp"

namespace bc::arith {
namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(u128(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n odd composite.
std::uint64_t pollard_brent(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    constexpr std::uint64_t kBlock = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBlock) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBlock, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void collect_prime_factors(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  collect_prime_factors(d, out);
  collect_prime_factors(n / d, out);
}

// p divides q^i - 1 for some 1 <= i <= b.
bool divides_some_power_minus_one(std::uint64_t p, std::uint64_t q, std::uint32_t b) {
  if (p > q && b == 1) return false;  // 0 < q - 1 < p
  const std::uint64_t m = q % p;
  std::uint64_t x = 1 % p;
  for (std::uint32_t i = 1; i <= b; ++i) {
    x = mul_mod(x, m, p);
    if (x == 1 % p) return true;
  }
  return false;
}

}  // namespace

Factorization::Factorization(std::uint64_t n, std::vector<PrimePower> factors)
    : n_(n), factors_(std::move(factors)) {
  if (n_ == 0) throw UsageError("factorization of 0");
  u128 product = 1;
  std::uint64_t prev = 1;
  for (const auto& [p, a] : factors_) {
    if (a < 1) throw UsageError("factorization exponent must be >= 1");
    if (p <= prev || !is_prime_u64(p)) {
      throw UsageError("factorization primes must be prime and strictly increasing");
    }
    prev = p;
    for (std::uint32_t i = 0; i < a; ++i) {
      product *= p;
      if (product > n_) throw UsageError("factorization product exceeds n");
    }
  }
  if (product != n_) throw UsageError("factorization product differs from n");
}

SpfTable build_spf_table(std::uint64_t limit, std::uint64_t cap) {
  if (limit < 2) throw UsageError("build_spf_table: limit must be >= 2");
  if (limit > cap || limit > 0xffffffffULL) {
    throw ResourceError("build_spf_table: limit " + std::to_string(limit) +
                        " exceeds the memory cap " + std::to_string(cap));
  }
  SpfTable t;
  t.limit_ = limit;
  t.spf_.assign(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (t.spf_[i] == 0) {
      t.spf_[i] = static_cast<std::uint32_t>(i);
      t.primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : t.primes_) {
      const std::uint64_t m = i * p;
      if (p > t.spf_[i] || m > limit) break;
      t.spf_[m] = p;
    }
  }
  return t;
}

Factorization factorize(std::uint64_t n, const SpfTable& table) {
  if (n < 1 || n > table.limit()) {
    throw UsageError("factorize: " + std::to_string(n) + " outside [1, " +
                     std::to_string(table.limit()) + "]");
  }
  std::vector<PrimePower> out;
  std::uint64_t m = n;
  while (m > 1) {
    const std::uint32_t p = table.spf(m);
    std::uint32_t a = 0;
    while (m % p == 0) {
      m /= p;
      ++a;
    }
    out.push_back({p, a});
  }
  return Factorization(n, std::move(out));
}

Factorization factorize(std::uint64_t n) {
  if (n < 1) throw UsageError("factorize: n must be >= 1");
  std::vector<std::uint64_t> primes;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p < 1000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  collect_prime_factors(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> out;
  for (std::uint64_t p : primes) {
    if (!out.empty() && out.back().p == p) {
      ++out.back().a;
    } else {
      out.push_back({p, 1});
    }
  }
  return Factorization(n, std::move(out));
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for all 64-bit n.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

std::uint64_t euler_phi(const Factorization& f) {
  std::uint64_t phi = 1;
  for (const auto& [p, a] : f.factors()) {
    phi *= p - 1;
    for (std::uint32_t i = 1; i < a; ++i) phi *= p;
  }
  return phi;
}

mpz_class group_totient(const Factorization& f) {
  mpz_class total = 1;
  for (const auto& [p, a] : f.factors()) {
    mpz_class pi = 1;
    const mpz_class pz(static_cast<unsigned long>(p));
    for (std::uint32_t i = 1; i <= a; ++i) {
      pi *= pz;
      total *= pi - 1;
    }
  }
  return total;
}

std::string_view to_string(NumberClass c) {
  switch (c) {
    case NumberClass::Cyclic:
      return "Cyclic";
    case NumberClass::AbelianNotCyclic:
      return "AbelianNotCyclic";
    case NumberClass::NilpotentNotAbelian:
      return "NilpotentNotAbelian";
    case NumberClass::NotNilpotent:
      return "NotNilpotent";
  }
  return "?";
}

bool is_cyclic(std::span<const PrimePower> f) {
  for (const auto& pp : f) {
    if (pp.a > 1) return false;
  }
  // Squarefree: gcd(n, phi(n)) = 1 iff no p | n divides q - 1 for another q | n.
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      if (f[j].p % f[i].p == 1) return false;
    }
  }
  return true;
}

bool is_nilpotent(std::span<const PrimePower> f) {
  for (const auto& pp : f) {
    for (const auto& qq : f) {
      if (pp.p != qq.p && divides_some_power_minus_one(pp.p, qq.p, qq.a)) return false;
    }
  }
  return true;
}

bool is_abelian(std::span<const PrimePower> f) {
  const bool cubefree = std::all_of(f.begin(), f.end(), [](const PrimePower& pp) { return pp.a <= 2; });
  return cubefree && is_nilpotent(f);
}

NumberClass classify(std::span<const PrimePower> f) {
  if (!is_nilpotent(f)) return NumberClass::NotNilpotent;
  std::uint32_t max_exp = 0;
  for (const auto& pp : f) max_exp = std::max(max_exp, pp.a);
  if (max_exp >= 3) return NumberClass::NilpotentNotAbelian;
  // Nilpotent and squarefree is exactly the cyclic criterion (b = 1 for every q).
  if (max_exp == 2) return NumberClass::AbelianNotCyclic;
  return NumberClass::Cyclic;
}

}  // namespace bc::arith
