#pragma once

// Factorizations and the group-theoretic classification of orders n:
//   cyclic     <=> gcd(n, phi(n)) = 1
//   nilpotent  <=> gcd(n, F(n)) = 1, F(p^a) = (p^a - 1)(p^(a-1) - 1)...(p - 1)
//   abelian    <=> n cubefree and nilpotent
// The predicates work structurally on the prime factors; F(n) itself is only
// materialized (as a big integer) by group_totient and the oracle.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace bc::arith {

struct PrimePower {
  std::uint64_t p = 0;
  std::uint32_t a = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

class Factorization {
 public:
  Factorization() = default;
  /// Validates: strictly increasing primes, exponents >= 1, product == n.
  Factorization(std::uint64_t n, std::vector<PrimePower> factors);

  std::uint64_t n() const { return n_; }
  std::span<const PrimePower> factors() const { return factors_; }

 private:
  std::uint64_t n_ = 1;
  std::vector<PrimePower> factors_;
};

/// Smallest-prime-factor table for 2 <= i <= limit.
class SpfTable {
 public:
  std::uint64_t limit() const { return limit_; }
  std::uint32_t spf(std::uint64_t i) const { return spf_[i]; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

 private:
  friend SpfTable build_spf_table(std::uint64_t limit, std::uint64_t cap);
  std::uint64_t limit_ = 1;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

inline constexpr std::uint64_t kDefaultSpfCap = std::uint64_t{1} << 30;

/// Linear sieve. Throws ResourceError if limit > cap, UsageError if limit < 2.
SpfTable build_spf_table(std::uint64_t limit, std::uint64_t cap = kDefaultSpfCap);

/// Factorization of 1 <= n <= table.limit().
Factorization factorize(std::uint64_t n, const SpfTable& table);

/// Factorization of any 1 <= n < 2^64 (Miller-Rabin + Pollard rho).
Factorization factorize(std::uint64_t n);

bool is_prime_u64(std::uint64_t n);

std::uint64_t euler_phi(const Factorization& f);

/// F(n): multiplicative, F(p^a) = prod_{i=1..a} (p^i - 1).
mpz_class group_totient(const Factorization& f);

enum class NumberClass : std::uint8_t {
  Cyclic,
  AbelianNotCyclic,
  NilpotentNotAbelian,
  NotNilpotent,
};

constexpr bool is_cyclic(NumberClass c) { return c == NumberClass::Cyclic; }
constexpr bool is_abelian(NumberClass c) {
  return c == NumberClass::Cyclic || c == NumberClass::AbelianNotCyclic;
}
constexpr bool is_nilpotent(NumberClass c) { return c != NumberClass::NotNilpotent; }

std::string_view to_string(NumberClass c);

bool is_cyclic(std::span<const PrimePower> f);
bool is_nilpotent(std::span<const PrimePower> f);
bool is_abelian(std::span<const PrimePower> f);
NumberClass classify(std::span<const PrimePower> f);

inline bool is_cyclic(const Factorization& f) { return is_cyclic(f.factors()); }
inline bool is_nilpotent(const Factorization& f) { return is_nilpotent(f.factors()); }
inline bool is_abelian(const Factorization& f) { return is_abelian(f.factors()); }
inline NumberClass classify(const Factorization& f) { return classify(f.factors()); }

}  // namespace bc::arith
