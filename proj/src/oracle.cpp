#include "beattycensus/oracle.hpp"

#include <utility>
#include <vector>

#include "beattycensus/errors.hpp"

namespace bc::arith {
namespace {

std::vector<std::pair<std::uint64_t, unsigned>> trial_division(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool cubefree_by_trial(std::uint64_t n) {
  for (std::uint64_t k = 2; k * k * k <= n; ++k) {
    if (n % (k * k * k) == 0) return false;
  }
  return true;
}

}  // namespace

NumberClass classify_naive_oracle(std::uint64_t n) {
  if (n < 1) throw UsageError("classify_naive_oracle: n must be >= 1");
  const auto factors = trial_division(n);
  mpz_class phi = 1;
  mpz_class big_f = 1;
  for (const auto& [p, a] : factors) {
    const mpz_class pz(static_cast<unsigned long>(p));
    mpz_class power = 1;
    for (unsigned i = 1; i <= a; ++i) {
      power *= pz;
      big_f *= power - 1;
    }
    phi *= power / pz * (pz - 1);
  }
  const mpz_class nz(static_cast<unsigned long>(n));
  const bool cyclic = gcd(nz, phi) == 1;
  const bool nilpotent = gcd(nz, big_f) == 1;
  const bool abelian = nilpotent && cubefree_by_trial(n);
  if (cyclic) return NumberClass::Cyclic;
  if (abelian) return NumberClass::AbelianNotCyclic;
  if (nilpotent) return NumberClass::NilpotentNotAbelian;
  return NumberClass::NotNilpotent;
}

}  // namespace bc::arith
