#pragma once

#include <cstdint>

#include "beattycensus/arith.hpp"

namespace bc::arith {

/// Classification by literal big-integer gcds: gcd(n, phi(n)), gcd(n, F(n)), and
/// a trial-division cubefree test. Shares no code with the structural predicates.
NumberClass classify_naive_oracle(std::uint64_t n);

}  // namespace bc::arith
