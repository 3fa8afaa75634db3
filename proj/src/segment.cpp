#include "beattycensus/segment.hpp"

#include <cmath>

#include "beattycensus/errors.hpp"

namespace bc {

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<Segment> split_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t size) {
  if (size == 0) throw UsageError("segment size must be positive");
  std::vector<Segment> out;
  for (std::uint64_t s = lo; s <= hi;) {
    const std::uint64_t e = (hi - s < size - 1) ? hi : s + size - 1;
    out.push_back({s, e});
    if (e == hi) break;
    s = e + 1;
  }
  return out;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  if (limit > 0xffffffffULL) throw ResourceError("primes_up_to: limit exceeds 2^32");
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

SegmentFactorizer::SegmentFactorizer(std::uint64_t x_max) : x_max_(x_max) {
  base_primes_ = primes_up_to(isqrt_u64(x_max));
  // Largest k with the product of the first k primes <= x_max.
  width_ = 0;
  unsigned __int128 primorial = 1;
  for (std::uint64_t p = 2; primorial * p <= x_max; ++p) {
    if (arith::is_prime_u64(p)) {
      primorial *= p;
      ++width_;
    }
  }
  width_ = std::max<std::size_t>(width_, 1);
}

void SegmentFactorizer::factor(const Segment& seg, SegmentFactors& out) const {
  if (seg.lo < 1 || seg.hi < seg.lo || seg.hi > x_max_) {
    throw UsageError("segment outside [1, x_max]");
  }
  const std::size_t len = seg.hi - seg.lo + 1;
  out.lo_ = seg.lo;
  out.width_ = width_;
  out.counts_.assign(len, 0);
  out.acc_.assign(len, 1);
  if (out.factors_.size() < len * width_) out.factors_.resize(len * width_);
  auto* counts = out.counts_.data();
  auto* acc = out.acc_.data();
  auto* factors = out.factors_.data();

  for (std::uint32_t p32 : base_primes_) {
    const std::uint64_t p = p32;
    if (p * p > seg.hi) break;
    std::uint64_t first = (seg.lo + p - 1) / p * p;
    for (std::uint64_t j = first - seg.lo; j < len; j += p) {
      factors[j * width_ + counts[j]] = {p, 1};
      ++counts[j];
      acc[j] *= p;
    }
    for (std::uint64_t pk = p * p; pk <= seg.hi; pk *= p) {
      first = (seg.lo + pk - 1) / pk * pk;
      for (std::uint64_t j = first - seg.lo; j < len; j += pk) {
        ++factors[j * width_ + counts[j] - 1].a;
        acc[j] *= p;
      }
      if (pk > seg.hi / p) break;
    }
  }
  for (std::size_t j = 0; j < len; ++j) {
    const std::uint64_t rest = (seg.lo + j) / acc[j];
    if (rest > 1) {
      factors[j * width_ + counts[j]] = {rest, 1};
      ++counts[j];
    }
  }
}

}  // namespace bc
