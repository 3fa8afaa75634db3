#pragma once

// Segmented factorization of consecutive integers and a small ordered work pool.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <span>
#include <thread>
#include <type_traits>
#include <vector>

#include "beattycensus/arith.hpp"

namespace bc {

struct Segment {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;  // inclusive
};

/// Splits [lo, hi] into consecutive segments of at most `size` integers.
std::vector<Segment> split_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t size);

/// Factorizations of every integer in one segment, stored in a flat buffer.
class SegmentFactors {
 public:
  std::uint64_t lo() const { return lo_; }
  std::size_t size() const { return counts_.size(); }
  std::span<const arith::PrimePower> at(std::size_t i) const {
    return {factors_.data() + i * width_, counts_[i]};
  }

 private:
  friend class SegmentFactorizer;
  std::uint64_t lo_ = 1;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> counts_;
  std::vector<std::uint64_t> acc_;
  std::vector<arith::PrimePower> factors_;
};

/// Sieves segments of [1, x_max] with the base primes <= sqrt(x_max).
class SegmentFactorizer {
 public:
  explicit SegmentFactorizer(std::uint64_t x_max);

  std::uint64_t x_max() const { return x_max_; }
  const std::vector<std::uint32_t>& base_primes() const { return base_primes_; }
  /// Upper bound on the number of distinct primes of any n <= x_max.
  std::size_t max_distinct_primes() const { return width_; }

  void factor(const Segment& seg, SegmentFactors& out) const;

 private:
  std::uint64_t x_max_;
  std::size_t width_;
  std::vector<std::uint32_t> base_primes_;
};

/// Primes <= limit by a plain sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

std::uint64_t isqrt_u64(std::uint64_t n);

/// Runs make_worker()(segment) for every segment on `workers` threads. Each thread
/// owns one worker object; results come back in segment order. If any segment
/// throws, the exception of the lowest-index failing segment is rethrown.
template <class MakeWorker>
auto map_segments(std::span<const Segment> segments, unsigned workers, MakeWorker make_worker) {
  using Worker = std::invoke_result_t<MakeWorker>;
  using Result = std::invoke_result_t<Worker&, const Segment&>;
  std::vector<Result> results(segments.size());
  std::vector<std::exception_ptr> errors(segments.size());
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    Worker worker = make_worker();
    for (std::size_t i = next++; i < segments.size(); i = next++) {
      try {
        results[i] = worker(segments[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(segments.size())));
  if (n == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(run);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace bc
