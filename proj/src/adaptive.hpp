#pragma once

// Directed-rounding interval evaluation on top of MPFR.

#include <array>
#include <functional>
#include <mutex>
#include <optional>
#include <string>

#include <mpfr.h>

#include "beattycensus/alpha.hpp"

namespace bc::detail {

/// Owning mpfr_t.
class Mp {
 public:
  explicit Mp(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  Mp(const Mp& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Mp& operator=(const Mp& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~Mp() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

/// Closed interval [lo, hi] known to contain the exact value.
struct Interval {
  explicit Interval(mpfr_prec_t prec) : lo(prec), hi(prec) {}
  Mp lo;
  Mp hi;
};

/// Produces enclosures of a positive real theta at a requested precision.
using Enclosure = std::function<void(mpfr_prec_t, Interval&)>;

/// Lazily cached enclosures of alpha and 1/alpha at 64, 128, ..., max_bits.
class AdaptiveSource {
 public:
  static constexpr int kMaxLevels = 16;

  AdaptiveSource(Enclosure alpha, PrecisionPolicy policy);

  int level_count() const { return levels_; }
  mpfr_prec_t level_bits(int level) const { return policy_.start_bits << level; }
  const Interval& enclosure(int level, Operand which) const;

 private:
  struct Level {
    std::once_flag once;
    std::optional<Interval> alpha;
    std::optional<Interval> recip;
  };

  Enclosure alpha_;
  PrecisionPolicy policy_;
  int levels_ = 0;
  mutable std::array<Level, kMaxLevels> cache_;
};

/// lo/hi of the rational num/den, rounded outward.
void rational_enclosure(const Rational& q, Interval& out);

/// Enclosure of u + v*theta given an enclosure of theta > 0.
void affine_enclosure(const Rational& u, const Rational& v, const Interval& theta, Interval& out);

}  // namespace bc::detail
