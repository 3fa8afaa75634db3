#pragma once

// Representations of the irrational slope alpha > 1 and the Beatty parameters.
//
// Two forms are supported:
//   * exact quadratic irrationals (p + q*sqrt(d)) / r, where every floor and sign
//     decision reduces to integer square roots;
//   * adaptive-precision reals (e, pi, or a quadratic surd routed through MPFR),
//     evaluated on directed-rounding intervals whose precision doubles from
//     64 bits until the decision is certain, up to a cap (default 4096 bits).
//
// Both forms answer the same primitive questions about u + v*theta where u, v are
// rationals and theta is alpha or 1/alpha, so the Beatty code above them never
// needs to know which form it holds.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "beattycensus/rational.hpp"

namespace bc {

namespace detail {
class AdaptiveSource;
}

/// (p + q*sqrt(d)) / r, normalized: r > 0, gcd(p, q, r) = 1, d > 1 not a square.
struct QuadraticForm {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t r = 1;
  std::int64_t d = 2;
};

/// Which quantity an affine query refers to.
enum class Operand { Alpha, Reciprocal };

struct PrecisionPolicy {
  long start_bits = 64;
  long max_bits = 4096;
};

class AlphaValue {
 public:
  /// Exact (p + q*sqrt(d)) / r. Throws UsageError unless the value is irrational and > 1.
  static AlphaValue quadratic(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t d);
  static AlphaValue sqrt(std::int64_t d) { return quadratic(0, 1, 1, d); }

  /// The same quadratic number evaluated through the adaptive-precision path.
  static AlphaValue adaptive_quadratic(std::int64_t p, std::int64_t q, std::int64_t r,
                                       std::int64_t d, PrecisionPolicy policy = {});
  static AlphaValue euler_e(PrecisionPolicy policy = {});
  static AlphaValue pi(PrecisionPolicy policy = {});

  /// Grammar: "sqrt:D", "quad:p,q,r,d", "e", "pi".
  static AlphaValue parse(std::string_view spec);

  bool is_exact() const { return adaptive_ == nullptr; }
  /// Throws UsageError for adaptive values that are not quadratic.
  const QuadraticForm& quadratic_form() const;
  bool has_quadratic_form() const { return has_form_; }
  const std::string& label() const { return label_; }

  double to_double() const;
  /// theta as an unevaluated sum hi + lo carrying about 106 bits.
  std::pair<double, double> to_double_double(Operand which = Operand::Alpha) const;

  /// floor(u + v*theta), exact.
  std::int64_t floor_affine(const Rational& u, const Rational& v,
                            Operand which = Operand::Alpha) const;
  /// Sign of u + v*theta, exact.
  int sign_affine(const Rational& u, const Rational& v, Operand which = Operand::Alpha) const;
  /// ||u + v*theta|| with at least 50 correct bits.
  double nearest_int_distance_affine(const Rational& u, const Rational& v,
                                     Operand which = Operand::Alpha) const;

  const detail::AdaptiveSource* adaptive_source() const { return adaptive_.get(); }

 private:
  AlphaValue() = default;

  // Exact form of alpha and of 1/alpha in the same quadratic field.
  QuadraticForm form_{};
  bool has_form_ = false;
  __int128 recip_p_ = 0, recip_q_ = 0, recip_r_ = 1;
  std::shared_ptr<const detail::AdaptiveSource> adaptive_;
  std::string label_;
};

/// (alpha, beta) defining the Beatty sequence floor(alpha*n + beta), n >= 1.
struct BeattyParams {
  AlphaValue alpha;
  Rational beta;
};

}  // namespace bc
