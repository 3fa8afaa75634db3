#pragma once

// Executable forms of the discrepancy and exponential-sum estimates used for
// Beatty sequences: the Erdos-Turan inequality, decay of multiplicative
// exponential sums, the min-sums over ||alpha n||, Vaaler's trigonometric
// approximation of the sawtooth, and the count of multiples of d in B.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "beattycensus/alpha.hpp"

namespace bc::expsum {

/// psi(t) = {t} - 1/2, in [-1/2, 1/2).
double sawtooth(double t);

/// {k * omega} for omega = hi + lo given as a double-double; |k| < 2^53.
double frac_scaled(std::int64_t k, std::pair<double, double> omega);

/// e(t) = exp(2 pi i t); t is reduced mod 1 first.
std::complex<double> unit_phase(double t);

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_, im_;
};

/// Values u_1..u_N reduced to [0, 1).
class UnitSequence {
 public:
  static UnitSequence from_reals(std::span<const double> values);
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

struct ErdosTuranResult {
  std::uint64_t count = 0;  // #{m : u_m in [rho, sigma] mod 1}
  double actual_dev = 0;    // |count - (sigma - rho) N|
  double bound = 0;         // N/(J+1) + 3 sum_{j<=J} |sum_m e(j u_m)| / j
};

ErdosTuranResult erdos_turan(const UnitSequence& seq, int J, double rho, double sigma);

/// Built-in multiplicative weights with |f| <= 1.
struct MultiplicativeSpec {
  enum class Kind { One, Mobius, Rough, SquarefreeRough };
  Kind kind = Kind::One;
  double threshold = 0;            // Rough: no prime <= threshold; SquarefreeRough: likewise
  std::uint64_t excluded_prime = 0;  // SquarefreeRough: p does not divide m (0 = none)

  /// "one", "mobius", "rough:Z", "sqfree-rough:Y" or "sqfree-rough:Y,P".
  static MultiplicativeSpec parse(std::string_view text);
  std::string label() const;
};

struct ExpSumRow {
  std::uint64_t N = 0;
  double magnitude = 0;     // |sum_{m<=N} f(m) e(j m / alpha)|
  double reference = 0;     // N / log N
  double window_limit = 0;  // N^{1/(3 tau)} / (log N)^{3 + 3/(2 tau)}
  bool in_window = false;   // j <= window_limit
};

std::vector<ExpSumRow> multiplicative_expsum(const MultiplicativeSpec& f, const AlphaValue& alpha,
                                             std::int64_t j, std::span<const std::uint64_t> n_grid,
                                             double tau = 1.0);

/// sum_{n<=N} min(x/n, 1/||alpha n||)
double minsum_type1(const AlphaValue& alpha, double x, std::int64_t N);
/// sum_{n<=N} min(x, 1/||alpha n + beta||)
double minsum_type2(const AlphaValue& alpha, const Rational& beta, double x, std::int64_t N);

/// N^{1+eps} + x^{1 - 1/(1+tau) + eps}
double minsum_type1_reference(double x, double N, double tau = 1.0, double eps = 0.05);
/// N^{1+eps} + (xN)^{1 - 1/(1+tau) + eps} + x
double minsum_type2_reference(double x, double N, double tau = 1.0, double eps = 0.05);

/// Vaaler's trigonometric polynomials of degree H for the sawtooth:
///   |psi(t) - sum_{0<|h|<=H} a_h e(ht)| <= sum_{|h|<=H} b_h e(ht).
class TrigApprox {
 public:
  int H() const { return H_; }
  std::complex<double> a(int h) const;  // 1 <= |h| <= H
  double b(int h) const;                // |h| <= H
  /// sum_{0<|h|<=H} a_h e(ht); imaginary part vanishes up to rounding.
  std::complex<double> a_sum(double t) const;
  /// sum_{|h|<=H} b_h e(ht); real and nonnegative up to rounding.
  std::complex<double> majorant(double t) const;

 private:
  friend TrigApprox vaaler_approx(int H);
  int H_ = 0;
  std::vector<double> a_imag_;  // a_h = i * a_imag_[h-1] for h >= 1
  std::vector<double> b_;       // b_|h|
};

TrigApprox vaaler_approx(int H);

struct VaalerGridCheck {
  int H = 0;
  std::size_t points = 0;
  double max_violation = 0;      // max_t |psi - a_sum| - majorant
  double max_a_error = 0;        // max_t |psi - a_sum|
  double max_imag = 0;           // max |Im| of a_sum and majorant
  double min_majorant = 0;
  bool holds = false;            // max_violation <= slack and majorant >= -slack
};

/// Evaluates both sides on t = k/points, k = 0..points-1.
VaalerGridCheck check_vaaler(const TrigApprox& approx, std::size_t points, double slack = 1e-12);

struct DivisorBeattyResult {
  std::int64_t count = 0;  // #{n <= N : d | n, n in B}
  double main = 0;         // N / (alpha d)
  double err = 0;          // count - main
};

DivisorBeattyResult divisor_beatty_error(std::int64_t d, std::int64_t N, const BeattyParams& params);

}  // namespace bc::expsum
