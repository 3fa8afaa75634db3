#pragma once

// Constants, Mertens-theorem diagnostics, rough numbers in Beatty sequences, the
// cutoff parameters y and z, and the truncated asymptotic expansions of C(x),
// A(x) - C(x) and N(x) - A(x).

#include <cstdint>
#include <string>
#include <vector>

#include "beattycensus/alpha.hpp"

namespace bc::analytic {

/// Each value carries at least 50 correct bits; the *_digits strings hold the
/// 128-bit evaluations to 36 significant digits.
struct Constants {
  double gamma;
  double exp_neg_gamma;
  double zeta3;
  double pi;
  double pi_sq;
  double mertens;  // sum_p (log(1 - 1/p) + 1/p) + gamma = 0.2614972128...
  std::string gamma_digits, exp_neg_gamma_digits, zeta3_digits, pi_digits, mertens_digits;
};

/// Computed once from rapidly convergent series at 128 bits, then cross-checked
/// against stored 30-digit references (throws std::logic_error on mismatch).
const Constants& constants();

struct PrimeDiagnostic {
  double observed = 0;
  double predicted = 0;
};

/// sum_{p <= X} 1/p accumulated as an exact rational, against log log X + M.
PrimeDiagnostic mertens_sum(std::uint64_t X);
/// prod_{p <= X} (1 - 1/p) as an exact rational, against e^{-gamma} / log X.
PrimeDiagnostic mertens_product(std::uint64_t X);
/// The exact sum of 1/p for p <= X in lowest terms, "num/den".
std::string mertens_sum_fraction(std::uint64_t X);

inline constexpr std::uint64_t kMertensCap = std::uint64_t{1} << 31;

struct CutoffParams {
  double x = 0;
  double y = 0;  // log2 x / log3 x
  double z = 0;  // e^{sqrt(log3 x)} log2 x
};

/// Iterated logs; requires x > 16.
CutoffParams cutoff_params(double x);

enum class RoughMode {
  NumberInBeatty,       // n in B, no prime factor of n below y
  PrimeFactorsInBeatty  // every prime factor p of n has p >= y and p in B
};

struct RoughOptions {
  RoughMode mode = RoughMode::NumberInBeatty;
  std::uint64_t segment_size = std::uint64_t{1} << 16;
  unsigned worker_count = 1;
  double y_cap = 1e7;
};

struct RoughCount {
  std::uint64_t count = 0;
  double product_prediction = 0;  // (x/alpha) prod_{p<y} (1 - 1/p)
  double mertens_prediction = 0;  // e^{-gamma} x / (alpha log y)
};

RoughCount rough_beatty_count(std::uint64_t x, double y, const BeattyParams& params,
                              const RoughOptions& options = {});

enum class SeriesClass { Cyclic, AbelianMinusCyclic, NilpotentMinusAbelian };

std::string_view to_string(SeriesClass c);
SeriesClass parse_series_class(std::string_view name);

struct SeriesExpansion {
  SeriesClass tag;
  std::vector<double> coefficients;  // coefficient k multiplies (log3 x)^{-k}
  int max_printed_order;
};

SeriesExpansion series_expansion(SeriesClass c);

/// The prefactor e^{-gamma} x / (alpha * ...) of the expansion for `c`.
double series_prefactor(SeriesClass c, double x, double alpha = 1.0);

/// Prefactor times the sum of the first order+1 coefficients. alpha = 1 gives
/// the unrestricted prediction. Throws UsageError past the printed coefficients.
double eval_series(SeriesClass c, double x, int order, double alpha = 1.0);

}  // namespace bc::analytic
