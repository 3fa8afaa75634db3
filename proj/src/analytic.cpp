#include "beattycensus/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <mpfr.h>

#include "adaptive.hpp"
#include "beattycensus/beatty.hpp"
#include "beattycensus/errors.hpp"
#include "beattycensus/segment.hpp"

namespace bc::analytic {
namespace {

using detail::Mp;

constexpr mpfr_prec_t kWork = 320;

// 30-digit references.
constexpr const char* kGammaRef = "0.577215664901532860606512090082";
constexpr const char* kZeta3Ref = "1.202056903159594285399738161511";
constexpr const char* kPiRef = "3.141592653589793238462643383279";
constexpr const char* kMertensRef = "0.261497212847642783755426838608";
constexpr const char* kExpNegGammaRef = "0.561459483566885169824143214790";

// atan(1/k) = sum (-1)^n / ((2n+1) k^(2n+1))
void atan_inv(Mp& out, unsigned long k) {
  Mp term(kWork), power(kWork);
  mpfr_set_ui(out.get(), 0, MPFR_RNDN);
  mpfr_set_ui(power.get(), 1, MPFR_RNDN);
  mpfr_div_ui(power.get(), power.get(), k, MPFR_RNDN);
  for (unsigned long n = 0;; ++n) {
    mpfr_div_ui(term.get(), power.get(), 2 * n + 1, MPFR_RNDN);
    if (mpfr_zero_p(term.get()) || mpfr_get_exp(term.get()) < -static_cast<long>(kWork)) break;
    if (n % 2 == 0) {
      mpfr_add(out.get(), out.get(), term.get(), MPFR_RNDN);
    } else {
      mpfr_sub(out.get(), out.get(), term.get(), MPFR_RNDN);
    }
    mpfr_div_ui(power.get(), power.get(), k * k, MPFR_RNDN);
  }
}

// Machin: pi = 16 atan(1/5) - 4 atan(1/239).
void compute_pi(Mp& out) {
  Mp a(kWork), b(kWork);
  atan_inv(a, 5);
  atan_inv(b, 239);
  mpfr_mul_ui(a.get(), a.get(), 16, MPFR_RNDN);
  mpfr_mul_ui(b.get(), b.get(), 4, MPFR_RNDN);
  mpfr_sub(out.get(), a.get(), b.get(), MPFR_RNDN);
}

// Brent-McMillan: gamma = U/V - log n + O(e^{-4n}), with
// V = sum (n^k/k!)^2, U = sum (n^k/k!)^2 H_k.
void compute_gamma(Mp& out) {
  constexpr unsigned long n = 48;
  Mp a(kWork), h(kWork), u(kWork), v(kWork), t(kWork);
  mpfr_set_ui(a.get(), 1, MPFR_RNDN);  // (n^k/k!)^2
  mpfr_set_ui(h.get(), 0, MPFR_RNDN);  // H_k
  mpfr_set_ui(u.get(), 0, MPFR_RNDN);
  mpfr_set_ui(v.get(), 1, MPFR_RNDN);
  for (unsigned long k = 1; k < 6 * n; ++k) {
    mpfr_mul_ui(a.get(), a.get(), n * n, MPFR_RNDN);
    mpfr_div_ui(a.get(), a.get(), k * k, MPFR_RNDN);
    mpfr_set_ui(t.get(), 1, MPFR_RNDN);
    mpfr_div_ui(t.get(), t.get(), k, MPFR_RNDN);
    mpfr_add(h.get(), h.get(), t.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.get(), h.get(), MPFR_RNDN);
    mpfr_add(u.get(), u.get(), t.get(), MPFR_RNDN);
    mpfr_add(v.get(), v.get(), a.get(), MPFR_RNDN);
  }
  mpfr_div(out.get(), u.get(), v.get(), MPFR_RNDN);
  mpfr_set_ui(t.get(), n, MPFR_RNDN);
  mpfr_log(t.get(), t.get(), MPFR_RNDN);
  mpfr_sub(out.get(), out.get(), t.get(), MPFR_RNDN);
}

// zeta(3) = (5/2) sum_{k>=1} (-1)^{k+1} (k!)^2 / (k^3 (2k)!)
void compute_zeta3(Mp& out) {
  Mp ratio(kWork), term(kWork);  // ratio = (k!)^2 / (2k)!
  mpfr_set_ui(out.get(), 0, MPFR_RNDN);
  mpfr_set_ui(ratio.get(), 1, MPFR_RNDN);
  for (unsigned long k = 1; k < 200; ++k) {
    mpfr_mul_ui(ratio.get(), ratio.get(), k, MPFR_RNDN);
    mpfr_div_ui(ratio.get(), ratio.get(), 2 * (2 * k - 1), MPFR_RNDN);
    mpfr_div_ui(term.get(), ratio.get(), k * k * k, MPFR_RNDN);
    if (k % 2 == 1) {
      mpfr_add(out.get(), out.get(), term.get(), MPFR_RNDN);
    } else {
      mpfr_sub(out.get(), out.get(), term.get(), MPFR_RNDN);
    }
  }
  mpfr_mul_ui(out.get(), out.get(), 5, MPFR_RNDN);
  mpfr_div_ui(out.get(), out.get(), 2, MPFR_RNDN);
}

int mobius(unsigned long k) {
  int mu = 1;
  for (unsigned long p = 2; p * p <= k; ++p) {
    if (k % p != 0) continue;
    k /= p;
    if (k % p == 0) return 0;
    mu = -mu;
  }
  return k > 1 ? -mu : mu;
}

// M = gamma + sum_{k>=2} mu(k)/k log zeta(k)
void compute_mertens(const Mp& gamma, Mp& out) {
  Mp z(kWork), t(kWork);
  mpfr_set(out.get(), gamma.get(), MPFR_RNDN);
  for (unsigned long k = 2; k < 360; ++k) {
    const int mu = mobius(k);
    if (mu == 0) continue;
    mpfr_zeta_ui(z.get(), k, MPFR_RNDN);
    mpfr_log(t.get(), z.get(), MPFR_RNDN);
    mpfr_div_ui(t.get(), t.get(), k, MPFR_RNDN);
    if (mu > 0) {
      mpfr_add(out.get(), out.get(), t.get(), MPFR_RNDN);
    } else {
      mpfr_sub(out.get(), out.get(), t.get(), MPFR_RNDN);
    }
  }
}

std::string digits(const Mp& v) {
  char buf[128];
  mpfr_snprintf(buf, sizeof buf, "%.36Rg", v.get());
  return buf;
}

void cross_check(const char* name, const Mp& v, const char* ref) {
  Mp r(kWork), diff(kWork);
  mpfr_set_str(r.get(), ref, 10, MPFR_RNDN);
  mpfr_sub(diff.get(), v.get(), r.get(), MPFR_RNDN);
  if (mpfr_cmp_d(diff.get(), 1e-29) > 0 || mpfr_cmp_d(diff.get(), -1e-29) < 0) {
    throw std::logic_error(std::string("constant ") + name + " disagrees with its reference");
  }
}

Constants build_constants() {
  Mp gamma(kWork), emg(kWork), zeta3(kWork), pi(kWork), pisq(kWork), mertens(kWork);
  compute_gamma(gamma);
  mpfr_neg(emg.get(), gamma.get(), MPFR_RNDN);
  mpfr_exp(emg.get(), emg.get(), MPFR_RNDN);
  compute_zeta3(zeta3);
  compute_pi(pi);
  mpfr_sqr(pisq.get(), pi.get(), MPFR_RNDN);
  compute_mertens(gamma, mertens);

  cross_check("gamma", gamma, kGammaRef);
  cross_check("exp(-gamma)", emg, kExpNegGammaRef);
  cross_check("zeta(3)", zeta3, kZeta3Ref);
  cross_check("pi", pi, kPiRef);
  cross_check("Mertens", mertens, kMertensRef);

  auto d = [](const Mp& v) { return mpfr_get_d(v.get(), MPFR_RNDN); };
  return Constants{d(gamma), d(emg), d(zeta3), d(pi), d(pisq), d(mertens),
                   digits(gamma), digits(emg), digits(zeta3), digits(pi), digits(mertens)};
}

// sum_{i in [l, r)} 1/p_i = num/den with den = prod p_i.
void reciprocal_sum(const std::vector<std::uint32_t>& primes, std::size_t l, std::size_t r,
                    mpz_class& num, mpz_class& den) {
  if (r - l == 1) {
    num = 1;
    den = primes[l];
    return;
  }
  const std::size_t m = (l + r) / 2;
  mpz_class n2, d2;
  reciprocal_sum(primes, l, m, num, den);
  reciprocal_sum(primes, m, r, n2, d2);
  num = num * d2 + n2 * den;
  den *= d2;
}

// prod_{i in [l, r)} (p_i - shift)
mpz_class product_tree(const std::vector<std::uint32_t>& primes, std::size_t l, std::size_t r,
                       unsigned shift) {
  if (r - l == 1) return mpz_class(primes[l] - shift);
  const std::size_t m = (l + r) / 2;
  return product_tree(primes, l, m, shift) * product_tree(primes, m, r, shift);
}

std::vector<std::uint32_t> mertens_primes(std::uint64_t X) {
  if (X < 3) throw UsageError("Mertens diagnostics need X >= 3");
  if (X > kMertensCap) throw ResourceError("Mertens diagnostics capped at X <= 2^31");
  return primes_up_to(X);
}

double ratio_to_double(const mpz_class& num, const mpz_class& den) {
  Mp a(128), b(128);
  mpfr_set_z(a.get(), num.get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(b.get(), den.get_mpz_t(), MPFR_RNDN);
  mpfr_div(a.get(), a.get(), b.get(), MPFR_RNDN);
  return mpfr_get_d(a.get(), MPFR_RNDN);
}

}  // namespace

const Constants& constants() {
  static const Constants c = build_constants();
  return c;
}

PrimeDiagnostic mertens_sum(std::uint64_t X) {
  const auto primes = mertens_primes(X);
  mpz_class num, den;
  reciprocal_sum(primes, 0, primes.size(), num, den);
  const double lx = std::log(static_cast<double>(X));
  return {ratio_to_double(num, den), std::log(lx) + constants().mertens};
}

std::string mertens_sum_fraction(std::uint64_t X) {
  const auto primes = mertens_primes(X);
  mpz_class num, den;
  reciprocal_sum(primes, 0, primes.size(), num, den);
  mpq_class q(num, den);
  q.canonicalize();
  return q.get_str();
}

PrimeDiagnostic mertens_product(std::uint64_t X) {
  const auto primes = mertens_primes(X);
  const mpz_class num = product_tree(primes, 0, primes.size(), 1);
  const mpz_class den = product_tree(primes, 0, primes.size(), 0);
  return {ratio_to_double(num, den),
          constants().exp_neg_gamma / std::log(static_cast<double>(X))};
}

CutoffParams cutoff_params(double x) {
  if (!(x > 16.0)) throw DomainError("cutoff_params: x must exceed 16 so that log3 x > 0");
  const double l2 = std::log(std::log(x));
  const double l3 = std::log(l2);
  return {x, l2 / l3, std::exp(std::sqrt(l3)) * l2};
}

RoughCount rough_beatty_count(std::uint64_t x, double y, const BeattyParams& params,
                              const RoughOptions& options) {
  if (!(y >= 2.0)) throw UsageError("rough_beatty_count: y must be >= 2");
  if (y > options.y_cap) throw ResourceError("rough_beatty_count: y exceeds the configured cap");
  if (x > (std::uint64_t{1} << 62)) throw UsageError("rough_beatty_count: x too large");
  if (options.segment_size < 1) throw UsageError("rough_beatty_count: bad segment size");

  std::vector<std::uint32_t> small;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint64_t>(std::floor(y)))) {
    if (static_cast<double>(p) < y) small.push_back(p);
  }

  RoughCount out;
  const double alpha = params.alpha.to_double();
  double product = 1.0;
  for (std::uint32_t p : small) product *= 1.0 - 1.0 / p;
  out.product_prediction = static_cast<double>(x) / alpha * product;
  out.mertens_prediction = constants().exp_neg_gamma * static_cast<double>(x) / (alpha * std::log(y));
  if (x == 0) return out;

  const auto segments = split_range(1, x, options.segment_size);
  if (options.mode == RoughMode::NumberInBeatty) {
    struct Worker {
      const std::vector<std::uint32_t>* small;
      const BeattyParams* params;
      std::vector<std::uint8_t> hit;
      std::uint64_t operator()(const Segment& seg) {
        const std::size_t len = seg.hi - seg.lo + 1;
        hit.assign(len, 0);
        for (std::uint64_t p : *small) {
          for (std::uint64_t j = (seg.lo + p - 1) / p * p - seg.lo; j < len; j += p) hit[j] = 1;
        }
        std::uint64_t count = 0;
        beatty::for_each_member(static_cast<std::int64_t>(seg.lo), static_cast<std::int64_t>(seg.hi),
                                *params, [&](std::int64_t n) {
                                  count += hit[static_cast<std::uint64_t>(n) - seg.lo] == 0;
                                });
        return count;
      }
    };
    for (std::uint64_t c : map_segments(segments, options.worker_count,
                                        [&] { return Worker{&small, &params, {}}; })) {
      out.count += c;
    }
    return out;
  }

  const SegmentFactorizer factorizer(x);
  struct FactorWorker {
    const SegmentFactorizer* fz;
    const BeattyParams* params;
    double y;
    SegmentFactors factors;
    std::uint64_t operator()(const Segment& seg) {
      fz->factor(seg, factors);
      std::uint64_t count = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        bool ok = true;
        for (const auto& pp : factors.at(i)) {
          if (static_cast<double>(pp.p) < y ||
              !beatty::contains(static_cast<std::int64_t>(pp.p), *params)) {
            ok = false;
            break;
          }
        }
        count += ok;
      }
      return count;
    }
  };
  for (std::uint64_t c : map_segments(segments, options.worker_count,
                                      [&] { return FactorWorker{&factorizer, &params, y, {}}; })) {
    out.count += c;
  }
  return out;
}

std::string_view to_string(SeriesClass c) {
  switch (c) {
    case SeriesClass::Cyclic:
      return "cyclic";
    case SeriesClass::AbelianMinusCyclic:
      return "abelian-minus-cyclic";
    case SeriesClass::NilpotentMinusAbelian:
      return "nilpotent-minus-abelian";
  }
  return "?";
}

SeriesClass parse_series_class(std::string_view name) {
  if (name == "cyclic" || name == "C") return SeriesClass::Cyclic;
  if (name == "abelian-minus-cyclic" || name == "A-C") return SeriesClass::AbelianMinusCyclic;
  if (name == "nilpotent-minus-abelian" || name == "N-A") return SeriesClass::NilpotentMinusAbelian;
  throw UsageError("unknown class '" + std::string(name) +
                   "' (expected cyclic, abelian-minus-cyclic, nilpotent-minus-abelian)");
}

SeriesExpansion series_expansion(SeriesClass c) {
  const Constants& k = constants();
  const double g = k.gamma, g2 = g * g, g3 = g2 * g;
  switch (c) {
    case SeriesClass::Cyclic:
      return {c,
              {1.0, -g, g2 + 1.0 / (12.0 * k.pi_sq),
               -(g3 + g * k.pi_sq / 4.0 + 2.0 * k.zeta3 / 3.0)},
              3};
    case SeriesClass::AbelianMinusCyclic:
      return {c,
              {1.0, -2.0 * g, 3.0 * g2 + 1.0 / (4.0 * k.pi_sq),
               -(4.0 * g3 + g * k.pi_sq + 8.0 * k.zeta3 / 3.0)},
              3};
    case SeriesClass::NilpotentMinusAbelian:
      return {c, {1.0, 1.0 - 2.0 * g, -2.0 * g + 5.0 * g2 / 2.0 + k.pi_sq / 6.0}, 2};
  }
  throw UsageError("unknown series class");
}

double series_prefactor(SeriesClass c, double x, double alpha) {
  if (!(x > 16.0)) throw DomainError("series: x must exceed 16 so that log3 x > 0");
  if (!(alpha > 0.0)) throw UsageError("series: alpha must be positive");
  const double l2 = std::log(std::log(x));
  const double l3 = std::log(l2);
  const double base = constants().exp_neg_gamma * x / alpha;
  switch (c) {
    case SeriesClass::Cyclic:
      return base / l3;
    case SeriesClass::AbelianMinusCyclic:
      return base / (l2 * l3 * l3);
    case SeriesClass::NilpotentMinusAbelian:
      return base / (l2 * l2 * l3 * l3);
  }
  throw UsageError("unknown series class");
}

double eval_series(SeriesClass c, double x, int order, double alpha) {
  const SeriesExpansion s = series_expansion(c);
  if (order < 0 || order > s.max_printed_order) {
    throw UsageError("series order " + std::to_string(order) + " beyond the " +
                     std::to_string(s.max_printed_order) + " printed coefficients for " +
                     std::string(to_string(c)));
  }
  const double pre = series_prefactor(c, x, alpha);
  const double l3 = std::log(std::log(std::log(x)));
  double sum = 0.0;
  double scale = 1.0;
  for (int k = 0; k <= order; ++k) {
    sum += s.coefficients[static_cast<std::size_t>(k)] * scale;
    scale /= l3;
  }
  return pre * sum;
}

}  // namespace bc::analytic
