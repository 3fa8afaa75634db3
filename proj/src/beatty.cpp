#include "beattycensus/beatty.hpp"

#include <algorithm>
#include <cmath>

#include "adaptive.hpp"
#include "beattycensus/errors.hpp"
#include "surd.hpp"

namespace bc::beatty {
namespace {

using detail::Interval;
using detail::Mp;

Rational shifted(std::int64_t n, std::int64_t plus, const Rational& beta) {
  return Rational(n) + Rational(plus) - beta;
}

// p_i = a_i p_{i-1} + p_{i-2}, q_i = a_i q_{i-1} + q_{i-2}, seeded with
// (p_{-1}, q_{-1}) = (1, 0) and (p_{-2}, q_{-2}) = (0, 1).
void push_convergent(ContinuedFraction& cf, const mpz_class& a) {
  cf.quotients.push_back(a);
  const auto& conv = cf.convergents;
  const std::size_t i = conv.size();
  const mpz_class p1 = i >= 1 ? conv[i - 1].first : mpz_class(1);
  const mpz_class q1 = i >= 1 ? conv[i - 1].second : mpz_class(0);
  const mpz_class p2 = i >= 2 ? conv[i - 2].first : mpz_class(i == 1 ? 1 : 0);
  const mpz_class q2 = i >= 2 ? conv[i - 2].second : mpz_class(i == 1 ? 0 : 1);
  cf.convergents.emplace_back(a * p1 + p2, a * q1 + q2);
}

ContinuedFraction exact_continued_fraction(const QuadraticForm& f, int k) {
  // Rewrite alpha as (P + sqrt(D)) / Q with Q | D - P^2.
  mpz_class P(static_cast<long>(f.q > 0 ? f.p : -f.p));
  mpz_class Q(static_cast<long>(f.q > 0 ? f.r : -f.r));
  mpz_class D = mpz_class(static_cast<long>(f.q)) * f.q * f.d;
  if (mpz_class((D - P * P) % Q) != 0) {
    const mpz_class aq = abs(Q);
    P *= aq;
    D *= aq * aq;
    Q *= aq;
  }
  ContinuedFraction cf;
  for (int i = 0; i <= k; ++i) {
    const mpz_class a = sgn(Q) > 0 ? detail::surd_floor(P, mpz_class(1), Q, D)
                                   : detail::surd_floor(mpz_class(-P), mpz_class(-1),
                                                        mpz_class(-Q), D);
    push_convergent(cf, a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  return cf;
}

ContinuedFraction adaptive_continued_fraction(const detail::AdaptiveSource& src, int k) {
  for (int level = 0; level < src.level_count(); ++level) {
    const mpfr_prec_t bits = src.level_bits(level);
    Interval x = src.enclosure(level, Operand::Alpha);
    ContinuedFraction cf;
    bool ok = true;
    Mp alo(bits), ahi(bits);
    for (int i = 0; i <= k && ok; ++i) {
      mpfr_floor(alo.get(), x.lo.get());
      mpfr_floor(ahi.get(), x.hi.get());
      if (!mpfr_equal_p(alo.get(), ahi.get())) {
        ok = false;
        break;
      }
      mpz_class a;
      mpfr_get_z(a.get_mpz_t(), alo.get(), MPFR_RNDN);
      push_convergent(cf, a);
      if (i == k) break;
      mpfr_sub(x.lo.get(), x.lo.get(), alo.get(), MPFR_RNDD);
      mpfr_sub(x.hi.get(), x.hi.get(), alo.get(), MPFR_RNDU);
      if (mpfr_sgn(x.lo.get()) <= 0) {
        ok = false;
        break;
      }
      Mp lo(bits);
      mpfr_ui_div(lo.get(), 1, x.hi.get(), MPFR_RNDD);
      mpfr_ui_div(x.hi.get(), 1, x.lo.get(), MPFR_RNDU);
      mpfr_set(x.lo.get(), lo.get(), MPFR_RNDD);
    }
    if (ok) return cf;
  }
  throw PrecisionError("continued fraction undecided at the precision cap");
}

}  // namespace

std::int64_t floor_div_alpha(const Rational& t, const AlphaValue& alpha) {
  return alpha.floor_affine(Rational(0), t, Operand::Reciprocal);
}

std::int64_t nth_term(std::int64_t r, const BeattyParams& params) {
  if (r < 1) throw UsageError("nth_term: index must be >= 1");
  return params.alpha.floor_affine(params.beta, Rational(r), Operand::Alpha);
}

bool contains(std::int64_t n, const BeattyParams& params) {
  if (n < 1) throw UsageError("contains: n must be >= 1");
  const Rational upper = shifted(n, 1, params.beta);
  if (params.alpha.sign_affine(upper, Rational(-1)) <= 0) return false;  // n <= alpha + beta - 1
  return floor_div_alpha(upper, params.alpha) -
             floor_div_alpha(shifted(n, 0, params.beta), params.alpha) ==
         1;
}

bool contains_by_fractional_window(std::int64_t n, const BeattyParams& params) {
  if (n < 1) throw UsageError("contains: n must be >= 1");
  const Rational upper = shifted(n, 1, params.beta);
  if (params.alpha.sign_affine(upper, Rational(-1)) <= 0) return false;
  const std::int64_t k = floor_div_alpha(upper, params.alpha);
  // {upper/alpha} > 0  <=>  upper != k*alpha
  if (params.alpha.sign_affine(upper, Rational(-k)) == 0) return false;
  // {upper/alpha} <= 1/alpha  <=>  n - beta <= k*alpha
  return params.alpha.sign_affine(shifted(n, 0, params.beta), Rational(-k)) <= 0;
}

IndexRange indices_between(std::int64_t lo, std::int64_t hi, const BeattyParams& params) {
  IndexRange range;
  if (hi < lo) return range;
  // alpha*r + beta >= lo  <=>  r >= (lo - beta)/alpha
  const std::int64_t first = -floor_div_alpha(params.beta - Rational(lo), params.alpha);
  range.first = std::max<std::int64_t>(1, first);
  // alpha*r + beta < hi + 1  <=>  r < (hi + 1 - beta)/alpha, never an integer unless 0
  const Rational upper = shifted(hi, 1, params.beta);
  range.last = upper.is_zero() ? -1 : floor_div_alpha(upper, params.alpha);
  return range;
}

void for_each_member(std::int64_t lo, std::int64_t hi, const BeattyParams& params,
                     const std::function<void(std::int64_t)>& visit) {
  const IndexRange range = indices_between(std::max<std::int64_t>(lo, 1), hi, params);
  for (std::int64_t r = range.first; r <= range.last; ++r) visit(nth_term(r, params));
}

std::vector<std::int64_t> enumerate_up_to(std::int64_t x, const BeattyParams& params) {
  std::vector<std::int64_t> out;
  if (x < 1) return out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, count_up_to(x, params))));
  for_each_member(1, x, params, [&](std::int64_t n) { out.push_back(n); });
  return out;
}

std::int64_t count_up_to(std::int64_t x, const BeattyParams& params) {
  if (x < 1) return 0;
  return indices_between(1, x, params).size();
}

ContinuedFraction continued_fraction(const AlphaValue& alpha, int k) {
  if (k < 0) throw UsageError("continued_fraction: k must be >= 0");
  if (alpha.is_exact()) return exact_continued_fraction(alpha.quadratic_form(), k);
  return adaptive_continued_fraction(*alpha.adaptive_source(), k);
}

double nearest_int_distance(const AlphaValue& alpha, std::int64_t n, const Rational& beta) {
  if (n < 1) throw UsageError("nearest_int_distance: n must be >= 1");
  return alpha.nearest_int_distance_affine(beta, Rational(n));
}

TypeEstimate estimate_type(const AlphaValue& alpha, std::int64_t q_max) {
  if (q_max < 2) throw InsufficientDataError("estimate_type: q_max must be >= 2");
  const mpz_class limit(static_cast<long>(q_max));
  ContinuedFraction cf;
  for (int k = 8;; k *= 2) {
    cf = continued_fraction(alpha, k);
    if (cmp(cf.convergents.back().second, limit) > 0 || k > 512) break;
  }
  TypeEstimate est;
  for (const auto& [p, q] : cf.convergents) {
    if (cmp(q, 2) < 0 || cmp(q, limit) > 0) continue;
    const std::int64_t qi = q.get_si();
    if (!est.evidence.empty() && est.evidence.back().q == qi) continue;
    const double dist = nearest_int_distance(alpha, qi);
    est.evidence.push_back({qi, dist, -std::log(dist) / std::log(static_cast<double>(qi))});
  }
  if (est.evidence.size() < 2) {
    throw InsufficientDataError("estimate_type: fewer than 2 convergent denominators in [2, q_max]");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(est.evidence.size());
  for (const auto& e : est.evidence) {
    const double x = std::log(static_cast<double>(e.q));
    const double y = -std::log(e.distance);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  est.tau = std::max(1.0, slope);
  return est;
}

}  // namespace bc::beatty
