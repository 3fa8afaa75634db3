#include "beattycensus/alpha.hpp"

#include <numeric>
#include <string>
#include <vector>

#include "adaptive.hpp"
#include "beattycensus/errors.hpp"
#include "surd.hpp"

namespace bc {
namespace detail {

AdaptiveSource::AdaptiveSource(Enclosure alpha, PrecisionPolicy policy)
    : alpha_(std::move(alpha)), policy_(policy) {
  if (policy_.start_bits < 32 || policy_.max_bits < policy_.start_bits) {
    throw UsageError("invalid precision policy");
  }
  while (levels_ < kMaxLevels && (policy_.start_bits << levels_) <= policy_.max_bits) ++levels_;
}

const Interval& AdaptiveSource::enclosure(int level, Operand which) const {
  Level& slot = cache_.at(static_cast<std::size_t>(level));
  std::call_once(slot.once, [&] {
    const mpfr_prec_t bits = level_bits(level);
    slot.alpha.emplace(bits);
    alpha_(bits, *slot.alpha);
    slot.recip.emplace(bits);
    mpfr_ui_div(slot.recip->lo.get(), 1, slot.alpha->hi.get(), MPFR_RNDD);
    mpfr_ui_div(slot.recip->hi.get(), 1, slot.alpha->lo.get(), MPFR_RNDU);
  });
  return which == Operand::Alpha ? *slot.alpha : *slot.recip;
}

void rational_enclosure(const Rational& q, Interval& out) {
  mpfr_set_si(out.lo.get(), q.num(), MPFR_RNDD);
  mpfr_set_si(out.hi.get(), q.num(), MPFR_RNDU);
  mpfr_div_si(out.lo.get(), out.lo.get(), q.den(), MPFR_RNDD);
  mpfr_div_si(out.hi.get(), out.hi.get(), q.den(), MPFR_RNDU);
}

void affine_enclosure(const Rational& u, const Rational& v, const Interval& theta,
                      Interval& out) {
  const mpfr_prec_t prec = mpfr_get_prec(out.lo.get());
  Interval ue(prec);
  rational_enclosure(u, ue);
  Mp vlo(prec), vhi(prec);
  const bool nonneg = v.num() >= 0;
  mpfr_mul_si(vlo.get(), (nonneg ? theta.lo : theta.hi).get(), v.num(), MPFR_RNDD);
  mpfr_mul_si(vhi.get(), (nonneg ? theta.hi : theta.lo).get(), v.num(), MPFR_RNDU);
  mpfr_div_si(vlo.get(), vlo.get(), v.den(), MPFR_RNDD);
  mpfr_div_si(vhi.get(), vhi.get(), v.den(), MPFR_RNDU);
  mpfr_add(out.lo.get(), ue.lo.get(), vlo.get(), MPFR_RNDD);
  mpfr_add(out.hi.get(), ue.hi.get(), vhi.get(), MPFR_RNDU);
}

}  // namespace detail

namespace {

using detail::i128;
using detail::Interval;
using detail::Mp;

constexpr std::int64_t kCoefficientLimit = std::int64_t{1} << 31;

bool is_perfect_square(std::int64_t d) {
  if (d < 0) return false;
  const auto r = static_cast<std::int64_t>(detail::isqrt(static_cast<detail::u128>(d)));
  return r * r == d;
}

QuadraticForm normalized_form(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t d) {
  if (r == 0) throw UsageError("alpha: zero denominator");
  if (d <= 0) throw UsageError("alpha: radicand must be positive");
  for (std::int64_t c : {p, q, r, d}) {
    if (c >= kCoefficientLimit || c <= -kCoefficientLimit) {
      throw UsageError("alpha: coefficients must stay below 2^31 in magnitude");
    }
  }
  if (q == 0 || is_perfect_square(d)) throw UsageError("alpha must be irrational");
  if (r < 0) {
    p = -p;
    q = -q;
    r = -r;
  }
  const std::int64_t g = std::gcd(std::gcd(p, q), r);
  QuadraticForm f{p / g, q / g, r / g, d};
  // alpha > 1  <=>  (p - r) + q*sqrt(d) > 0.
  if (detail::surd_sign(i128(f.p) - f.r, f.q, f.d) <= 0) throw UsageError("alpha must exceed 1");
  return f;
}

void quadratic_enclosure(const QuadraticForm& f, mpfr_prec_t prec, Interval& out) {
  Mp slo(prec), shi(prec);
  mpfr_set_si(slo.get(), f.d, MPFR_RNDD);
  mpfr_set_si(shi.get(), f.d, MPFR_RNDU);
  mpfr_sqrt(slo.get(), slo.get(), MPFR_RNDD);
  mpfr_sqrt(shi.get(), shi.get(), MPFR_RNDU);
  const bool pos = f.q > 0;
  mpfr_mul_si(out.lo.get(), (pos ? slo : shi).get(), f.q, MPFR_RNDD);
  mpfr_mul_si(out.hi.get(), (pos ? shi : slo).get(), f.q, MPFR_RNDU);
  mpfr_add_si(out.lo.get(), out.lo.get(), f.p, MPFR_RNDD);
  mpfr_add_si(out.hi.get(), out.hi.get(), f.p, MPFR_RNDU);
  mpfr_div_si(out.lo.get(), out.lo.get(), f.r, MPFR_RNDD);
  mpfr_div_si(out.hi.get(), out.hi.get(), f.r, MPFR_RNDU);
}

struct Affine128 {
  i128 a, b, c;
};

// u + v*theta = (a + b*sqrt(d)) / c with c > 0.
Affine128 affine128(const Rational& u, const Rational& v, i128 tp, i128 tq, i128 tr) {
  using detail::checked_add;
  using detail::checked_mul;
  const i128 ud = u.den(), vd = v.den();
  Affine128 out{};
  out.a = checked_add(checked_mul(checked_mul(u.num(), vd), tr),
                      checked_mul(checked_mul(v.num(), ud), tp));
  out.b = checked_mul(checked_mul(v.num(), ud), tq);
  out.c = checked_mul(checked_mul(ud, vd), tr);
  return out;
}

struct AffineMpz {
  mpz_class a, b, c;
};

AffineMpz affine_mpz(const Rational& u, const Rational& v, i128 tp, i128 tq, i128 tr) {
  const mpz_class un(static_cast<long>(u.num())), ud(static_cast<long>(u.den()));
  const mpz_class vn(static_cast<long>(v.num())), vd(static_cast<long>(v.den()));
  const mpz_class p = detail::to_mpz(tp), q = detail::to_mpz(tq), r = detail::to_mpz(tr);
  return {un * vd * r + vn * ud * p, vn * ud * q, ud * vd * r};
}

std::int64_t narrow_floor(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ResourceError("floor result exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

std::int64_t narrow_floor(const mpz_class& v) {
  if (!v.fits_slong_p()) throw ResourceError("floor result exceeds 64-bit range");
  return v.get_si();
}

}  // namespace

AlphaValue AlphaValue::quadratic(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t d) {
  AlphaValue a;
  a.form_ = normalized_form(p, q, r, d);
  a.has_form_ = true;
  const auto& f = a.form_;
  // 1/alpha = r (p - q sqrt d) / (p^2 - q^2 d)
  i128 rp = i128(f.r) * f.p;
  i128 rq = -i128(f.r) * f.q;
  i128 rr = i128(f.p) * f.p - i128(f.q) * f.q * f.d;
  if (rr < 0) {
    rp = -rp;
    rq = -rq;
    rr = -rr;
  }
  i128 g = rr;
  for (i128 x : {rp < 0 ? -rp : rp, rq < 0 ? -rq : rq}) {
    while (x != 0) {
      i128 t = g % x;
      g = x;
      x = t;
    }
  }
  a.recip_p_ = rp / g;
  a.recip_q_ = rq / g;
  a.recip_r_ = rr / g;
  if (f.p == 0 && f.q == 1 && f.r == 1) {
    a.label_ = "sqrt:" + std::to_string(f.d);
  } else {
    a.label_ = "quad:" + std::to_string(f.p) + "," + std::to_string(f.q) + "," +
               std::to_string(f.r) + "," + std::to_string(f.d);
  }
  return a;
}

AlphaValue AlphaValue::adaptive_quadratic(std::int64_t p, std::int64_t q, std::int64_t r,
                                          std::int64_t d, PrecisionPolicy policy) {
  AlphaValue a;
  a.form_ = normalized_form(p, q, r, d);
  a.has_form_ = true;
  const QuadraticForm f = a.form_;
  a.adaptive_ = std::make_shared<detail::AdaptiveSource>(
      [f](mpfr_prec_t prec, Interval& out) { quadratic_enclosure(f, prec, out); }, policy);
  a.label_ = "adaptive-quad:" + std::to_string(f.p) + "," + std::to_string(f.q) + "," +
             std::to_string(f.r) + "," + std::to_string(f.d);
  return a;
}

AlphaValue AlphaValue::euler_e(PrecisionPolicy policy) {
  AlphaValue a;
  a.adaptive_ = std::make_shared<detail::AdaptiveSource>(
      [](mpfr_prec_t, Interval& out) {
        mpfr_set_ui(out.lo.get(), 1, MPFR_RNDN);
        mpfr_set_ui(out.hi.get(), 1, MPFR_RNDN);
        mpfr_exp(out.lo.get(), out.lo.get(), MPFR_RNDD);
        mpfr_exp(out.hi.get(), out.hi.get(), MPFR_RNDU);
      },
      policy);
  a.label_ = "e";
  return a;
}

AlphaValue AlphaValue::pi(PrecisionPolicy policy) {
  AlphaValue a;
  a.adaptive_ = std::make_shared<detail::AdaptiveSource>(
      [](mpfr_prec_t, Interval& out) {
        mpfr_const_pi(out.lo.get(), MPFR_RNDD);
        mpfr_const_pi(out.hi.get(), MPFR_RNDU);
      },
      policy);
  a.label_ = "pi";
  return a;
}

AlphaValue AlphaValue::parse(std::string_view spec) {
  const std::string s(spec);
  if (s == "e") return euler_e();
  if (s == "pi") return pi();
  auto parse_ints = [&](std::string_view body, std::size_t expected) {
    std::vector<std::int64_t> out;
    std::size_t start = 0;
    while (start <= body.size()) {
      const std::size_t comma = body.find(',', start);
      const std::string tok(body.substr(start, comma == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : comma - start));
      std::size_t used = 0;
      try {
        out.push_back(std::stoll(tok, &used));
      } catch (const std::exception&) {
        throw UsageError("cannot parse alpha '" + s + "'");
      }
      if (used != tok.size()) throw UsageError("cannot parse alpha '" + s + "'");
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (out.size() != expected) throw UsageError("cannot parse alpha '" + s + "'");
    return out;
  };
  if (s.rfind("sqrt:", 0) == 0) {
    const auto v = parse_ints(std::string_view(s).substr(5), 1);
    return sqrt(v[0]);
  }
  if (s.rfind("quad:", 0) == 0) {
    const auto v = parse_ints(std::string_view(s).substr(5), 4);
    return quadratic(v[0], v[1], v[2], v[3]);
  }
  throw UsageError("unknown alpha '" + s + "' (expected sqrt:D, quad:p,q,r,d, e, or pi)");
}

const QuadraticForm& AlphaValue::quadratic_form() const {
  if (!has_form_) throw UsageError("alpha '" + label_ + "' has no quadratic form");
  return form_;
}

double AlphaValue::to_double() const { return to_double_double(Operand::Alpha).first; }

std::pair<double, double> AlphaValue::to_double_double(Operand which) const {
  constexpr mpfr_prec_t kBits = 256;
  Mp value(kBits);
  if (adaptive_) {
    // Level with at least 256 bits, or the top level if the cap is lower.
    int level = 0;
    while (level + 1 < adaptive_->level_count() && adaptive_->level_bits(level) < kBits) ++level;
    const Interval& e = adaptive_->enclosure(level, which);
    mpfr_add(value.get(), e.lo.get(), e.hi.get(), MPFR_RNDN);
    mpfr_div_2ui(value.get(), value.get(), 1, MPFR_RNDN);
  } else {
    Interval e(kBits);
    quadratic_enclosure(form_, kBits, e);
    if (which == Operand::Alpha) {
      mpfr_set(value.get(), e.lo.get(), MPFR_RNDN);
    } else {
      mpfr_ui_div(value.get(), 1, e.lo.get(), MPFR_RNDN);
    }
  }
  const double hi = mpfr_get_d(value.get(), MPFR_RNDN);
  mpfr_sub_d(value.get(), value.get(), hi, MPFR_RNDN);
  return {hi, mpfr_get_d(value.get(), MPFR_RNDN)};
}

std::int64_t AlphaValue::floor_affine(const Rational& u, const Rational& v, Operand which) const {
  if (v.is_zero()) return narrow_floor(detail::floor_div(i128(u.num()), i128(u.den())));
  if (!adaptive_) {
    const bool a = which == Operand::Alpha;
    const i128 tp = a ? i128(form_.p) : recip_p_;
    const i128 tq = a ? i128(form_.q) : recip_q_;
    const i128 tr = a ? i128(form_.r) : recip_r_;
    try {
      const Affine128 x = affine128(u, v, tp, tq, tr);
      return narrow_floor(detail::surd_floor(x.a, x.b, x.c, form_.d));
    } catch (const detail::Overflow&) {
      const AffineMpz x = affine_mpz(u, v, tp, tq, tr);
      return narrow_floor(detail::surd_floor(x.a, x.b, x.c, mpz_class(static_cast<long>(form_.d))));
    }
  }
  for (int level = 0; level < adaptive_->level_count(); ++level) {
    const Interval& theta = adaptive_->enclosure(level, which);
    Interval w(adaptive_->level_bits(level) + 128);
    detail::affine_enclosure(u, v, theta, w);
    mpfr_floor(w.lo.get(), w.lo.get());
    mpfr_floor(w.hi.get(), w.hi.get());
    if (mpfr_equal_p(w.lo.get(), w.hi.get())) {
      if (!mpfr_fits_slong_p(w.lo.get(), MPFR_RNDN)) {
        throw ResourceError("floor result exceeds 64-bit range");
      }
      return mpfr_get_si(w.lo.get(), MPFR_RNDN);
    }
  }
  throw PrecisionError("floor of " + u.to_string() + " + " + v.to_string() + "*" + label_ +
                       " undecided at the precision cap");
}

int AlphaValue::sign_affine(const Rational& u, const Rational& v, Operand which) const {
  if (v.is_zero()) return (u.num() > 0) - (u.num() < 0);
  if (!adaptive_) {
    const bool a = which == Operand::Alpha;
    const i128 tp = a ? i128(form_.p) : recip_p_;
    const i128 tq = a ? i128(form_.q) : recip_q_;
    const i128 tr = a ? i128(form_.r) : recip_r_;
    try {
      const Affine128 x = affine128(u, v, tp, tq, tr);
      return detail::surd_sign(x.a, x.b, form_.d);
    } catch (const detail::Overflow&) {
      const AffineMpz x = affine_mpz(u, v, tp, tq, tr);
      return detail::surd_sign(x.a, x.b, mpz_class(static_cast<long>(form_.d)));
    }
  }
  for (int level = 0; level < adaptive_->level_count(); ++level) {
    const Interval& theta = adaptive_->enclosure(level, which);
    Interval w(adaptive_->level_bits(level) + 128);
    detail::affine_enclosure(u, v, theta, w);
    if (mpfr_sgn(w.lo.get()) > 0) return 1;
    if (mpfr_sgn(w.hi.get()) < 0) return -1;
  }
  throw PrecisionError("sign of " + u.to_string() + " + " + v.to_string() + "*" + label_ +
                       " undecided at the precision cap");
}

double AlphaValue::nearest_int_distance_affine(const Rational& u, const Rational& v,
                                               Operand which) const {
  if (v.is_zero()) {
    const i128 n = u.num(), d = u.den();
    i128 r = n - detail::floor_div(n, d) * d;  // in [0, d)
    if (2 * r > d) r = d - r;
    return static_cast<double>(r) / static_cast<double>(d);
  }
  if (!adaptive_) {
    const bool a = which == Operand::Alpha;
    AffineMpz x = affine_mpz(u, v, a ? i128(form_.p) : recip_p_, a ? i128(form_.q) : recip_q_,
                             a ? i128(form_.r) : recip_r_);
    const mpz_class d(static_cast<long>(form_.d));
    const mpz_class k = detail::surd_floor(x.a, x.b, x.c, d);
    mpz_class a1 = x.a - k * x.c;  // fractional part = (a1 + b sqrt d) / c
    mpz_class b = x.b;
    if (detail::surd_sign(mpz_class(2 * a1 - x.c), mpz_class(2 * b), d) > 0) {
      a1 = x.c - a1;
      b = -b;
    }
    // distance = (a1 + b sqrt d) / c > 0; avoid cancellation via the conjugate.
    constexpr mpfr_prec_t kBits = 192;
    Mp root(kBits), num(kBits), den(kBits);
    mpfr_set_z(root.get(), d.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
    if (sgn(a1) == 0 || sgn(b) == 0 || sgn(a1) == sgn(b)) {
      mpfr_mul_z(num.get(), root.get(), b.get_mpz_t(), MPFR_RNDN);
      mpfr_add_z(num.get(), num.get(), a1.get_mpz_t(), MPFR_RNDN);
      mpfr_div_z(num.get(), num.get(), x.c.get_mpz_t(), MPFR_RNDN);
      return mpfr_get_d(num.get(), MPFR_RNDN);
    }
    const mpz_class exact = a1 * a1 - b * b * d;
    mpfr_set_z(num.get(), exact.get_mpz_t(), MPFR_RNDN);
    mpfr_mul_z(den.get(), root.get(), b.get_mpz_t(), MPFR_RNDN);
    mpfr_z_sub(den.get(), a1.get_mpz_t(), den.get(), MPFR_RNDN);
    mpfr_mul_z(den.get(), den.get(), x.c.get_mpz_t(), MPFR_RNDN);
    mpfr_div(num.get(), num.get(), den.get(), MPFR_RNDN);
    return mpfr_get_d(num.get(), MPFR_RNDN);
  }
  for (int level = 0; level < adaptive_->level_count(); ++level) {
    const mpfr_prec_t bits = adaptive_->level_bits(level) + 128;
    const Interval& theta = adaptive_->enclosure(level, which);
    Interval w(bits);
    detail::affine_enclosure(u, v, theta, w);
    Mp flo(bits), fhi(bits);
    mpfr_floor(flo.get(), w.lo.get());
    mpfr_floor(fhi.get(), w.hi.get());
    if (!mpfr_equal_p(flo.get(), fhi.get())) continue;
    mpfr_sub(w.lo.get(), w.lo.get(), flo.get(), MPFR_RNDD);
    mpfr_sub(w.hi.get(), w.hi.get(), flo.get(), MPFR_RNDU);
    const bool low_half = mpfr_cmp_d(w.hi.get(), 0.5) <= 0;
    const bool high_half = mpfr_cmp_d(w.lo.get(), 0.5) >= 0;
    if (!low_half && !high_half) continue;
    if (high_half) {
      // distance = 1 - frac: swap and negate the ends.
      Mp lo(bits);
      mpfr_ui_sub(lo.get(), 1, w.hi.get(), MPFR_RNDD);
      mpfr_ui_sub(w.hi.get(), 1, w.lo.get(), MPFR_RNDU);
      mpfr_set(w.lo.get(), lo.get(), MPFR_RNDD);
    }
    if (mpfr_sgn(w.lo.get()) <= 0) continue;
    Mp width(bits);
    mpfr_sub(width.get(), w.hi.get(), w.lo.get(), MPFR_RNDU);
    mpfr_div(width.get(), width.get(), w.lo.get(), MPFR_RNDU);
    if (mpfr_cmp_d(width.get(), 0x1p-56) <= 0) return mpfr_get_d(w.lo.get(), MPFR_RNDN);
  }
  throw PrecisionError("distance to nearest integer undecided at the precision cap");
}

}  // namespace bc
