#include "beattycensus/expsum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "beattycensus/arith.hpp"
#include "beattycensus/beatty.hpp"
#include "beattycensus/errors.hpp"

namespace bc::expsum {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double frac(double t) { return t - std::floor(t); }

// Reduces a value that may be 1 ulp short of an integer boundary back into [0, 1).
double into_unit(double t) {
  t = frac(t);
  return t >= 1.0 ? 0.0 : t;
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw UsageError("bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

double parse_real(std::string_view s, std::string_view what) {
  try {
    std::size_t used = 0;
    double v = std::stod(std::string(s), &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad " + std::string(what) + ": '" + std::string(s) + "'");
  }
}

}  // namespace

double sawtooth(double t) {
  if (!std::isfinite(t)) throw UsageError("sawtooth argument must be finite");
  return into_unit(t) - 0.5;
}

double frac_scaled(std::int64_t k, std::pair<double, double> omega) {
  constexpr std::int64_t kLimit = std::int64_t{1} << 53;
  if (k <= -kLimit || k >= kLimit) throw UsageError("phase multiplier out of range");
  const double kd = static_cast<double>(k);
  // k*hi = p + e exactly; only the fractional parts matter.
  const double p = kd * omega.first;
  const double e = std::fma(kd, omega.first, -p);
  const double t = frac(p) + e + kd * omega.second;
  return into_unit(t);
}

std::complex<double> unit_phase(double t) {
  const double u = into_unit(t);
  return {std::cos(kTwoPi * u), std::sin(kTwoPi * u)};
}

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v))
    comp_ += (sum_ - t) + v;
  else
    comp_ += (v - t) + sum_;
  sum_ = t;
}

UnitSequence UnitSequence::from_reals(std::span<const double> values) {
  UnitSequence seq;
  seq.values_.reserve(values.size());
  for (double v : values) {
    if (!std::isfinite(v)) throw UsageError("sequence values must be finite");
    seq.values_.push_back(into_unit(v));
  }
  return seq;
}

ErdosTuranResult erdos_turan(const UnitSequence& seq, int J, double rho, double sigma) {
  if (!std::isfinite(rho) || !std::isfinite(sigma) || !(rho <= sigma) || !(sigma <= rho + 1.0))
    throw UsageError("interval must satisfy rho <= sigma <= rho + 1");
  if (J < 1) throw UsageError("J must be >= 1");
  if (seq.size() == 0) throw UsageError("sequence must be nonempty");

  const double length = sigma - rho;
  const auto n = static_cast<double>(seq.size());
  ErdosTuranResult out;
  for (double u : seq.values()) {
    if (length >= 1.0 || into_unit(u - rho) <= length) ++out.count;
  }
  out.actual_dev = std::abs(static_cast<double>(out.count) - length * n);

  CompensatedSum bound;
  bound.add(n / (J + 1.0));
  for (int j = 1; j <= J; ++j) {
    ComplexCompensatedSum s;
    for (double u : seq.values()) {
      const double p = j * u;
      const double e = std::fma(static_cast<double>(j), u, -p);
      s.add(unit_phase(frac(p) + e));
    }
    bound.add(3.0 * std::abs(s.value()) / j);
  }
  out.bound = bound.value();
  return out;
}

MultiplicativeSpec MultiplicativeSpec::parse(std::string_view text) {
  MultiplicativeSpec spec;
  if (text == "one") return spec;
  if (text == "mobius") {
    spec.kind = Kind::Mobius;
    return spec;
  }
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  if (head == "rough" && !args.empty()) {
    spec.kind = Kind::Rough;
    spec.threshold = parse_real(args, "rough threshold");
    return spec;
  }
  if (head == "sqfree-rough" && !args.empty()) {
    spec.kind = Kind::SquarefreeRough;
    const auto comma = args.find(',');
    spec.threshold = parse_real(args.substr(0, comma), "rough threshold");
    if (comma != std::string_view::npos) {
      spec.excluded_prime = parse_u64(args.substr(comma + 1), "excluded prime");
      if (!arith::is_prime_u64(spec.excluded_prime))
        throw UsageError("excluded divisor must be prime");
    }
    return spec;
  }
  throw UsageError("unknown multiplicative function '" + std::string(text) +
                   "' (expected one, mobius, rough:Z, sqfree-rough:Y[,P])");
}

std::string MultiplicativeSpec::label() const {
  switch (kind) {
    case Kind::One:
      return "one";
    case Kind::Mobius:
      return "mobius";
    case Kind::Rough:
      return "rough:" + std::to_string(threshold);
    case Kind::SquarefreeRough: {
      std::string s = "sqfree-rough:" + std::to_string(threshold);
      if (excluded_prime != 0) s += "," + std::to_string(excluded_prime);
      return s;
    }
  }
  return "?";
}

std::vector<ExpSumRow> multiplicative_expsum(const MultiplicativeSpec& f, const AlphaValue& alpha,
                                             std::int64_t j, std::span<const std::uint64_t> n_grid,
                                             double tau) {
  if (j < 1) throw UsageError("j must be >= 1");
  if (!(tau >= 1.0)) throw UsageError("tau must be >= 1");
  if (n_grid.empty()) throw UsageError("N grid must be nonempty");
  std::vector<std::uint64_t> grid(n_grid.begin(), n_grid.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.front() < 2) throw UsageError("N must be >= 2");
  const std::uint64_t n_max = grid.back();

  const auto table = arith::build_spf_table(std::max<std::uint64_t>(n_max, 2));
  const auto omega = alpha.to_double_double(Operand::Reciprocal);

  auto weight = [&](std::uint64_t m) -> int {
    if (f.kind == MultiplicativeSpec::Kind::One || m == 1) return 1;
    int mu = 1;
    std::uint64_t rest = m;
    while (rest > 1) {
      const std::uint32_t p = table.spf(rest);
      rest /= p;
      if (rest % p == 0) {
        if (f.kind != MultiplicativeSpec::Kind::Rough) return 0;
        while (rest % p == 0) rest /= p;
      }
      if (f.kind != MultiplicativeSpec::Kind::Mobius) {
        if (p <= f.threshold) return 0;
        if (p == f.excluded_prime) return 0;
      }
      mu = -mu;
    }
    return f.kind == MultiplicativeSpec::Kind::Mobius ? mu : 1;
  };

  std::vector<ExpSumRow> rows;
  rows.reserve(grid.size());
  ComplexCompensatedSum sum;
  std::size_t next = 0;
  for (std::uint64_t m = 1; m <= n_max; ++m) {
    const int w = weight(m);
    if (w != 0) {
      const auto phase = unit_phase(frac_scaled(j * static_cast<std::int64_t>(m), omega));
      sum.add(w > 0 ? phase : -phase);
    }
    if (m == grid[next]) {
      ExpSumRow row;
      const double n = static_cast<double>(m);
      const double log_n = std::log(n);
      row.N = m;
      row.magnitude = std::abs(sum.value());
      row.reference = n / log_n;
      row.window_limit = std::pow(n, 1.0 / (3.0 * tau)) / std::pow(log_n, 3.0 + 3.0 / (2.0 * tau));
      row.in_window = static_cast<double>(j) <= row.window_limit;
      rows.push_back(row);
      ++next;
    }
  }
  return rows;
}

double minsum_type1(const AlphaValue& alpha, double x, std::int64_t N) {
  if (!(x > 0) || !std::isfinite(x)) throw UsageError("x must be positive");
  if (N < 1) throw UsageError("N must be >= 1");
  CompensatedSum s;
  for (std::int64_t n = 1; n <= N; ++n) {
    const double cap = x / static_cast<double>(n);
    const double dist = beatty::nearest_int_distance(alpha, n);
    s.add(cap * dist < 1.0 ? cap : 1.0 / dist);
  }
  return s.value();
}

double minsum_type2(const AlphaValue& alpha, const Rational& beta, double x, std::int64_t N) {
  if (!(x > 0) || !std::isfinite(x)) throw UsageError("x must be positive");
  if (N < 1) throw UsageError("N must be >= 1");
  CompensatedSum s;
  for (std::int64_t n = 1; n <= N; ++n) {
    const double dist = beatty::nearest_int_distance(alpha, n, beta);
    s.add(x * dist < 1.0 ? x : 1.0 / dist);
  }
  return s.value();
}

double minsum_type1_reference(double x, double N, double tau, double eps) {
  return std::pow(N, 1.0 + eps) + std::pow(x, 1.0 - 1.0 / (1.0 + tau) + eps);
}

double minsum_type2_reference(double x, double N, double tau, double eps) {
  return std::pow(N, 1.0 + eps) + std::pow(x * N, 1.0 - 1.0 / (1.0 + tau) + eps) + x;
}

std::complex<double> TrigApprox::a(int h) const {
  if (h == 0 || std::abs(h) > H_) throw UsageError("a_h is defined for 1 <= |h| <= H");
  const double v = a_imag_[static_cast<std::size_t>(std::abs(h)) - 1];
  return {0.0, h > 0 ? v : -v};
}

double TrigApprox::b(int h) const {
  if (std::abs(h) > H_) throw UsageError("b_h is defined for |h| <= H");
  return b_[static_cast<std::size_t>(std::abs(h))];
}

std::complex<double> TrigApprox::a_sum(double t) const {
  ComplexCompensatedSum s;
  for (int h = 1; h <= H_; ++h) {
    s.add(a(h) * unit_phase(frac_scaled(h, {t, 0.0})));
    s.add(a(-h) * unit_phase(frac_scaled(-h, {t, 0.0})));
  }
  return s.value();
}

std::complex<double> TrigApprox::majorant(double t) const {
  ComplexCompensatedSum s;
  s.add(b_[0]);
  for (int h = 1; h <= H_; ++h) {
    s.add(b(h) * unit_phase(frac_scaled(h, {t, 0.0})));
    s.add(b(-h) * unit_phase(frac_scaled(-h, {t, 0.0})));
  }
  return s.value();
}

// a_h = -phi(h/(H+1)) / (2 pi i h) with phi(u) = pi u (1 - |u|) cot(pi u) + |u|,
// b_h = (1 - |h|/(H+1)) / (2H + 2), the Fejer kernel scaled by 1/(2H+2).
TrigApprox vaaler_approx(int H) {
  if (H < 1) throw UsageError("H must be >= 1");
  TrigApprox out;
  out.H_ = H;
  out.a_imag_.resize(static_cast<std::size_t>(H));
  out.b_.resize(static_cast<std::size_t>(H) + 1);
  const double scale = H + 1.0;
  for (int h = 1; h <= H; ++h) {
    const double u = h / scale;
    const double phi = std::numbers::pi * u * (1.0 - u) / std::tan(std::numbers::pi * u) + u;
    out.a_imag_[static_cast<std::size_t>(h) - 1] = phi / (kTwoPi * h);
  }
  for (int h = 0; h <= H; ++h) out.b_[static_cast<std::size_t>(h)] = (1.0 - h / scale) / (2.0 * scale);
  return out;
}

VaalerGridCheck check_vaaler(const TrigApprox& approx, std::size_t points, double slack) {
  if (points == 0) throw UsageError("grid must have at least one point");
  const int H = approx.H();
  VaalerGridCheck out;
  out.H = H;
  out.points = points;
  out.max_violation = -INFINITY;
  out.min_majorant = INFINITY;

  // Grid phases h*k/points are reduced exactly in integers.
  const auto p = static_cast<std::uint64_t>(points);
  for (std::uint64_t k = 0; k < p; ++k) {
    ComplexCompensatedSum a_sum, b_sum;
    b_sum.add(approx.b(0));
    for (int h = 1; h <= H; ++h) {
      const std::uint64_t r = (static_cast<std::uint64_t>(h) * k) % p;
      const auto e_pos = unit_phase(static_cast<double>(r) / static_cast<double>(p));
      const auto e_neg = std::conj(e_pos);
      a_sum.add(approx.a(h) * e_pos);
      a_sum.add(approx.a(-h) * e_neg);
      b_sum.add(approx.b(h) * e_pos);
      b_sum.add(approx.b(-h) * e_neg);
    }
    const double psi = static_cast<double>(k) / static_cast<double>(p) - 0.5;
    const auto a = a_sum.value();
    const auto b = b_sum.value();
    const double err = std::abs(psi - a.real());
    out.max_a_error = std::max(out.max_a_error, err);
    out.max_violation = std::max(out.max_violation, err - b.real());
    out.max_imag = std::max({out.max_imag, std::abs(a.imag()), std::abs(b.imag())});
    out.min_majorant = std::min(out.min_majorant, b.real());
  }
  out.holds = out.max_violation <= slack && out.min_majorant >= -slack && out.max_imag <= slack;
  return out;
}

DivisorBeattyResult divisor_beatty_error(std::int64_t d, std::int64_t N, const BeattyParams& params) {
  if (d < 1) throw UsageError("d must be >= 1");
  if (N < 1) throw UsageError("N must be >= 1");
  DivisorBeattyResult out;
  for (std::int64_t m = d; m <= N; m += d) {
    if (beatty::contains(m, params)) ++out.count;
  }
  out.main = static_cast<double>(N) / (params.alpha.to_double() * static_cast<double>(d));
  out.err = static_cast<double>(out.count) - out.main;
  return out;
}

}  // namespace bc::expsum
