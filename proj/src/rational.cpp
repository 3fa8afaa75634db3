#include "beattycensus/rational.hpp"

#include <cctype>
#include <numeric>
#include <string>

#include "beattycensus/errors.hpp"
#include "int128.hpp"

namespace bc {
namespace {

using detail::i128;

Rational from_wide(i128 num, i128 den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr i128 lim = INT64_MAX;
  if (num > lim || num < -lim || den > lim) throw ResourceError("rational exceeds 64-bit range");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num) : num_(num), den_(1) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  if (den < 0) {
    if (num == INT64_MIN || den == INT64_MIN) throw ResourceError("rational exceeds 64-bit range");
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational operator+(const Rational& a, const Rational& b) {
  return from_wide(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return from_wide(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a) { return from_wide(-i128(a.num_), a.den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
}

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw UsageError("empty rational");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::size_t used_n = 0, used_d = 0;
    std::int64_t n = 0, d = 0;
    try {
      n = std::stoll(s.substr(0, slash), &used_n);
      d = std::stoll(s.substr(slash + 1), &used_d);
    } catch (const std::exception&) {
      throw UsageError("cannot parse rational '" + s + "'");
    }
    if (used_n != slash || used_d != s.size() - slash - 1) {
      throw UsageError("cannot parse rational '" + s + "'");
    }
    return Rational(n, d);
  }

  // Decimal literal: [sign] digits [. digits] [e [sign] digits]
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  i128 mant = 0;
  int frac_digits = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mant = mant * 10 + (c - '0');
      if (mant > i128(INT64_MAX) * 1000) throw ResourceError("decimal literal too long: " + s);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw UsageError("cannot parse rational '" + s + "'");
  int exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw UsageError("cannot parse rational '" + s + "'");
    std::size_t used = 0;
    try {
      exponent = std::stoi(s.substr(i + 1), &used);
    } catch (const std::exception&) {
      throw UsageError("cannot parse rational '" + s + "'");
    }
    if (used != s.size() - i - 1) throw UsageError("cannot parse rational '" + s + "'");
  }
  exponent -= frac_digits;
  if (exponent > 38 || exponent < -38) throw ResourceError("decimal exponent out of range: " + s);
  i128 num = neg ? -mant : mant;
  i128 den = 1;
  try {
    for (int k = 0; k < exponent; ++k) num = detail::checked_mul(num, 10);
    for (int k = 0; k < -exponent; ++k) den = detail::checked_mul(den, 10);
  } catch (const detail::Overflow&) {
    throw ResourceError("decimal literal out of range: " + s);
  }
  return from_wide(num, den);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace bc
