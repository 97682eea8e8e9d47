#pragma once

// Exact rational scalars used for every structural check (CR identities,
// kineticity, realizations). Floats only appear downstream of these.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace crode {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) { return q.str(); }

inline int sign(const Rational& q) { return q.sign(); }

namespace detail {

// Boost reads a leading 0 as an octal prefix; strip it so digits are decimal.
inline Integer decimal_integer(const std::string& digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string::npos ? Integer(0) : Integer(digits.substr(first));
}

}  // namespace detail

/// Parses "3", "-3/2", "0.25", "1e-3", "+7". Unicode minus (U+2212) is
/// accepted in place of '-'. Decimal input is converted exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2212 MINUS SIGN in UTF-8
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      s.push_back('-');
      i += 2;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(text[i]))) s.push_back(text[i]);
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto bad = [&] { return std::invalid_argument("malformed rational literal '" + std::string(text) + "'"); };

  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::size_t from) {
    std::size_t end = from;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
    return end;
  };

  Rational value;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::size_t num_end = digits(pos);
    if (num_end != slash || num_end == pos) throw bad();
    std::size_t den_end = digits(slash + 1);
    if (den_end != s.size() || den_end == slash + 1) throw bad();
    const Integer num = detail::decimal_integer(s.substr(pos, slash - pos));
    const Integer den = detail::decimal_integer(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else {
    std::size_t int_end = digits(pos);
    std::string mantissa = s.substr(pos, int_end - pos);
    std::size_t frac_digits = 0;
    std::size_t cur = int_end;
    if (cur < s.size() && s[cur] == '.') {
      std::size_t frac_end = digits(cur + 1);
      mantissa += s.substr(cur + 1, frac_end - cur - 1);
      frac_digits = frac_end - cur - 1;
      cur = frac_end;
    }
    if (mantissa.empty()) throw bad();
    long exponent = 0;
    if (cur < s.size() && (s[cur] == 'e' || s[cur] == 'E')) {
      std::size_t exp_start = cur + 1;
      bool exp_neg = false;
      if (exp_start < s.size() && (s[exp_start] == '+' || s[exp_start] == '-')) {
        exp_neg = s[exp_start] == '-';
        ++exp_start;
      }
      std::size_t exp_end = digits(exp_start);
      if (exp_end == exp_start || exp_end - exp_start > 6) throw bad();
      exponent = std::stol(s.substr(exp_start, exp_end - exp_start));
      if (exp_neg) exponent = -exponent;
      cur = exp_end;
    }
    if (cur != s.size()) throw bad();
    exponent -= static_cast<long>(frac_digits);
    value = Rational(detail::decimal_integer(mantissa));
    Integer scale = mp::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
    if (exponent < 0)
      value /= Rational(scale);
    else
      value *= Rational(scale);
  }
  return negative ? Rational(-value) : value;
}

/// Exact conversion of a finite double to the rational it denotes.
inline Rational from_double(double d) {
  if (!std::isfinite(d)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(d);
}

/// Square root of a nonnegative rational when it is itself rational.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q.sign() < 0) return std::nullopt;
  Integer num = mp::numerator(q);
  Integer den = mp::denominator(q);
  Integer rn = mp::sqrt(num);
  Integer rd = mp::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

inline Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  Integer acc = 1;
  for (unsigned i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return Rational(acc);
}

}  // namespace crode
