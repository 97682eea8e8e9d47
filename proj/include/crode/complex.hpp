#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace crode {

using Complex = std::complex<double>;

/// Complex number with exact rational parts.
struct ExactComplex {
  Rational re{0};
  Rational im{0};

  ExactComplex() = default;
  ExactComplex(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
  ExactComplex(int r) : re(r) {}

  bool is_zero() const { return re == 0 && im == 0; }
  ExactComplex conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }

  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
    Rational n = b.norm();
    if (n == 0) throw std::domain_error("division by exact complex zero");
    ExactComplex p = a * b.conj();
    return {p.re / n, p.im / n};
  }
  ExactComplex& operator+=(const ExactComplex& o) { return *this = *this + o; }
  ExactComplex& operator-=(const ExactComplex& o) { return *this = *this - o; }
  ExactComplex& operator*=(const ExactComplex& o) { return *this = *this * o; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.re == b.re && a.im == b.im; }

  Complex to_complex() const { return {to_double(re), to_double(im)}; }
};

inline std::string to_string(const ExactComplex& z) {
  if (z.im == 0) return to_string(z.re);
  std::string im = z.im.sign() < 0 ? to_string(Rational(-z.im)) : to_string(z.im);
  if (z.re == 0) return (z.im.sign() < 0 ? "-" : "") + im + "i";
  return to_string(z.re) + (z.im.sign() < 0 ? " - " : " + ") + im + "i";
}

/// Principal square root: re(s) >= 0, and im(s) >= 0 when re(s) = 0.
/// Uses the half-angle form that avoids cancellation in either half plane.
inline Complex complex_sqrt(Complex w) {
  const double xi = w.real();
  const double eta = w.imag();
  if (xi == 0.0 && eta == 0.0) return {0.0, 0.0};
  const double modulus = std::hypot(xi, eta);
  double re, im;
  if (xi >= 0.0) {
    re = std::sqrt(0.5 * (modulus + xi));
    im = eta / (2.0 * re);
  } else {
    im = std::sqrt(0.5 * (modulus - xi));
    if (std::signbit(eta)) im = -im;
    re = eta / (2.0 * im);
    if (eta == 0.0) {
      re = 0.0;
      im = std::fabs(im);
    }
  }
  if (re == 0.0 && im < 0.0) im = -im;
  if (re < 0.0) {
    re = -re;
    im = -im;
  }
  return {re, im};
}

/// Exact principal square root, when both parts of the root are rational.
inline std::optional<ExactComplex> exact_complex_sqrt(const ExactComplex& w) {
  auto modulus = exact_sqrt(w.norm());
  if (!modulus) return std::nullopt;
  auto re = exact_sqrt((*modulus + w.re) / 2);
  auto im = exact_sqrt((*modulus - w.re) / 2);
  if (!re || !im) return std::nullopt;
  Rational im_signed = w.im.sign() < 0 ? Rational(-*im) : *im;
  return ExactComplex(*re, im_signed);
}

/// Polynomial in one complex variable: coefficients c_0 .. c_R.
/// Trailing zero coefficients are trimmed so the leading one is nonzero.
template <class C>
class ComplexPoly {
 public:
  ComplexPoly() : coeffs_{C(0)} {}
  explicit ComplexPoly(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(C(0));
    trim();
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<C>& coefficients() const { return coeffs_; }
  const C& operator[](std::size_t r) const { return coeffs_[r]; }
  C coefficient(std::size_t r) const { return r < coeffs_.size() ? coeffs_[r] : C(0); }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == C(0); }

  template <class V>
  V operator()(const V& z) const {
    V acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + convert<V>(*it);
    return acc;
  }

  ComplexPoly derivative() const {
    if (coeffs_.size() == 1) return ComplexPoly();
    std::vector<C> d;
    for (std::size_t r = 1; r < coeffs_.size(); ++r) d.push_back(coeffs_[r] * C(static_cast<int>(r)));
    return ComplexPoly(std::move(d));
  }

  friend bool operator==(const ComplexPoly& a, const ComplexPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  template <class V>
  static V convert(const C& c) {
    if constexpr (std::is_same_v<C, ExactComplex> && !std::is_same_v<V, ExactComplex>)
      return V(c.to_complex());
    else
      return V(c);
  }

  void trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == C(0)) coeffs_.pop_back();
  }

  std::vector<C> coeffs_;
};

using ExactComplexPoly = ComplexPoly<ExactComplex>;
using FloatComplexPoly = ComplexPoly<Complex>;

inline FloatComplexPoly to_float(const ExactComplexPoly& p) {
  std::vector<Complex> c;
  for (const auto& e : p.coefficients()) c.push_back(e.to_complex());
  return FloatComplexPoly(std::move(c));
}

}  // namespace crode
