#pragma once

// Exact arithmetic in Q(sqrt d) for a fixed squarefree d > 1.

#include "rational.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace crode {

template <int D>
struct Surd {
  static_assert(D > 1, "Surd needs a radicand greater than one");
  Rational p{0};  // rational part
  Rational q{0};  // coefficient of sqrt(D)

  Surd() = default;
  Surd(Rational a, Rational b = Rational(0)) : p(std::move(a)), q(std::move(b)) {}
  Surd(int a) : p(a) {}

  friend Surd operator+(const Surd& x, const Surd& y) { return {x.p + y.p, x.q + y.q}; }
  friend Surd operator-(const Surd& x, const Surd& y) { return {x.p - y.p, x.q - y.q}; }
  friend Surd operator-(const Surd& x) { return {-x.p, -x.q}; }
  friend Surd operator*(const Surd& x, const Surd& y) {
    return {x.p * y.p + Rational(D) * x.q * y.q, x.p * y.q + x.q * y.p};
  }
  Surd conjugate() const { return {p, -q}; }
  /// x * conjugate(x), always rational
  Rational norm() const { return p * p - Rational(D) * q * q; }
  friend Surd operator/(const Surd& x, const Surd& y) {
    const Rational n = y.norm();
    if (n == 0) throw std::domain_error("division by zero in Q(sqrt d)");
    const Surd t = x * y.conjugate();
    return {t.p / n, t.q / n};
  }
  friend bool operator==(const Surd&, const Surd&) = default;

  /// Exact sign of p + q sqrt(D).
  int sign() const {
    const int sp = crode::sign(p), sq = crode::sign(q);
    if (sp == 0) return sq;
    if (sq == 0 || sp == sq) return sp;
    // opposite signs: compare p^2 with D q^2
    const Rational diff = p * p - Rational(D) * q * q;
    return diff > 0 ? sp : (diff < 0 ? sq : 0);
  }

  double to_double() const { return crode::to_double(p) + crode::to_double(q) * std::sqrt(static_cast<double>(D)); }
};

template <int D>
std::string to_string(const Surd<D>& s) {
  return to_string(s.p) + " + " + to_string(s.q) + "*sqrt(" + std::to_string(D) + ")";
}

}  // namespace crode
