#pragma once

// Low-degree complex root solvers. Roots come back in lexicographic
// (re, im) order so downstream output is deterministic.

#include "complex.hpp"
#include "errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace crode {

inline constexpr double kMultipleRootTolerance = 1e-9;

namespace detail {

inline bool lex_less(const Complex& a, const Complex& b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::fabs(a.real() - b.real()) > 1e-12 * scale) return a.real() < b.real();
  return a.imag() < b.imag();
}

inline bool near(const Complex& a, const Complex& b, double scale) {
  return std::abs(a - b) < kMultipleRootTolerance * std::max(1.0, scale);
}

}  // namespace detail

struct QuadraticRoots {
  std::array<Complex, 2> roots;
  bool double_root = false;
};

struct CubicRoots {
  std::array<Complex, 3> roots;
  /// Multiplicity of each entry of `roots` (a double root shows 2 twice).
  std::array<int, 3> multiplicity{1, 1, 1};

  int max_multiplicity() const { return *std::max_element(multiplicity.begin(), multiplicity.end()); }
};

/// Roots of c2 z^2 + c1 z + c0. Throws DegreeDegeneracy when c2 = 0.
inline QuadraticRoots quadratic_roots(Complex c2, Complex c1, Complex c0) {
  if (c2 == Complex(0.0)) throw DegreeDegeneracy("quadratic_roots: leading coefficient is zero");
  const Complex s = complex_sqrt(c1 * c1 - 4.0 * c2 * c0);
  // pick the sign that avoids cancellation in c1 + s
  const Complex q = (std::real(std::conj(c1) * s) >= 0.0) ? -0.5 * (c1 + s) : -0.5 * (c1 - s);
  QuadraticRoots out;
  if (q == Complex(0.0)) {
    out.roots = {Complex(0.0), Complex(0.0)};
  } else {
    out.roots = {q / c2, c0 / q};
  }
  std::sort(out.roots.begin(), out.roots.end(), detail::lex_less);
  const double scale = std::max(std::abs(out.roots[0]), std::abs(out.roots[1]));
  if (detail::near(out.roots[0], out.roots[1], scale)) {
    const Complex mid = -c1 / (2.0 * c2);
    out.roots = {mid, mid};
    out.double_root = true;
  }
  return out;
}

/// Roots of c3 z^3 + c2 z^2 + c1 z + c0 by Cardano's formula, each root
/// polished with up to five Newton steps. Throws DegreeDegeneracy when c3 = 0.
inline CubicRoots cubic_roots(Complex c3, Complex c2, Complex c1, Complex c0) {
  if (c3 == Complex(0.0)) throw DegreeDegeneracy("cubic_roots: leading coefficient is zero");
  auto p = [&](Complex z) { return ((c3 * z + c2) * z + c1) * z + c0; };
  auto dp = [&](Complex z) { return (3.0 * c3 * z + 2.0 * c2) * z + c1; };

  const Complex d0 = c2 * c2 - 3.0 * c3 * c1;
  const Complex d1 = 2.0 * c2 * c2 * c2 - 9.0 * c3 * c2 * c1 + 27.0 * c3 * c3 * c0;
  const Complex disc = complex_sqrt(d1 * d1 - 4.0 * d0 * d0 * d0);
  Complex w = 0.5 * (d1 + disc);
  if (std::abs(0.5 * (d1 - disc)) > std::abs(w)) w = 0.5 * (d1 - disc);

  CubicRoots out;
  if (w == Complex(0.0)) {
    const Complex r = -c2 / (3.0 * c3);
    out.roots = {r, r, r};
  } else {
    const Complex cbrt_w = std::pow(w, 1.0 / 3.0);
    const Complex unit(-0.5, std::sqrt(3.0) / 2.0);
    Complex rot(1.0);
    for (int k = 0; k < 3; ++k) {
      const Complex ck = rot * cbrt_w;
      out.roots[k] = -(c2 + ck + d0 / ck) / (3.0 * c3);
      rot *= unit;
    }
  }

  for (auto& r : out.roots) {
    for (int step = 0; step < 5; ++step) {
      const Complex f = p(r);
      const Complex df = dp(r);
      if (f == Complex(0.0) || df == Complex(0.0)) break;
      const Complex next = r - f / df;
      if (!(std::abs(p(next)) < std::abs(f))) break;
      r = next;
    }
  }

  std::sort(out.roots.begin(), out.roots.end(), detail::lex_less);
  const double scale = std::max({std::abs(out.roots[0]), std::abs(out.roots[1]), std::abs(out.roots[2])});
  const bool n01 = detail::near(out.roots[0], out.roots[1], scale);
  const bool n02 = detail::near(out.roots[0], out.roots[2], scale);
  const bool n12 = detail::near(out.roots[1], out.roots[2], scale);
  if ((n01 && n12) || (n01 && n02) || (n02 && n12)) {
    const Complex r = -c2 / (3.0 * c3);
    out.roots = {r, r, r};
    out.multiplicity = {3, 3, 3};
  } else if (n01 || n02 || n12) {
    // the double root is a root of the derivative; the simple one follows from the trace
    int i = n01 ? 0 : (n02 ? 0 : 1);
    int j = n01 ? 1 : 2;
    int k = 3 - i - j;
    Complex dbl = 0.5 * (out.roots[i] + out.roots[j]);
    const Complex simple = -c2 / c3 - 2.0 * dbl;
    out.roots[i] = dbl;
    out.roots[j] = dbl;
    out.roots[k] = simple;
    std::sort(out.roots.begin(), out.roots.end(), detail::lex_less);
    for (int m = 0; m < 3; ++m) out.multiplicity[m] = detail::near(out.roots[m], dbl, scale) ? 2 : 1;
  }
  return out;
}

}  // namespace crode
