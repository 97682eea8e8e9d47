#pragma once

#include "complex.hpp"
#include "cr_structure.hpp"
#include "errors.hpp"
#include "polynomial.hpp"

#include <string>
#include <utility>
#include <vector>

namespace crode {

/// z' = P(z), z(0) = z0.
struct ComplexScalarODE {
  ExactComplexPoly poly;
  ExactComplex z0;

  int degree() const { return poly.degree(); }
  friend bool operator==(const ComplexScalarODE&, const ComplexScalarODE&) = default;
};

using ComplexMultiPoly = Polynomial<ExactComplex>;

/// z_k' = F_k(z_1, ..., z_n), z(0) = initial.
struct ComplexODESystem {
  std::vector<ComplexMultiPoly> rhs;
  std::vector<ExactComplex> initial;

  std::size_t size() const { return rhs.size(); }
  friend bool operator==(const ComplexODESystem&, const ComplexODESystem&) = default;
};

/// Real and imaginary parts of a complex polynomial in real variables.
struct RealImagPair {
  RealPoly re;
  RealPoly im;

  friend RealImagPair operator*(const RealImagPair& a, const RealImagPair& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  RealImagPair& operator+=(const RealImagPair& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RealImagPair scaled(const ExactComplex& c) const { return {re * c.re - im * c.im, re * c.im + im * c.re}; }
};

/// z' = c_0 + sum_r c_r z^r with c_0 = a_0^0 + i A_0^0 and c_r = a_r^0 - i a_r^1 / r.
inline ComplexScalarODE complexify_2var(const RealPolySystem& sys, const CRReport& report, const Rational& x0,
                                        const Rational& y0) {
  if (sys.nvars() != 2) throw DimensionError("complexify_2var needs a two-variable system");
  if (!report.satisfied) throw PreconditionError("complexify_2var: system does not satisfy the Cauchy-Riemann conditions");
  const CRParameters& p = report.free_parameters;
  std::vector<ExactComplex> c{ExactComplex(p.a00, p.A00)};
  for (unsigned r = 1; r <= p.degree(); ++r) {
    const auto& [ar0, ar1] = p.by_degree[r - 1];
    c.emplace_back(ar0, -ar1 / Rational(r));
  }
  return {ExactComplexPoly(std::move(c)), ExactComplex(x0, y0)};
}

/// Expands P(x + i y) into its real and imaginary parts.
inline RealImagPair expand_real_imag(const ExactComplexPoly& poly) {
  const RealImagPair z{RealPoly::variable(2, 0), RealPoly::variable(2, 1)};
  RealImagPair power{RealPoly::constant(2, Rational(1)), RealPoly(2)};
  RealImagPair acc{RealPoly(2), RealPoly(2)};
  for (int r = 0; r <= poly.degree(); ++r) {
    acc += power.scaled(poly[r]);
    power = power * z;
  }
  return acc;
}

/// The real two-variable system (x', y') = (Re P(x+iy), Im P(x+iy)).
inline RealPolySystem realify(const ComplexScalarODE& ode) {
  auto [re, im] = expand_real_imag(ode.poly);
  return RealPolySystem({"x", "y"}, {std::move(re), std::move(im)});
}

/// Reduces a CR 2n-variable system to n complex equations. The holomorphic
/// right-hand side is determined by its restriction to real arguments
/// (all y_j = 0), so the coefficient of z^alpha is read off u_k + i v_k there.
inline ComplexODESystem complexify_multivar(const RealPolySystem& sys, const CRReport& report, const Pairing& pairing,
                                            const std::vector<Rational>& initial) {
  validate_pairing(sys.nvars(), pairing);
  if (!report.satisfied)
    throw PreconditionError("complexify_multivar: system does not satisfy the Cauchy-Riemann conditions");
  if (initial.size() != sys.nvars()) throw DimensionError("initial vector length does not match system dimension");
  const std::size_t n = pairing.size();

  std::vector<bool> is_y(sys.nvars(), false);
  for (const auto& [x, y] : pairing) is_y[y] = true;

  ComplexODESystem out;
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMultiPoly f(n);
    auto collect = [&](const RealPoly& part, bool imaginary) {
      for (const auto& [e, c] : part.terms()) {
        bool on_real_axis = true;
        for (std::size_t i = 0; i < e.size(); ++i)
          if (is_y[i] && e[i] != 0) on_real_axis = false;
        if (!on_real_axis) continue;
        ExponentVector alpha(n);
        for (std::size_t j = 0; j < n; ++j) alpha[j] = e[pairing[j].first];
        f.add_term(alpha, imaginary ? ExactComplex(0, c) : ExactComplex(c));
      }
    };
    collect(sys.equations[pairing[k].first], false);
    collect(sys.equations[pairing[k].second], true);
    out.rhs.push_back(std::move(f));
    out.initial.emplace_back(initial[pairing[k].first], initial[pairing[k].second]);
  }
  return out;
}

/// Inverse of complexify_multivar: expands each F_k(x + i y) into real parts.
inline RealPolySystem realify_multivar(const ComplexODESystem& ode, const Pairing& pairing,
                                       std::vector<std::string> names = {}) {
  const std::size_t n = ode.size();
  const std::size_t nreal = 2 * n;
  validate_pairing(nreal, pairing);
  if (names.empty()) {
    names.resize(nreal);
    for (std::size_t j = 0; j < n; ++j) {
      names[pairing[j].first] = "x" + std::to_string(j + 1);
      names[pairing[j].second] = "y" + std::to_string(j + 1);
    }
  }
  std::vector<RealImagPair> z;
  for (const auto& [x, y] : pairing) z.push_back({RealPoly::variable(nreal, x), RealPoly::variable(nreal, y)});

  std::vector<RealPoly> eqs(nreal, RealPoly(nreal));
  for (std::size_t k = 0; k < n; ++k) {
    RealImagPair acc{RealPoly(nreal), RealPoly(nreal)};
    for (const auto& [alpha, c] : ode.rhs[k].terms()) {
      RealImagPair term{RealPoly::constant(nreal, Rational(1)), RealPoly(nreal)};
      for (std::size_t j = 0; j < n; ++j)
        for (unsigned m = 0; m < alpha[j]; ++m) term = term * z[j];
      acc += term.scaled(c);
    }
    eqs[pairing[k].first] = std::move(acc.re);
    eqs[pairing[k].second] = std::move(acc.im);
  }
  return RealPolySystem(std::move(names), std::move(eqs));
}

}  // namespace crode
