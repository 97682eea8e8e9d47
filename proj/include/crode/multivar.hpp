#pragma once

// Homogeneous quadratic pairs
//   z1' = a z1^2 + b z1 z2 + c z2^2,  z2' = A z1^2 + B z1 z2 + C z2^2.
// With U = z2/z1 one gets d(log z1) = N(U)/D(U) dU where
//   N(U) = a + b U + c U^2,  D(U) = A + (B - a) U + (C - b) U^2 - c U^3,
// so Phi = integral of N/D dU - log z1 is a first integral.

#include "branch.hpp"
#include "complex.hpp"
#include "complexify.hpp"
#include "errors.hpp"
#include "roots.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace crode {

struct HomogeneousPair {
  Complex a{}, b{}, c{}, A{}, B{}, C{};

  bool is_zero() const {
    for (const Complex& v : {a, b, c, A, B, C})
      if (v != Complex(0.0)) return false;
    return true;
  }
};

/// Reads the pair off a two-equation complex system whose monomials are all quadratic.
inline HomogeneousPair homogeneous_pair_from(const ComplexODESystem& ode) {
  if (ode.size() != 2) throw DimensionError("homogeneous reduction needs exactly two complex equations");
  HomogeneousPair p;
  Complex* slots[2][3] = {{&p.a, &p.b, &p.c}, {&p.A, &p.B, &p.C}};
  for (std::size_t k = 0; k < 2; ++k)
    for (const auto& [e, coeff] : ode.rhs[k].terms()) {
      if (e[0] + e[1] != 2) throw PreconditionError("system is not a homogeneous quadratic pair");
      *slots[k][e[1]] = coeff.to_complex();
    }
  return p;
}

class FirstIntegral {
 public:
  enum class Kind { Logarithmic, Ratio };

  explicit FirstIntegral(const HomogeneousPair& pair) : pair_(pair) {
    if (pair.is_zero()) throw PreconditionError("homogeneous pair has all coefficients zero");
    numerator_ = {pair.a, pair.b, pair.c};
    denominator_ = {pair.A, pair.B - pair.a, pair.C - pair.b, -pair.c};

    int m = 3;
    while (m >= 0 && denominator_[m] == Complex(0.0)) --m;
    if (m < 0) {
      kind_ = Kind::Ratio;
      return;
    }
    const auto& d = denominator_;
    if (m == 1) {
      roots_ = {-d[0] / d[1]};
    } else if (m == 2) {
      const auto q = quadratic_roots(d[2], d[1], d[0]);
      if (q.double_root) throw UnsupportedDegeneracy("denominator has a repeated root");
      roots_ = {q.roots[0], q.roots[1]};
    } else if (m == 3) {
      const auto cr = cubic_roots(d[3], d[2], d[1], d[0]);
      if (cr.max_multiplicity() > 1) throw UnsupportedDegeneracy("denominator has a repeated root");
      roots_ = {cr.roots.begin(), cr.roots.end()};
    }
    for (const Complex& u : roots_) weights_.push_back(eval(numerator_, u) / eval_derivative(denominator_, m, u));

    // polynomial part of N/D when deg N >= deg D, integrated term by term
    std::vector<Complex> rem(numerator_.begin(), numerator_.end());
    while (!rem.empty() && rem.back() == Complex(0.0)) rem.pop_back();
    std::vector<Complex> quotient(rem.size() > static_cast<std::size_t>(m) ? rem.size() - m : 0, Complex(0.0));
    for (int k = static_cast<int>(rem.size()) - 1; k >= m; --k) {
      const Complex f = rem[k] / d[m];
      quotient[k - m] = f;
      for (int j = 0; j <= m; ++j) rem[k - m + j] -= f * d[j];
    }
    poly_integral_.assign(quotient.size() + 1, Complex(0.0));
    for (std::size_t k = 0; k < quotient.size(); ++k) poly_integral_[k + 1] = quotient[k] / static_cast<double>(k + 1);
  }

  Kind kind() const { return kind_; }
  const HomogeneousPair& pair() const { return pair_; }
  const std::array<Complex, 3>& numerator() const { return numerator_; }
  const std::array<Complex, 4>& denominator() const { return denominator_; }
  /// Simple roots u_j of the denominator and their residues gamma_j.
  const std::vector<Complex>& roots() const { return roots_; }
  const std::vector<Complex>& weights() const { return weights_; }
  /// Antiderivative of the polynomial part of N/D (empty of terms unless deg N >= deg D).
  const std::vector<Complex>& polynomial_part() const { return poly_integral_; }

  /// N(U)/D(U) rebuilt from the decomposition.
  Complex integrand(Complex U) const {
    Complex acc(0.0);
    for (std::size_t k = 1; k < poly_integral_.size(); ++k)
      acc += static_cast<double>(k) * poly_integral_[k] * std::pow(U, static_cast<int>(k - 1));
    for (std::size_t j = 0; j < roots_.size(); ++j) acc += weights_[j] / (U - roots_[j]);
    return acc;
  }

  /// Phi with every logarithm on the branch nearest `args`; `args` holds one
  /// entry per root followed by one for z1 and is updated in place.
  Complex value(Complex z1, Complex z2, std::vector<double>& args) const {
    if (z1 == Complex(0.0)) throw SingularArgument("first integral is singular at z1 = 0");
    const Complex U = z2 / z1;
    if (kind_ == Kind::Ratio) return U;
    args.resize(roots_.size() + 1, 0.0);
    Complex acc = eval(poly_integral_, U);
    for (std::size_t j = 0; j < roots_.size(); ++j) {
      const Complex w = U - roots_[j];
      if (std::abs(w) <= 1e-300) throw SingularArgument("z2/z1 coincides with a denominator root");
      const Complex l = tracked_log(w, args[j]);
      args[j] = l.imag();
      acc += weights_[j] * l;
    }
    const Complex lz = tracked_log(z1, args.back());
    args.back() = lz.imag();
    return acc - lz;
  }

 private:
  template <class Coeffs>
  static Complex eval(const Coeffs& c, Complex x) {
    Complex acc(0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  static Complex eval_derivative(const std::array<Complex, 4>& c, int m, Complex x) {
    Complex acc(0.0);
    for (int k = m; k >= 1; --k) acc = acc * x + static_cast<double>(k) * c[k];
    return acc;
  }

  HomogeneousPair pair_;
  Kind kind_ = Kind::Logarithmic;
  std::array<Complex, 3> numerator_{};
  std::array<Complex, 4> denominator_{};
  std::vector<Complex> roots_;
  std::vector<Complex> weights_;
  std::vector<Complex> poly_integral_;
};

inline FirstIntegral reduce_homogeneous(const HomogeneousPair& pair) { return FirstIntegral(pair); }

/// Phi(z1, z2) with principal-branch logarithms.
inline Complex first_integral_value(const FirstIntegral& phi, Complex z1, Complex z2) {
  std::vector<double> args(phi.roots().size() + 1);
  if (z1 != Complex(0.0)) {
    const Complex U = z2 / z1;
    for (std::size_t j = 0; j < phi.roots().size(); ++j) args[j] = std::arg(U - phi.roots()[j]);
    args.back() = std::arg(z1);
  }
  return phi.value(z1, z2, args);
}

/// Evaluates Phi continuously along a trajectory, normalized so that the
/// starting point has Phi = 0.
class FirstIntegralTracker {
 public:
  FirstIntegralTracker(const FirstIntegral& phi, Complex z1, Complex z2) : phi_(phi) {
    args_.assign(phi.roots().size() + 1, 0.0);
    if (z1 != Complex(0.0)) {
      for (std::size_t j = 0; j < phi.roots().size(); ++j) args_[j] = std::arg(z2 / z1 - phi.roots()[j]);
      args_.back() = std::arg(z1);
    }
    offset_ = phi_.value(z1, z2, args_);
  }

  /// Phi at the next trajectory point; points must be supplied in order.
  Complex operator()(Complex z1, Complex z2) { return phi_.value(z1, z2, args_) - offset_; }

 private:
  FirstIntegral phi_;
  std::vector<double> args_;
  Complex offset_;
};

}  // namespace crode
