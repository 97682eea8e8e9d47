#pragma once

// Closed-form and implicit solutions of z' = P(z) for deg P <= 3.
//
//   degree 0/1   z(t) = e^{c1 t}(z0 + c0/c1) - c0/c1          (z0 + c0 t if c1 = 0)
//   degree 2     two-root exponential form, or z* + w0/(1 - k w0 t) at a double root
//   degree 3     z* + w0 (1 - 2 k w0^2 t)^{-1/2} at a triple root, otherwise the
//                partial-fraction first integral  sum_j w_j log(z - z_j) = t + const
//
// Degeneracies (repeated roots, z0 at a root) are detected exactly from the
// rational coefficients; the float fallback uses kMultipleRootTolerance.

#include "branch.hpp"
#include "complex.hpp"
#include "complexify.hpp"
#include "errors.hpp"
#include "expression.hpp"
#include "roots.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace crode {

inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Open time interval (lo, hi); bounds may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return lo < t && t < hi; }
  std::string text() const { return "(" + format_double(lo) + ", " + format_double(hi) + ")"; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class SolutionForm {
  Constant,         // z0 is an equilibrium
  Affine,           // z0 + c0 t
  Exponential,      // linear ODE
  RiccatiDistinct,  // two simple roots
  RiccatiDouble,    // one double root
  CubicTriple,      // one triple root
  CubicImplicit,    // first integral, inverted numerically
};

inline const char* form_name(SolutionForm f) {
  switch (f) {
    case SolutionForm::Constant: return "constant";
    case SolutionForm::Affine: return "affine";
    case SolutionForm::Exponential: return "exponential";
    case SolutionForm::RiccatiDistinct: return "riccati-distinct-roots";
    case SolutionForm::RiccatiDouble: return "riccati-double-root";
    case SolutionForm::CubicTriple: return "cubic-triple-root";
    case SolutionForm::CubicImplicit: return "cubic-implicit";
  }
  return "?";
}

struct SolutionMetadata {
  SolutionForm form = SolutionForm::Constant;
  std::vector<Complex> roots;
  Complex leading{0.0};  // kappa, the leading coefficient of P
  bool degeneracy_exact = true;  // false when a repeated root was decided by tolerance
  std::string note;
};

class ClosedFormSolution {
 public:
  ClosedFormSolution(Expr expr, Interval validity, SolutionMetadata meta)
      : expr_(std::move(expr)), validity_(validity), meta_(std::move(meta)) {}

  const Expr& expression() const { return expr_; }
  const Interval& validity() const { return validity_; }
  const SolutionMetadata& metadata() const { return meta_; }

  Complex evaluate(double t) const {
    if (!validity_.contains(t))
      throw ValidityError("t = " + format_double(t) + " lies outside the validity interval " + validity_.text());
    return expr_.evaluate(t);
  }

 private:
  Expr expr_;
  Interval validity_;
  SolutionMetadata meta_;
};

struct LogTerm {
  Complex root;
  Complex weight;
};

/// coefficient / (z - root) enters the first integral with a minus sign
struct PoleTerm {
  Complex root;
  Complex coefficient;
};

/// Options for the numeric inverter of implicit solutions.
struct ImplicitOptions {
  double t_min = 0.0;
  double t_max = 1.0;
  int seed_steps = 400;
  double blowup_magnitude = 1e8;
};

/// z(t) defined by G(z(t)) - G(z0) = t with
///   G(z) = sum_j w_j log(z - z_j) - sum_p C_p / (z - p),   G' = 1 / P.
/// Logs follow the branch continuous from t = 0; a seed trajectory built by
/// Newton continuation at construction anchors every later evaluation.
class ImplicitSolution {
 public:
  ImplicitSolution(FloatComplexPoly poly, Complex z0, std::vector<LogTerm> logs, std::vector<PoleTerm> poles,
                   SolutionMetadata meta, const ImplicitOptions& opts = {})
      : poly_(std::move(poly)), z0_(z0), logs_(std::move(logs)), poles_(std::move(poles)), meta_(std::move(meta)) {
    Node start{0.0, z0_, {}};
    for (const auto& l : logs_) start.args.push_back(std::arg(z0_ - l.root));
    g0_ = first_integral(z0_, start.args);
    build_seed(start, opts);
  }

  const std::vector<LogTerm>& log_terms() const { return logs_; }
  const std::vector<PoleTerm>& pole_terms() const { return poles_; }
  const SolutionMetadata& metadata() const { return meta_; }
  const FloatComplexPoly& poly() const { return poly_; }
  Complex initial() const { return z0_; }
  /// Closed interval covered by the seed trajectory.
  Interval horizon() const { return {seed_.front().t, seed_.back().t}; }

  /// G(z) with each log continued from the supplied reference arguments.
  Complex first_integral(Complex z, const std::vector<double>& reference_args) const {
    Complex g(0.0);
    for (std::size_t j = 0; j < logs_.size(); ++j)
      g += logs_[j].weight * tracked_log(z - logs_[j].root, reference_args[j]);
    for (const auto& p : poles_) g -= p.coefficient / (z - p.root);
    return g;
  }

  Complex anchor() const { return g0_; }

  Complex evaluate(double t) const {
    const Interval h = horizon();
    if (t < h.lo || t > h.hi)
      throw ValidityError("t = " + format_double(t) + " lies outside the seeded horizon [" + format_double(h.lo) + ", " +
                          format_double(h.hi) + "]");
    auto it = std::lower_bound(seed_.begin(), seed_.end(), t, [](const Node& n, double v) { return n.t < v; });
    if (it == seed_.end() || (it != seed_.begin() && std::fabs(std::prev(it)->t - t) < std::fabs(it->t - t))) --it;
    auto solved = newton(*it, t);
    if (!solved) throw ConvergenceError("implicit inversion did not converge at t = " + format_double(t));
    return solved->z;
  }

  /// Largest |G(z_k) - G(z0) - t_k| along a sampled path starting at z0,
  /// with logs continued from sample to sample.
  double max_drift(const std::vector<double>& times, const std::vector<Complex>& path) const {
    std::vector<double> args;
    for (const auto& l : logs_) args.push_back(std::arg(z0_ - l.root));
    double worst = 0.0;
    for (std::size_t k = 0; k < path.size(); ++k) {
      const Complex g = first_integral(path[k], args);
      for (std::size_t j = 0; j < logs_.size(); ++j) args[j] = g_arg(path[k] - logs_[j].root, args[j]);
      worst = std::max(worst, std::abs(g - g0_ - times[k]));
    }
    return worst;
  }

 private:
  struct Node {
    double t;
    Complex z;
    std::vector<double> args;
  };

  static double g_arg(Complex w, double ref) { return unwrap_angle(std::arg(w), ref); }

  std::optional<Node> newton(const Node& from, double t) const {
    Complex z = from.z + (t - from.t) * poly_(from.z);
    std::vector<double> args = from.args;
    for (int iter = 0; iter < 50; ++iter) {
      for (std::size_t j = 0; j < logs_.size(); ++j) args[j] = g_arg(z - logs_[j].root, from.args[j]);
      const Complex residual = first_integral(z, args) - g0_ - t;
      const double tol = 1e-13 * (1.0 + std::abs(t) + std::abs(g0_));
      if (std::abs(residual) <= tol) return Node{t, z, args};
      const Complex step = residual * poly_(z);
      z -= step;
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) {
        for (std::size_t j = 0; j < logs_.size(); ++j) args[j] = g_arg(z - logs_[j].root, from.args[j]);
        const Complex r2 = first_integral(z, args) - g0_ - t;
        if (std::abs(r2) < 1e-10) return Node{t, z, args};
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  void build_seed(const Node& start, const ImplicitOptions& opts) {
    auto march = [&](double t_end) {
      std::vector<Node> out;
      Node cur = start;
      const double span = std::fabs(t_end);
      if (span == 0.0) return out;
      const double dir = t_end > 0 ? 1.0 : -1.0;
      double h = span / opts.seed_steps;
      const double h_min = span * 1e-12;
      while (dir * (t_end - cur.t) > 0) {
        double step = std::min(h, dir * (t_end - cur.t));
        auto next = newton(cur, cur.t + dir * step);
        // reject steps that wander more than a quarter turn around any root
        bool ok = next.has_value() && std::abs(next->z) < opts.blowup_magnitude;
        if (ok)
          for (std::size_t j = 0; j < logs_.size(); ++j)
            if (std::fabs(next->args[j] - cur.args[j]) > std::numbers::pi / 4) ok = false;
        if (!ok) {
          h *= 0.5;
          if (h < h_min) break;
          continue;
        }
        cur = *next;
        out.push_back(cur);
        h = std::min(h * 1.5, span / opts.seed_steps);
      }
      return out;
    };
    auto back = march(opts.t_min);
    auto fwd = march(opts.t_max);
    seed_.assign(back.rbegin(), back.rend());
    seed_.push_back(start);
    seed_.insert(seed_.end(), fwd.begin(), fwd.end());
  }

  FloatComplexPoly poly_;
  Complex z0_;
  std::vector<LogTerm> logs_;
  std::vector<PoleTerm> poles_;
  SolutionMetadata meta_;
  Complex g0_;
  std::vector<Node> seed_;
};

using Solution = std::variant<ClosedFormSolution, ImplicitSolution>;

namespace detail {

inline bool nearly_real(Complex v, double rel = 1e-12) { return std::fabs(v.imag()) <= rel * std::abs(v); }

inline ClosedFormSolution constant_solution(Complex z0, SolutionMetadata meta) {
  meta.form = SolutionForm::Constant;
  return ClosedFormSolution(Expr(z0), Interval{}, std::move(meta));
}

// Interval around 0 on which 1 - beta t stays nonzero (beta is exact or float).
inline Interval pole_free_linear(Complex beta, bool beta_real) {
  Interval iv;
  if (!beta_real || beta.real() == 0.0) return iv;
  const double tp = 1.0 / beta.real();
  if (tp > 0)
    iv.hi = tp;
  else
    iv.lo = tp;
  return iv;
}

// Interval around 0 on which 1 - rho e^{lambda t} has no zero.
inline Interval pole_free_exponential(Complex rho, Complex lambda) {
  Interval iv;
  const Complex L = std::log(rho);
  const double two_pi = 2.0 * std::numbers::pi;
  if (std::fabs(lambda.real()) > 1e-12 * std::abs(lambda)) {
    const double tp = -L.real() / lambda.real();
    const double phase = lambda.imag() * tp + L.imag();
    const double miss = std::fabs(phase - two_pi * std::round(phase / two_pi));
    if (miss <= 1e-9 * (1.0 + std::fabs(lambda.imag() * tp))) {
      if (tp > 0)
        iv.hi = tp;
      else if (tp < 0)
        iv.lo = tp;
    }
    return iv;
  }
  if (std::fabs(L.real()) > 1e-12 || lambda.imag() == 0.0) return iv;
  // |rho| = 1 and purely oscillating exponent: poles recur with period 2 pi / |lambda_i|
  const double period = two_pi / std::fabs(lambda.imag());
  const double t0 = -L.imag() / lambda.imag();
  const double first = t0 - period * std::floor(t0 / period);  // in (0, period); t = 0 is never a pole
  iv.hi = first;
  iv.lo = first - period;
  return iv;
}

}  // namespace detail

/// z' = c0 + c1 z.
inline ClosedFormSolution solve_linear(const ExactComplex& c0, const ExactComplex& c1, const ExactComplex& z0) {
  SolutionMetadata meta;
  meta.leading = c1.to_complex();
  if (c1.is_zero()) {
    if (c0.is_zero()) return detail::constant_solution(z0.to_complex(), meta);
    meta.form = SolutionForm::Affine;
    return ClosedFormSolution(Expr(z0.to_complex()) + Expr(c0.to_complex()) * Expr::time(), Interval{}, meta);
  }
  const ExactComplex fixed = -(c0 / c1);
  meta.roots = {fixed.to_complex()};
  if (z0 == fixed) return detail::constant_solution(z0.to_complex(), meta);
  meta.form = SolutionForm::Exponential;
  const Complex shift = (z0 - fixed).to_complex();
  Expr e = exp(Expr(c1.to_complex()) * Expr::time()) * Expr(shift) + Expr(fixed.to_complex());
  return ClosedFormSolution(std::move(e), Interval{}, meta);
}

/// z' = c0 + c1 z + c2 z^2 with c2 != 0.
inline ClosedFormSolution solve_riccati(const ExactComplex& c0, const ExactComplex& c1, const ExactComplex& c2,
                                        const ExactComplex& z0) {
  if (c2.is_zero()) throw DegreeDegeneracy("solve_riccati: leading coefficient is zero");
  SolutionMetadata meta;
  meta.leading = c2.to_complex();
  const Complex kappa = meta.leading;

  if ((c0 + (c1 + c2 * z0) * z0).is_zero()) {
    meta.roots = {z0.to_complex()};
    meta.note = "initial value is an equilibrium";
    return detail::constant_solution(z0.to_complex(), meta);
  }

  const ExactComplex disc = c1 * c1 - ExactComplex(4) * c2 * c0;
  std::optional<Complex> double_root;
  std::optional<ExactComplex> exact_double_root;
  QuadraticRoots qr;
  if (disc.is_zero()) {
    exact_double_root = -(c1 / (ExactComplex(2) * c2));
    double_root = exact_double_root->to_complex();
  } else {
    qr = quadratic_roots(c2.to_complex(), c1.to_complex(), c0.to_complex());
    if (qr.double_root) {
      double_root = qr.roots[0];
      meta.degeneracy_exact = false;
      meta.note = "roots merged within tolerance; limiting double-root formula used";
    }
  }

  if (double_root) {
    meta.form = SolutionForm::RiccatiDouble;
    meta.roots = {*double_root, *double_root};
    Complex w0;
    bool beta_real;
    Complex beta;
    if (exact_double_root) {
      const ExactComplex w = z0 - *exact_double_root;
      const ExactComplex b = c2 * w;
      w0 = w.to_complex();
      beta = b.to_complex();
      beta_real = b.im == 0;
    } else {
      w0 = z0.to_complex() - *double_root;
      beta = kappa * w0;
      beta_real = detail::nearly_real(beta, kMultipleRootTolerance);
    }
    Expr e = Expr(*double_root) + Expr(w0) / (Expr(Complex(1.0)) - Expr(beta) * Expr::time());
    return ClosedFormSolution(std::move(e), detail::pole_free_linear(beta, beta_real), meta);
  }

  const Complex z1 = qr.roots[0];
  const Complex z2 = qr.roots[1];
  meta.roots = {z1, z2};
  const Complex zi = z0.to_complex();
  const double scale = std::max({1.0, std::abs(z1), std::abs(z2)});
  if (std::abs(zi - z1) < kMultipleRootTolerance * scale || std::abs(zi - z2) < kMultipleRootTolerance * scale) {
    meta.degeneracy_exact = false;
    meta.note = "initial value within tolerance of an equilibrium";
    return detail::constant_solution(zi, meta);
  }
  meta.form = SolutionForm::RiccatiDistinct;
  const Complex rho = (zi - z2) / (zi - z1);
  const Complex lambda = kappa * (z2 - z1);
  Expr e = Expr(z1) + Expr(z2 - z1) / (Expr(Complex(1.0)) - Expr(rho) * exp(Expr(lambda) * Expr::time()));
  return ClosedFormSolution(std::move(e), detail::pole_free_exponential(rho, lambda), meta);
}

/// z' = c0 + c1 z + c2 z^2 + c3 z^3 with c3 != 0.
inline Solution solve_cubic_ode(const ExactComplex& c0, const ExactComplex& c1, const ExactComplex& c2,
                                const ExactComplex& c3, const ExactComplex& z0, const ImplicitOptions& opts = {}) {
  if (c3.is_zero()) throw DegreeDegeneracy("solve_cubic_ode: leading coefficient is zero");
  const ExactComplexPoly P({c0, c1, c2, c3});
  SolutionMetadata meta;
  meta.leading = c3.to_complex();

  if (P(z0).is_zero()) {
    meta.roots = {z0.to_complex()};
    meta.note = "initial value is an equilibrium";
    return detail::constant_solution(z0.to_complex(), meta);
  }

  auto triple = [&](Complex root, Complex w0, Complex beta, bool beta_real) {
    meta.form = SolutionForm::CubicTriple;
    meta.roots = {root, root, root};
    Expr e = Expr(root) + Expr(w0) * pow(Expr(Complex(1.0)) - Expr(beta) * Expr::time(), Rational(-1, 2));
    return ClosedFormSolution(std::move(e), detail::pole_free_linear(beta, beta_real), meta);
  };

  // exact triple root: P = c3 (z - r)^3 with r = -c2 / (3 c3)
  const ExactComplex r = -(c2 / (ExactComplex(3) * c3));
  if (P(r).is_zero() && P.derivative()(r).is_zero()) {
    const ExactComplex w = z0 - r;
    const ExactComplex beta = ExactComplex(2) * c3 * w * w;
    return triple(r.to_complex(), w.to_complex(), beta.to_complex(), beta.im == 0);
  }

  // exact double root via the discriminant
  const ExactComplex a = c3, b = c2, c = c1, d = c0;
  const ExactComplex disc = ExactComplex(18) * a * b * c * d - ExactComplex(4) * b * b * b * d + b * b * c * c -
                            ExactComplex(4) * a * c * c * c - ExactComplex(27) * a * a * d * d;
  std::vector<LogTerm> logs;
  std::vector<PoleTerm> poles;
  const Complex kappa = c3.to_complex();
  if (disc.is_zero()) {
    const ExactComplex d0 = b * b - ExactComplex(3) * a * c;
    const ExactComplex p = (ExactComplex(9) * a * d - b * c) / (ExactComplex(2) * d0);
    const ExactComplex q = (ExactComplex(4) * a * b * c - ExactComplex(9) * a * a * d - b * b * b) / (a * d0);
    const Complex pd = p.to_complex(), qd = q.to_complex();
    const Complex A = 1.0 / (kappa * (qd - pd) * (qd - pd));
    logs = {{qd, A}, {pd, -A}};
    poles = {{pd, 1.0 / (kappa * (pd - qd))}};
    meta.roots = {pd, pd, qd};
  } else {
    const CubicRoots cr = cubic_roots(kappa, c2.to_complex(), c1.to_complex(), c0.to_complex());
    if (cr.max_multiplicity() == 3) {
      meta.degeneracy_exact = false;
      meta.note = "roots merged within tolerance; limiting triple-root formula used";
      const Complex root = cr.roots[0];
      const Complex w0 = z0.to_complex() - root;
      const Complex beta = 2.0 * kappa * w0 * w0;
      return triple(root, w0, beta, detail::nearly_real(beta, kMultipleRootTolerance));
    }
    const Complex zi = z0.to_complex();
    const double scale = std::max({1.0, std::abs(cr.roots[0]), std::abs(cr.roots[1]), std::abs(cr.roots[2])});
    for (const auto& root : cr.roots)
      if (std::abs(zi - root) < kMultipleRootTolerance * scale) {
        meta.degeneracy_exact = false;
        meta.roots = {root};
        meta.note = "initial value within tolerance of an equilibrium";
        return detail::constant_solution(zi, meta);
      }
    if (cr.max_multiplicity() == 2) {
      meta.degeneracy_exact = false;
      meta.note = "double root decided within tolerance";
      int simple = 0;
      while (cr.multiplicity[simple] != 1) ++simple;
      const Complex qd = cr.roots[simple];
      const Complex pd = cr.roots[(simple + 1) % 3];
      const Complex A = 1.0 / (kappa * (qd - pd) * (qd - pd));
      logs = {{qd, A}, {pd, -A}};
      poles = {{pd, 1.0 / (kappa * (pd - qd))}};
      meta.roots = {pd, pd, qd};
    } else {
      for (int j = 0; j < 3; ++j) {
        Complex denom = kappa;
        for (int k = 0; k < 3; ++k)
          if (k != j) denom *= cr.roots[j] - cr.roots[k];
        logs.push_back({cr.roots[j], 1.0 / denom});
      }
      meta.roots = {cr.roots.begin(), cr.roots.end()};
    }
  }
  meta.form = SolutionForm::CubicImplicit;
  return ImplicitSolution(to_float(P), z0.to_complex(), std::move(logs), std::move(poles), meta, opts);
}

/// Dispatches on the degree of the right-hand side.
inline Solution solve(const ComplexScalarODE& ode, const ImplicitOptions& opts = {}) {
  const auto& c = ode.poly;
  switch (c.degree()) {
    case 0:
    case 1: return solve_linear(c.coefficient(0), c.coefficient(1), ode.z0);
    case 2: return solve_riccati(c[0], c[1], c[2], ode.z0);
    case 3: return solve_cubic_ode(c[0], c[1], c[2], c[3], ode.z0, opts);
    default: throw UnsupportedDegree(c.degree());
  }
}

inline Complex eval_solution(const Solution& sol, double t) {
  return std::visit([t](const auto& s) { return s.evaluate(t); }, sol);
}

inline bool is_explicit(const Solution& sol) { return std::holds_alternative<ClosedFormSolution>(sol); }

inline const SolutionMetadata& solution_metadata(const Solution& sol) {
  return std::visit([](const auto& s) -> const SolutionMetadata& { return s.metadata(); }, sol);
}

/// Largest finite time such that [0, t) is inside the solution's domain.
inline double forward_horizon(const Solution& sol) {
  if (const auto* e = std::get_if<ClosedFormSolution>(&sol)) return e->validity().hi;
  return std::get<ImplicitSolution>(sol).horizon().hi;
}

using RealEvaluator = std::function<double(double)>;

inline std::pair<RealEvaluator, RealEvaluator> real_components(Solution sol) {
  auto shared = std::make_shared<Solution>(std::move(sol));
  return {[shared](double t) { return eval_solution(*shared, t).real(); },
          [shared](double t) { return eval_solution(*shared, t).imag(); }};
}

}  // namespace crode
