#pragma once

// Adaptive Dormand-Prince 5(4) integrator. This is the independent numeric
// oracle for every symbolic result, so it shares no code with closed_form.

#include "complexify.hpp"
#include "errors.hpp"
#include "polynomial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace crode {

using RhsFunction = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double blowup_magnitude = 1e8;
  /// a step shorter than this fraction of |t_end| counts as underflow
  double min_step_ratio = 1e-14;
  std::size_t max_steps = 2'000'000;
};

enum class TrajectoryStatus { Completed, BlowUp, MaxSteps, StepUnderflow };

inline const char* status_name(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::Completed: return "completed";
    case TrajectoryStatus::BlowUp: return "blow-up";
    case TrajectoryStatus::MaxSteps: return "max-steps";
    case TrajectoryStatus::StepUnderflow: return "step-underflow";
  }
  return "?";
}

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  TrajectoryStatus status = TrajectoryStatus::Completed;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();

  double final_time() const { return times.back(); }
};

namespace detail {

// Dormand-Prince tableau
struct DP {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
};

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace detail

/// Integrates y' = f(t, y) from t = 0 to t_end (either direction). With
/// `output_times` (monotone in the direction of integration) the trajectory
/// holds t = 0 plus exactly those times, steps being clipped to land on them;
/// otherwise every accepted step is recorded.
inline Trajectory integrate(const RhsFunction& f, std::vector<double> y0, double t_end,
                            const IntegratorOptions& opts = {}, const std::vector<double>& output_times = {}) {
  if (!(opts.rel_tol > 0) || !(opts.abs_tol > 0)) throw std::invalid_argument("integrate: tolerances must be positive");
  using D = detail::DP;
  const std::size_t n = y0.size();
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(y0);
  if (t_end == 0.0 || n == 0) return traj;

  const double dir = t_end > 0 ? 1.0 : -1.0;
  for (double t : output_times)
    if (dir * t < 0 || dir * t > dir * t_end) throw std::invalid_argument("integrate: output time outside [0, t_end]");
  std::size_t next_out = 0;
  while (next_out < output_times.size() && output_times[next_out] == 0.0) ++next_out;  // already recorded

  std::vector<double> y = std::move(y0), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);
  auto eval = [&](double t, const std::vector<double>& at, std::vector<double>& out) { f(t, at, out); };

  auto error_norm = [&](const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& err) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = opts.abs_tol + opts.rel_tol * std::max(std::fabs(a[i]), std::fabs(b[i]));
      s += (err[i] / sc) * (err[i] / sc);
    }
    return std::sqrt(s / static_cast<double>(n));
  };

  double t = 0.0;
  eval(t, y, k1);

  // starting step (Hairer, Norsett & Wanner II.4)
  double h;
  {
    std::vector<double> sc(n), zero(n, 0.0);
    double d0 = 0, d1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sc[i] = opts.abs_tol + opts.rel_tol * std::fabs(y[i]);
      d0 += (y[i] / sc[i]) * (y[i] / sc[i]);
      d1 += (k1[i] / sc[i]) * (k1[i] / sc[i]);
    }
    d0 = std::sqrt(d0 / n);
    d1 = std::sqrt(d1 / n);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, std::fabs(t_end));
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dir * h0 * k1[i];
    eval(t + dir * h0, tmp, k2);
    double d2 = 0;
    for (std::size_t i = 0; i < n; ++i) d2 += ((k2[i] - k1[i]) / sc[i]) * ((k2[i] - k1[i]) / sc[i]);
    d2 = std::sqrt(d2 / n) / h0;
    const double m = std::max(d1, d2);
    const double h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 0.2);
    h = std::min({100 * h0, h1, std::fabs(t_end)});
  }

  const double h_min = opts.min_step_ratio * std::fabs(t_end);
  std::vector<double> err(n);
  std::size_t steps = 0;
  while (dir * (t_end - t) > 0) {
    if (++steps > opts.max_steps) {
      traj.status = TrajectoryStatus::MaxSteps;
      return traj;
    }
    double target = t_end;
    if (next_out < output_times.size()) target = output_times[next_out];
    double step = std::min(h, dir * (target - t));
    bool landing = step == dir * (target - t);

    const double hs = dir * step;
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * D::a21 * k1[i];
    eval(t + D::c2 * hs, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (D::a31 * k1[i] + D::a32 * k2[i]);
    eval(t + D::c3 * hs, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (D::a41 * k1[i] + D::a42 * k2[i] + D::a43 * k3[i]);
    eval(t + D::c4 * hs, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + hs * (D::a51 * k1[i] + D::a52 * k2[i] + D::a53 * k3[i] + D::a54 * k4[i]);
    eval(t + D::c5 * hs, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + hs * (D::a61 * k1[i] + D::a62 * k2[i] + D::a63 * k3[i] + D::a64 * k4[i] + D::a65 * k5[i]);
    eval(t + hs, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + hs * (D::b1 * k1[i] + D::b3 * k3[i] + D::b4 * k4[i] + D::b5 * k5[i] + D::b6 * k6[i]);
    eval(t + hs, ynew, k7);
    for (std::size_t i = 0; i < n; ++i)
      err[i] = hs * (D::e1 * k1[i] + D::e3 * k3[i] + D::e4 * k4[i] + D::e5 * k5[i] + D::e6 * k6[i] + D::e7 * k7[i]);

    double en = error_norm(y, ynew, err);
    bool finite = std::isfinite(en);
    for (double v : ynew) finite = finite && std::isfinite(v);
    if (!finite) en = std::numeric_limits<double>::infinity();

    if (en <= 1.0) {
      t = landing ? target : t + hs;
      y.swap(ynew);
      k1.swap(k7);
      if (output_times.empty()) {
        traj.times.push_back(t);
        traj.states.push_back(y);
      } else if (landing && next_out < output_times.size()) {
        traj.times.push_back(t);
        traj.states.push_back(y);
        ++next_out;
      }
      const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      // a step shortened only to land on an output time says nothing about the next one
      if (!(landing && step < h)) h = step * fac;
    } else {
      h = step * std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9);
    }

    if (h < h_min) {
      if (detail::max_abs(y) > opts.blowup_magnitude || !finite) {
        traj.status = TrajectoryStatus::BlowUp;
        traj.blowup_time = t;
      } else {
        traj.status = TrajectoryStatus::StepUnderflow;
      }
      return traj;
    }
  }
  return traj;
}

/// Monomials compiled to double coefficients for fast repeated evaluation.
class CompiledSystem {
 public:
  explicit CompiledSystem(const RealPolySystem& sys) : nvars_(sys.nvars()) {
    for (const auto& eq : sys.equations) {
      std::vector<Term> terms;
      for (const auto& [e, c] : eq.terms()) terms.push_back({to_double(c), e});
      eqs_.push_back(std::move(terms));
    }
  }

  void operator()(double, std::span<const double> y, std::span<double> dy) const {
    for (std::size_t i = 0; i < nvars_; ++i) {
      double acc = 0.0;
      for (const auto& term : eqs_[i]) {
        double v = term.coeff;
        for (std::size_t k = 0; k < nvars_; ++k)
          for (unsigned m = 0; m < term.exps[k]; ++m) v *= y[k];
        acc += v;
      }
      dy[i] = acc;
    }
  }

 private:
  struct Term {
    double coeff;
    ExponentVector exps;
  };
  std::size_t nvars_;
  std::vector<std::vector<Term>> eqs_;
};

inline Trajectory integrate(const RealPolySystem& sys, const std::vector<double>& initial, double t_end,
                            const IntegratorOptions& opts = {}, const std::vector<double>& output_times = {}) {
  if (initial.size() != sys.nvars()) throw DimensionError("initial state has wrong dimension");
  CompiledSystem rhs(sys);
  return integrate(RhsFunction(rhs), initial, t_end, opts, output_times);
}

/// The scalar complex ODE integrated as its (Re z, Im z) expansion.
inline Trajectory integrate(const ComplexScalarODE& ode, double t_end, const IntegratorOptions& opts = {},
                            const std::vector<double>& output_times = {}) {
  std::vector<std::complex<double>> c;
  for (const auto& e : ode.poly.coefficients()) c.push_back(e.to_complex());
  RhsFunction rhs = [c](double, std::span<const double> y, std::span<double> dy) {
    const std::complex<double> z(y[0], y[1]);
    std::complex<double> acc(0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    dy[0] = acc.real();
    dy[1] = acc.imag();
  };
  const auto z0 = ode.z0.to_complex();
  return integrate(rhs, {z0.real(), z0.imag()}, t_end, opts, output_times);
}

/// n complex equations as 2n real components ordered (Re z1, Im z1, Re z2, ...).
inline Trajectory integrate(const ComplexODESystem& ode, double t_end, const IntegratorOptions& opts = {},
                            const std::vector<double>& output_times = {}) {
  struct Term {
    std::complex<double> coeff;
    ExponentVector exps;
  };
  std::vector<std::vector<Term>> eqs;
  for (const auto& f : ode.rhs) {
    std::vector<Term> terms;
    for (const auto& [e, c] : f.terms()) terms.push_back({c.to_complex(), e});
    eqs.push_back(std::move(terms));
  }
  const std::size_t n = ode.size();
  RhsFunction rhs = [eqs, n](double, std::span<const double> y, std::span<double> dy) {
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<double> acc(0.0);
      for (const auto& term : eqs[k]) {
        std::complex<double> v = term.coeff;
        for (std::size_t j = 0; j < n; ++j)
          for (unsigned m = 0; m < term.exps[j]; ++m) v *= std::complex<double>(y[2 * j], y[2 * j + 1]);
        acc += v;
      }
      dy[2 * k] = acc.real();
      dy[2 * k + 1] = acc.imag();
    }
  };
  std::vector<double> y0;
  for (const auto& z : ode.initial) {
    y0.push_back(to_double(z.re));
    y0.push_back(to_double(z.im));
  }
  return integrate(rhs, std::move(y0), t_end, opts, output_times);
}

}  // namespace crode
