#pragma once

// Checks symbolic solutions against the numeric integrator, and runs the
// perturbation study (solution of a perturbed kinetic system versus the
// closed form of the unperturbed one).

#include "closed_form.hpp"
#include "complexify.hpp"
#include "cr_structure.hpp"
#include "integrator.hpp"
#include "kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace crode {

struct VerificationReport {
  double max_deviation = 0.0;
  std::vector<double> times;
  std::vector<double> deviations;
  double horizon = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  TrajectoryStatus integrator_status = TrajectoryStatus::Completed;
};

inline IntegratorOptions verification_integrator_options() {
  IntegratorOptions o;
  o.rel_tol = 1e-12;
  o.abs_tol = 1e-14;
  return o;
}

inline std::vector<double> uniform_samples(double horizon, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("need at least two sample times");
  std::vector<double> t(samples);
  for (std::size_t k = 0; k < samples; ++k) t[k] = horizon * static_cast<double>(k) / static_cast<double>(samples - 1);
  t.back() = horizon;
  return t;
}

namespace detail {

// explicit validity intervals are open; the seeded range of an implicit solution is closed
inline bool covers(const Solution& sol, double horizon) {
  const double lo = std::min(0.0, horizon), hi = std::max(0.0, horizon);
  if (is_explicit(sol)) {
    const Interval iv = std::get<ClosedFormSolution>(sol).validity();
    return iv.lo < lo && hi < iv.hi;
  }
  const Interval iv = std::get<ImplicitSolution>(sol).horizon();
  return iv.lo <= lo && hi <= iv.hi;
}

}  // namespace detail

/// Sup-norm gap between the solution (x = Re z, y = Im z) and an independent
/// integration of the real two-variable system on uniform sample times.
inline VerificationReport verify_solution(const Solution& sol, const RealPolySystem& sys,
                                          const std::vector<double>& initial, double horizon, double tol,
                                          std::size_t samples = 200,
                                          const IntegratorOptions& opts = verification_integrator_options()) {
  if (sys.nvars() != 2) throw DimensionError("verify_solution compares against a two-variable system");
  if (!detail::covers(sol, horizon))
    throw ValidityError("horizon " + format_double(horizon) + " is not inside the solution's validity interval");

  VerificationReport report;
  report.horizon = horizon;
  report.tolerance = tol;
  report.times = uniform_samples(horizon, samples);
  const Trajectory traj = integrate(sys, initial, horizon, opts, report.times);
  report.integrator_status = traj.status;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const Complex z = eval_solution(sol, traj.times[k]);
    const double dev = std::max(std::fabs(z.real() - traj.states[k][0]), std::fabs(z.imag() - traj.states[k][1]));
    report.deviations.push_back(dev);
    report.max_deviation = std::max(report.max_deviation, std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev);
  }
  if (traj.status != TrajectoryStatus::Completed) report.max_deviation = std::numeric_limits<double>::infinity();
  report.times.resize(report.deviations.size());
  report.passed = report.max_deviation <= tol;
  return report;
}

/// Adds eps * coefficient * x^monomial to one equation.
struct Perturbation {
  ExponentVector monomial;
  std::size_t equation = 0;
  Rational coefficient{1};
};

inline RealPolySystem perturbed_system(const RealPolySystem& base, const Perturbation& p, const Rational& eps) {
  if (p.equation >= base.nvars() || p.monomial.size() != base.nvars())
    throw DimensionError("perturbation does not fit the system");
  RealPolySystem out = base;
  out.equations[p.equation].add_term(p.monomial, eps * p.coefficient);
  return out;
}

struct DifferenceCurve {
  Rational eps;
  std::vector<double> times;
  /// differences[k][i] = x_i(eps, t_k) - x_i(0, t_k)
  std::vector<std::vector<double>> differences;
  TrajectoryStatus status = TrajectoryStatus::Completed;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();
  double sup_norm = 0.0;
};

/// Integrates each perturbed system and subtracts the closed-form solution of
/// the unperturbed CR system. A blow-up inside the horizon truncates the curve.
inline std::vector<DifferenceCurve> perturbation_experiment(const RealPolySystem& base,
                                                            const std::vector<Rational>& initial,
                                                            const Perturbation& perturbation,
                                                            const std::vector<Rational>& eps_list, double horizon,
                                                            std::size_t samples = 200,
                                                            const IntegratorOptions& opts =
                                                                verification_integrator_options()) {
  const CRReport cr = check_cr_2var(base);
  if (!cr.satisfied) throw PreconditionError("perturbation_experiment: base system is not Cauchy-Riemann");
  if (initial.size() != 2) throw DimensionError("initial state must have two components");
  for (const auto& eps : eps_list)
    if (!check_kinetic(perturbed_system(base, perturbation, eps)).kinetic)
      throw PreconditionError("perturbed system is not kinetic for eps = " + to_string(eps));

  ImplicitOptions iopts;
  iopts.t_max = std::max(horizon, iopts.t_max);
  const Solution sol = solve(complexify_2var(base, cr, initial[0], initial[1]), iopts);
  if (!detail::covers(sol, horizon))
    throw ValidityError("horizon " + format_double(horizon) + " exceeds the unperturbed solution's validity interval");

  const std::vector<double> times = uniform_samples(horizon, samples);
  std::vector<Complex> reference;
  for (double t : times) reference.push_back(eval_solution(sol, t));
  const std::vector<double> y0{to_double(initial[0]), to_double(initial[1])};

  std::vector<DifferenceCurve> out;
  for (const auto& eps : eps_list) {
    DifferenceCurve curve;
    curve.eps = eps;
    const Trajectory traj = integrate(perturbed_system(base, perturbation, eps), y0, horizon, opts, times);
    curve.status = traj.status;
    curve.blowup_time = traj.blowup_time;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      const double dx = traj.states[k][0] - reference[k].real();
      const double dy = traj.states[k][1] - reference[k].imag();
      curve.times.push_back(traj.times[k]);
      curve.differences.push_back({dx, dy});
      curve.sup_norm = std::max({curve.sup_norm, std::fabs(dx), std::fabs(dy)});
    }
    out.push_back(std::move(curve));
  }
  return out;
}

/// Header "t,<name>..." then one row per sample.
inline void write_csv(std::ostream& os, const std::vector<std::string>& columns, const std::vector<double>& times,
                      const std::vector<std::vector<double>>& rows) {
  os << "t";
  for (const auto& c : columns) os << ',' << c;
  os << '\n';
  for (std::size_t k = 0; k < times.size(); ++k) {
    os << format_double(times[k]);
    for (double v : rows[k]) os << ',' << format_double(v);
    os << '\n';
  }
}

inline void write_difference_csv(std::ostream& os, const DifferenceCurve& curve,
                                 const std::vector<std::string>& names) {
  std::vector<std::string> cols;
  for (const auto& n : names) cols.push_back("d" + n);
  write_csv(os, cols, curve.times, curve.differences);
}

}  // namespace crode
