#pragma once

// Shared fixtures for the test suites: seeded generators and sample loading.

#include "crode/crode.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace crode::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int max_num = 5, int max_den = 4) {
  std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
  return Rational(num(rng), den(rng));
}

inline Rational random_nonzero_rational(Rng& rng, int max_num = 5, int max_den = 4) {
  Rational q;
  do q = random_rational(rng, max_num, max_den);
  while (q == 0);
  return q;
}

inline ExactComplex random_exact_complex(Rng& rng, int max_num = 5, int max_den = 4) {
  return {random_rational(rng, max_num, max_den), random_rational(rng, max_num, max_den)};
}

inline CRParameters random_cr_parameters(Rng& rng, unsigned R) {
  CRParameters p;
  p.a00 = random_rational(rng);
  p.A00 = random_rational(rng);
  for (unsigned r = 1; r <= R; ++r) p.by_degree.emplace_back(random_rational(rng), random_rational(rng));
  if (R > 0 && p.by_degree.back().first == 0 && p.by_degree.back().second == 0) p.by_degree.back().first = 1;
  return p;
}

/// Random ODE of exactly the given degree.
inline ComplexScalarODE random_complex_ode(Rng& rng, int degree, int max_num = 4, int max_den = 4) {
  std::vector<ExactComplex> c;
  for (int r = 0; r <= degree; ++r) c.push_back(random_exact_complex(rng, max_num, max_den));
  if (degree > 0 && c.back().is_zero()) c.back() = ExactComplex(1);
  return {ExactComplexPoly(c), random_exact_complex(rng, max_num, max_den)};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string sample_path(const std::string& name) { return std::string(CRODE_SAMPLES_DIR) + "/" + name; }

inline SystemFile load_sample(const std::string& name) {
  return system_from_json(nlohmann::json::parse(read_file(sample_path(name))));
}

inline RealPolySystem make_system(std::vector<RealPoly> eqs) {
  const std::size_t n = eqs.size();
  return RealPolySystem(RealPolySystem::default_names(n), std::move(eqs));
}

/// Two-variable polynomial from (coefficient, x exponent, y exponent) triples.
inline RealPoly poly2(std::initializer_list<std::tuple<Rational, unsigned, unsigned>> terms) {
  RealPoly p(2);
  for (const auto& [c, i, j] : terms) p.add_term({i, j}, c);
  return p;
}

inline RealPolySystem quadratic_example() {
  return make_system({poly2({{1, 0, 0}, {-1, 2, 0}, {-2, 1, 1}, {1, 0, 2}}),
                      poly2({{1, 0, 0}, {1, 2, 0}, {-2, 1, 1}, {-1, 0, 2}})});
}

/// The printed closed form of the quadratic example with x(0) = 2, y(0) = 1.
inline std::pair<double, double> quadratic_exact(double t) {
  const double s2 = std::sqrt(2.0);
  const double e2 = std::exp(2 * s2 * t), e4 = std::exp(4 * s2 * t);
  const double den = -8 * e2 + 3 * (2 + s2) * e4 + 6 - 3 * s2;
  return {(2 * e2 + 3 * (1 + s2) * e4 + 3 - 3 * s2) / den, (-2 * e2 + 3 * (1 + s2) * e4 + 3 - 3 * s2) / den};
}

// z1' = a z1^2 + b z1 z2 + c z2^2, z2' = A z1^2 + B z1 z2 + C z2^2
inline ComplexODESystem pair_system(const std::array<ExactComplex, 6>& k, ExactComplex z1, ExactComplex z2) {
  ComplexODESystem ode;
  for (int eq = 0; eq < 2; ++eq) {
    ComplexMultiPoly f(2);
    f.add_term({2, 0}, k[3 * eq]);
    f.add_term({1, 1}, k[3 * eq + 1]);
    f.add_term({0, 2}, k[3 * eq + 2]);
    ode.rhs.push_back(f);
  }
  ode.initial = {z1, z2};
  return ode;
}

inline HomogeneousPair float_pair(const std::array<ExactComplex, 6>& k) {
  return {k[0].to_complex(), k[1].to_complex(), k[2].to_complex(),
          k[3].to_complex(), k[4].to_complex(), k[5].to_complex()};
}

// Largest |Phi| along an integrated trajectory, Phi anchored to zero at the start.
inline double tracked_drift(const FirstIntegral& phi, const Trajectory& traj) {
  const auto& s0 = traj.states.front();
  FirstIntegralTracker track(phi, {s0[0], s0[1]}, {s0[2], s0[3]});
  double worst = 0.0;
  for (const auto& s : traj.states) worst = std::max(worst, std::abs(track({s[0], s[1]}, {s[2], s[3]})));
  return worst;
}

}  // namespace crode::testing
