#pragma once

#include "cr_structure.hpp"
#include "errors.hpp"
#include "polynomial.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace crode {

struct Reaction {
  ExponentVector reactant;
  ExponentVector product;
  Rational rate;

  friend bool operator==(const Reaction&, const Reaction&) = default;
};

struct ReactionNetwork {
  std::vector<std::string> species;
  std::vector<Reaction> reactions;

  void validate() const {
    for (const auto& r : reactions) {
      if (r.reactant.size() != species.size() || r.product.size() != species.size())
        throw DimensionError("reaction complex length does not match species count");
      if (r.rate <= 0) throw std::invalid_argument("reaction rates must be positive");
    }
  }

  /// Distinct complexes in order of first appearance.
  std::vector<ExponentVector> complexes() const {
    std::vector<ExponentVector> out;
    std::set<ExponentVector> seen;
    for (const auto& r : reactions)
      for (const auto* c : {&r.reactant, &r.product})
        if (seen.insert(*c).second) out.push_back(*c);
    return out;
  }

  friend bool operator==(const ReactionNetwork&, const ReactionNetwork&) = default;
};

struct CrossEffect {
  std::size_t equation;
  ExponentVector exponents;
  Rational coefficient;
};

struct KineticityReport {
  bool kinetic = true;
  std::vector<CrossEffect> offenders;
};

/// A system is kinetic iff no equation i has a negative monomial free of x_i.
inline KineticityReport check_kinetic(const RealPolySystem& sys) {
  KineticityReport report;
  for (std::size_t i = 0; i < sys.nvars(); ++i)
    for (const auto& [e, c] : sys.equations[i].terms())
      if (c < 0 && e[i] == 0) report.offenders.push_back({i, e, c});
  report.kinetic = report.offenders.empty();
  return report;
}

enum class SignConstraint { Free, NonNegative, NonPositive, Zero };

inline const char* constraint_symbol(SignConstraint s) {
  switch (s) {
    case SignConstraint::Free: return "free";
    case SignConstraint::NonNegative: return ">= 0";
    case SignConstraint::NonPositive: return "<= 0";
    case SignConstraint::Zero: return "= 0";
  }
  return "?";
}

struct ParameterConstraint {
  std::string name;   // a_r^s / A_0^0
  std::string alias;  // conventional single letter (a, A, b, c, d, e, g, h)
  SignConstraint constraint = SignConstraint::Free;
};

namespace detail {

inline std::vector<std::pair<std::string, std::string>> cr_parameter_names(unsigned R) {
  static const char* letters[][2] = {{"b", "c"}, {"d", "e"}, {"g", "h"}};
  std::vector<std::pair<std::string, std::string>> out{{"a_0^0", "a"}, {"A_0^0", "A"}};
  for (unsigned r = 1; r <= R; ++r)
    for (unsigned s = 0; s < 2; ++s)
      out.emplace_back("a_" + std::to_string(r) + "^" + std::to_string(s), r <= 3 ? letters[r - 1][s] : "");
  return out;
}

inline CRParameters unit_parameters(unsigned R, std::size_t index) {
  CRParameters p;
  p.by_degree.assign(R, {Rational(0), Rational(0)});
  Rational* slots[2] = {&p.a00, &p.A00};
  if (index < 2)
    *slots[index] = 1;
  else
    (index % 2 == 0 ? p.by_degree[(index - 2) / 2].first : p.by_degree[(index - 2) / 2].second) = 1;
  return p;
}

}  // namespace detail

/// Sign constraints on the CR parameters (a_0^0, A_0^0, a_1^0, a_1^1, ...)
/// under which cr_parameterize yields a kinetic system. Derived by expanding
/// each parameter's unit system and inspecting every potential cross-effect
/// monomial; each such coefficient must depend on a single parameter.
inline std::vector<ParameterConstraint> kinetic_cr_constraints(unsigned R) {
  if (R < 1 || R > 3) throw std::invalid_argument("kinetic_cr_constraints supports degrees 1 to 3");
  const auto names = detail::cr_parameter_names(R);
  const std::size_t count = names.size();

  // (equation, monomial) -> [(parameter, weight)]
  std::map<std::pair<std::size_t, ExponentVector>, std::vector<std::pair<std::size_t, Rational>>> cross;
  for (std::size_t p = 0; p < count; ++p) {
    const RealPolySystem unit = cr_parameterize(detail::unit_parameters(R, p));
    for (std::size_t i = 0; i < 2; ++i)
      for (const auto& [e, c] : unit.equations[i].terms())
        if (e[i] == 0) cross[{i, e}].emplace_back(p, c);
  }

  std::vector<bool> must_be_nonneg(count, false), must_be_nonpos(count, false);
  for (const auto& [key, weights] : cross) {
    if (weights.size() != 1)
      throw std::logic_error("cross-effect coefficient couples several parameters; no per-parameter sign constraint");
    const auto& [p, w] = weights.front();
    (w > 0 ? must_be_nonneg : must_be_nonpos)[p] = true;
  }

  std::vector<ParameterConstraint> out;
  for (std::size_t p = 0; p < count; ++p) {
    SignConstraint s = SignConstraint::Free;
    if (must_be_nonneg[p] && must_be_nonpos[p])
      s = SignConstraint::Zero;
    else if (must_be_nonneg[p])
      s = SignConstraint::NonNegative;
    else if (must_be_nonpos[p])
      s = SignConstraint::NonPositive;
    out.push_back({names[p].first, names[p].second, s});
  }
  return out;
}

/// Whether `params` meet the constraints (same parameter ordering).
inline bool satisfies_constraints(const std::vector<ParameterConstraint>& constraints, const CRParameters& params) {
  std::vector<Rational> values{params.a00, params.A00};
  for (const auto& [r0, r1] : params.by_degree) {
    values.push_back(r0);
    values.push_back(r1);
  }
  if (values.size() != constraints.size()) throw DimensionError("parameter count does not match constraint set");
  for (std::size_t k = 0; k < values.size(); ++k) {
    const int s = sign(values[k]);
    switch (constraints[k].constraint) {
      case SignConstraint::Free: break;
      case SignConstraint::NonNegative: if (s < 0) return false; break;
      case SignConstraint::NonPositive: if (s > 0) return false; break;
      case SignConstraint::Zero: if (s != 0) return false; break;
    }
  }
  return true;
}

/// Hars-Toth canonic realization: kappa x^alpha in equation i becomes
/// alpha -> alpha + sign(kappa) e_i at rate |kappa|.
inline ReactionNetwork canonic_realization(const RealPolySystem& sys, const KineticityReport& report) {
  if (!report.kinetic) throw PreconditionError("canonic_realization: system has negative cross-effects");
  ReactionNetwork net;
  net.species = sys.names;
  for (std::size_t i = 0; i < sys.nvars(); ++i) {
    for (const auto& [alpha, kappa] : sys.equations[i].terms()) {
      ExponentVector product = alpha;
      if (kappa > 0) {
        ++product[i];
      } else {
        if (product[i] == 0) throw PreconditionError("canonic_realization: negative cross-effect");
        --product[i];
      }
      net.reactions.push_back({alpha, product, kappa > 0 ? kappa : Rational(-kappa)});
    }
  }
  return net;
}

inline ReactionNetwork canonic_realization(const RealPolySystem& sys) {
  return canonic_realization(sys, check_kinetic(sys));
}

/// Mass-action ODE: x' = sum over reactions of k x^reactant (product - reactant).
inline RealPolySystem induced_ode(const ReactionNetwork& net) {
  net.validate();
  const std::size_t n = net.species.size();
  RealPolySystem sys(net.species, std::vector<RealPoly>(n, RealPoly(n)));
  for (const auto& r : net.reactions)
    for (std::size_t i = 0; i < n; ++i) {
      const long delta = static_cast<long>(r.product[i]) - static_cast<long>(r.reactant[i]);
      if (delta != 0) sys.equations[i].add_term(r.reactant, r.rate * Rational(delta));
    }
  return sys;
}

struct NetworkStatistics {
  std::size_t species = 0;
  std::size_t complexes = 0;
  std::size_t reactions = 0;
};

inline NetworkStatistics network_statistics(const ReactionNetwork& net) {
  return {net.species.size(), net.complexes().size(), net.reactions.size()};
}

}  // namespace crode
