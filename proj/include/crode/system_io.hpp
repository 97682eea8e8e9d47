#pragma once

// JSON system files:
// {
//   "variables": ["x", "y"],
//   "equations": [[{"coefficient": "-3/2", "exponents": [2, 0]}, ...], ...],
//   "initial": ["2", "1"],            optional
//   "pairing": [[0, 1], [2, 3]]       optional, for 2n-variable systems
// }
// Coefficients are rational strings; bare JSON numbers are accepted only in
// inexact mode.

#include "closed_form.hpp"
#include "cr_structure.hpp"
#include "errors.hpp"
#include "expression.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crode {

struct SystemFile {
  RealPolySystem system;
  std::optional<std::vector<Rational>> initial;
  std::optional<Pairing> pairing;
  bool inexact = false;  // some coefficient came from a JSON float
};

namespace detail {

inline Rational read_number(const nlohmann::json& j, bool allow_inexact, bool& used_inexact, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) {
    if (!allow_inexact) throw std::invalid_argument(where + ": floating-point number needs --inexact (use a rational string)");
    used_inexact = true;
    return from_double(j.get<double>());
  }
  throw std::invalid_argument(where + ": expected a rational string");
}

}  // namespace detail

inline SystemFile system_from_json(const nlohmann::json& j, bool allow_inexact = false) {
  if (!j.is_object()) throw std::invalid_argument("system file must be a JSON object");
  SystemFile out;
  const auto& eqs = j.at("equations");
  if (!eqs.is_array()) throw std::invalid_argument("'equations' must be an array");
  const std::size_t n = eqs.size();
  std::vector<std::string> names;
  if (j.contains("variables")) {
    names = j.at("variables").get<std::vector<std::string>>();
    if (names.size() != n) throw DimensionError("variable count does not match equation count");
  } else {
    names = RealPolySystem::default_names(n);
  }

  std::vector<RealPoly> polys;
  for (std::size_t i = 0; i < n; ++i) {
    RealPoly p(n);
    for (const auto& term : eqs[i]) {
      const std::string where = "equation " + std::to_string(i + 1);
      auto e = term.at("exponents").get<std::vector<long long>>();
      if (e.size() != n) throw DimensionError(where + ": exponent vector has wrong length");
      ExponentVector ev;
      for (long long k : e) {
        if (k < 0) throw std::invalid_argument(where + ": negative exponent");
        ev.push_back(static_cast<unsigned>(k));
      }
      p.add_term(ev, detail::read_number(term.at("coefficient"), allow_inexact, out.inexact, where));
    }
    polys.push_back(std::move(p));
  }
  out.system = RealPolySystem(std::move(names), std::move(polys));

  if (j.contains("initial")) {
    std::vector<Rational> init;
    for (const auto& v : j.at("initial")) init.push_back(detail::read_number(v, allow_inexact, out.inexact, "initial"));
    if (init.size() != n) throw DimensionError("initial vector length does not match system dimension");
    out.initial = std::move(init);
  }
  if (j.contains("pairing")) {
    Pairing pr;
    for (const auto& pair : j.at("pairing")) {
      const auto v = pair.get<std::vector<std::size_t>>();
      if (v.size() != 2) throw std::invalid_argument("each pairing entry must be [x_index, y_index]");
      pr.emplace_back(v[0], v[1]);
    }
    validate_pairing(n, pr);
    out.pairing = std::move(pr);
  }
  return out;
}

inline nlohmann::json system_to_json(const RealPolySystem& sys, const std::optional<std::vector<Rational>>& initial = {}) {
  nlohmann::json j;
  j["variables"] = sys.names;
  j["equations"] = nlohmann::json::array();
  for (const auto& eq : sys.equations) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : eq.terms()) terms.push_back({{"coefficient", to_string(c)}, {"exponents", e}});
    j["equations"].push_back(std::move(terms));
  }
  if (initial) {
    j["initial"] = nlohmann::json::array();
    for (const auto& v : *initial) j["initial"].push_back(to_string(v));
  }
  return j;
}

inline nlohmann::json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline nlohmann::json interval_to_json(const Interval& iv) {
  auto bound = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  return {{"lo", bound(iv.lo)}, {"hi", bound(iv.hi)}, {"text", iv.text()}};
}

inline nlohmann::json solution_metadata_json(const SolutionMetadata& m) {
  nlohmann::json j;
  j["form"] = form_name(m.form);
  j["roots"] = nlohmann::json::array();
  for (const auto& r : m.roots) j["roots"].push_back(complex_to_json(r));
  j["leading"] = complex_to_json(m.leading);
  j["degeneracy_exact"] = m.degeneracy_exact;
  if (!m.note.empty()) j["note"] = m.note;
  return j;
}

inline nlohmann::json solution_to_json(const Solution& sol) {
  nlohmann::json j;
  if (const auto* e = std::get_if<ClosedFormSolution>(&sol)) {
    j["kind"] = "explicit";
    j["expression"] = expr_to_json(e->expression());
    j["validity"] = interval_to_json(e->validity());
  } else {
    const auto& im = std::get<ImplicitSolution>(sol);
    j["kind"] = "implicit";
    j["validity"] = interval_to_json(im.horizon());
  }
  j["metadata"] = solution_metadata_json(solution_metadata(sol));
  return j;
}

/// Reads back an explicit solution written by solution_to_json.
inline ClosedFormSolution explicit_solution_from_json(const nlohmann::json& j) {
  if (j.at("kind") != "explicit") throw std::invalid_argument("only explicit solutions can be read back");
  auto bound = [](const nlohmann::json& v) {
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s == "inf") return std::numeric_limits<double>::infinity();
      if (s == "-inf") return -std::numeric_limits<double>::infinity();
      throw std::invalid_argument("bad interval bound '" + s + "'");
    }
    return v.get<double>();
  };
  Interval iv{bound(j.at("validity").at("lo")), bound(j.at("validity").at("hi"))};
  SolutionMetadata meta;
  if (j.contains("metadata") && j["metadata"].contains("note")) meta.note = j["metadata"]["note"].get<std::string>();
  return ClosedFormSolution(expr_from_json(j.at("expression")), iv, meta);
}

}  // namespace crode
