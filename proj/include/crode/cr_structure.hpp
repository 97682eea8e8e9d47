#pragma once

// Cauchy-Riemann structure of polynomial vector fields.
//
// A planar field (u, v) is holomorphic iff  u_x = v_y  and  u_y = -v_x.
// For polynomial fields this is a finite set of coefficient identities, so
// the verdict is exact. A second, independent route reads off the 2R+2 free
// parameters (a_r^0, a_r^1, a_0^0, A_0^0) and regenerates the field through
// the binomial coefficient recursions; both routes must agree.

#include "errors.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace crode {

struct CRViolation {
  std::string relation;
  Rational left;
  Rational right;
  Rational residual;
};

/// Free parameters of a CR pair of degree R:
///   u = a_0^0 + sum_r (a_r^0 Re z^r + a_r^1/r Im z^r)
///   v = A_0^0 + sum_r (a_r^0 Im z^r - a_r^1/r Re z^r)
struct CRParameters {
  Rational a00{0};
  Rational A00{0};
  /// index r-1 holds (a_r^0, a_r^1)
  std::vector<std::pair<Rational, Rational>> by_degree;

  unsigned degree() const { return static_cast<unsigned>(by_degree.size()); }
  std::size_t count() const { return 2 + 2 * by_degree.size(); }
  friend bool operator==(const CRParameters&, const CRParameters&) = default;
};

struct CRReport {
  bool satisfied = false;
  std::vector<CRViolation> violations;
  CRParameters free_parameters;  // filled for satisfied 2-variable systems
  unsigned degree = 0;
  bool exact = true;  // false when produced by the tolerance variant
};

/// (x_j, y_j) variable indices forming the j-th complex variable.
using Pairing = std::vector<std::pair<std::size_t, std::size_t>>;

namespace detail {

inline std::string monomial_name(const ExponentVector& e, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (any) os << '*';
    os << names[i];
    if (e[i] > 1) os << '^' << e[i];
    any = true;
  }
  return any ? os.str() : "1";
}

using ZeroTest = std::function<bool(const Rational&)>;

// Appends a violation for every monomial where lhs - sign*rhs does not vanish.
inline void compare_identity(const RealPoly& lhs, const RealPoly& rhs, int sign, const std::string& label,
                             const std::vector<std::string>& names, const ZeroTest& is_zero,
                             std::vector<CRViolation>& out) {
  RealPoly diff = sign > 0 ? lhs - rhs : lhs + rhs;
  for (const auto& [e, c] : diff.terms()) {
    if (is_zero(c)) continue;
    Rational right = rhs.coefficient(e);
    if (sign < 0) right = -right;
    out.push_back({label + " at " + monomial_name(e, names), lhs.coefficient(e), right, c});
  }
}

inline CRParameters read_parameters(const RealPolySystem& sys) {
  const RealPoly& u = sys.equations[0];
  const RealPoly& v = sys.equations[1];
  CRParameters p;
  p.a00 = u.coefficient({0, 0});
  p.A00 = v.coefficient({0, 0});
  for (unsigned r = 1; r <= sys.degree(); ++r) p.by_degree.emplace_back(u.coefficient({r, 0}), u.coefficient({r - 1, 1}));
  return p;
}

inline CRReport check_cr_2var_impl(const RealPolySystem& sys, const ZeroTest& is_zero) {
  if (sys.nvars() != 2) throw DimensionError("check_cr_2var needs exactly two variables");
  const RealPoly& u = sys.equations[0];
  const RealPoly& v = sys.equations[1];
  CRReport report;
  report.degree = sys.degree();
  compare_identity(partial_derivative(u, 0), partial_derivative(v, 1), +1, "du/dx = dv/dy", sys.names, is_zero,
                   report.violations);
  compare_identity(partial_derivative(u, 1), partial_derivative(v, 0), -1, "du/dy = -dv/dx", sys.names, is_zero,
                   report.violations);
  report.satisfied = report.violations.empty();
  if (report.satisfied) report.free_parameters = read_parameters(sys);
  return report;
}

}  // namespace detail

/// Exact CR verdict for a two-variable system via the polynomial identities
/// u_x - v_y == 0 and u_y + v_x == 0.
inline CRReport check_cr_2var(const RealPolySystem& sys) {
  return detail::check_cr_2var_impl(sys, [](const Rational& c) { return c == 0; });
}

/// Tolerance variant for measured coefficients: a residual counts as zero when
/// |residual| <= tau * max(1, largest |coefficient|). Never used for exact claims.
inline CRReport check_cr_2var(const RealPolySystem& sys, double tau) {
  double scale = 1.0;
  for (const auto& eq : sys.equations)
    for (const auto& [e, c] : eq.terms()) scale = std::max(scale, std::fabs(to_double(c)));
  auto report = detail::check_cr_2var_impl(sys, [&](const Rational& c) { return std::fabs(to_double(c)) <= tau * scale; });
  report.exact = false;
  return report;
}

/// Builds the CR pair with the given free parameters from the closed-form
/// coefficient recursions:
///   u: x^{r-s} y^s  ->  i^s C(r,s) a_r^0 (s even),  i^{s-1} C(r,s)/r a_r^1 (s odd)
///   v: x^{r-s} y^s  ->  i^{s-2} C(r,s)/r a_r^1 (s even),  i^{s-1} C(r,s) a_r^0 (s odd)
inline RealPolySystem cr_parameterize(const CRParameters& params) {
  RealPoly u(2), v(2);
  u.add_term({0, 0}, params.a00);
  v.add_term({0, 0}, params.A00);
  // i^k for even k
  auto ipow_even = [](int k) { return ((k / 2) % 2 == 0) ? Rational(1) : Rational(-1); };
  for (unsigned r = 1; r <= params.degree(); ++r) {
    const auto& [ar0, ar1] = params.by_degree[r - 1];
    for (unsigned s = 0; s <= r; ++s) {
      const Rational c = binomial(r, s);
      ExponentVector e{r - s, s};
      if (s % 2 == 0) {
        u.add_term(e, ipow_even(static_cast<int>(s)) * c * ar0);
        v.add_term(e, ipow_even(static_cast<int>(s) + 2) * c / Rational(r) * ar1);
      } else {
        u.add_term(e, ipow_even(static_cast<int>(s) - 1) * c / Rational(r) * ar1);
        v.add_term(e, ipow_even(static_cast<int>(s) - 1) * c * ar0);
      }
    }
  }
  return RealPolySystem({"x", "y"}, {u, v});
}

inline RealPolySystem cr_parameterize(unsigned R, const Rational& a00, const Rational& A00,
                                      std::vector<std::pair<Rational, Rational>> params) {
  if (params.size() != R) throw DimensionError("cr_parameterize: need one (a_r^0, a_r^1) pair per degree 1..R");
  return cr_parameterize(CRParameters{a00, A00, std::move(params)});
}

/// Second verdict route: read off the free parameters and regenerate. The
/// system is CR exactly when the regenerated field reproduces it.
inline bool check_cr_2var_by_recursion(const RealPolySystem& sys) {
  if (sys.nvars() != 2) throw DimensionError("check_cr_2var_by_recursion needs exactly two variables");
  return cr_parameterize(detail::read_parameters(sys)).equations == sys.equations;
}

/// Dimension of the solution space of the linear CR relations among all
/// coefficients of a generic degree-R pair (u, v), by exact rank.
inline std::size_t cr_solution_dimension(unsigned R) {
  // unknown layout: u_{i,j} then v_{i,j} for i + j <= R
  std::map<std::pair<unsigned, unsigned>, std::size_t> index;
  for (unsigned d = 0; d <= R; ++d)
    for (unsigned j = 0; j <= d; ++j) {
      const std::size_t next = index.size();
      index[{d - j, j}] = next;
    }
  const std::size_t half = index.size();
  const std::size_t unknowns = 2 * half;
  auto u_at = [&](unsigned i, unsigned j) { return index.at({i, j}); };
  auto v_at = [&](unsigned i, unsigned j) { return half + index.at({i, j}); };

  std::vector<std::vector<Rational>> rows;
  for (unsigned d = 0; d + 1 <= R; ++d)
    for (unsigned j = 0; j <= d; ++j) {
      const unsigned i = d - j;
      // coefficient of x^i y^j in u_x - v_y and in u_y + v_x
      std::vector<Rational> r1(unknowns), r2(unknowns);
      r1[u_at(i + 1, j)] += Rational(i + 1);
      r1[v_at(i, j + 1)] -= Rational(j + 1);
      r2[u_at(i, j + 1)] += Rational(j + 1);
      r2[v_at(i + 1, j)] += Rational(i + 1);
      rows.push_back(std::move(r1));
      rows.push_back(std::move(r2));
    }

  std::size_t rank = 0;
  for (std::size_t col = 0; col < unknowns && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t k = col; k < unknowns; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return unknowns - rank;
}

inline void validate_pairing(std::size_t nvars, const Pairing& pairing) {
  if (nvars % 2 != 0) throw DimensionError("multivariate CR check needs an even number of variables");
  if (pairing.size() * 2 != nvars) throw DimensionError("pairing must cover every variable exactly once");
  std::vector<bool> seen(nvars, false);
  for (const auto& [x, y] : pairing) {
    if (x >= nvars || y >= nvars || x == y || seen[x] || seen[y])
      throw DimensionError("pairing is not a perfect matching of the variables");
    seen[x] = seen[y] = true;
  }
}

/// CR verdict for a 2n-variable system whose k-th complex component is
/// (u_k, v_k) = (equation x_k, equation y_k):
///   du_k/dx_j = dv_k/dy_j  and  du_k/dy_j = -dv_k/dx_j  for all j, k.
inline CRReport check_cr_multivar(const RealPolySystem& sys, const Pairing& pairing) {
  validate_pairing(sys.nvars(), pairing);
  CRReport report;
  report.degree = sys.degree();
  auto is_zero = [](const Rational& c) { return c == 0; };
  for (std::size_t k = 0; k < pairing.size(); ++k) {
    const RealPoly& u = sys.equations[pairing[k].first];
    const RealPoly& v = sys.equations[pairing[k].second];
    for (std::size_t j = 0; j < pairing.size(); ++j) {
      const auto [xj, yj] = pairing[j];
      const std::string uk = "d" + sys.names[pairing[k].first];
      const std::string vk = "d" + sys.names[pairing[k].second];
      detail::compare_identity(partial_derivative(u, xj), partial_derivative(v, yj), +1,
                               uk + "'/d" + sys.names[xj] + " = " + vk + "'/d" + sys.names[yj], sys.names, is_zero,
                               report.violations);
      detail::compare_identity(partial_derivative(u, yj), partial_derivative(v, xj), -1,
                               uk + "'/d" + sys.names[yj] + " = -" + vk + "'/d" + sys.names[xj], sys.names, is_zero,
                               report.violations);
    }
  }
  report.satisfied = report.violations.empty();
  return report;
}

struct CPReport {
  bool satisfied = false;
  std::array<Rational, 4> residuals;
};

/// Residuals of the four Calogero-Payandeh solvability conditions for
///   x' = c11 x^2 + c12 x y + c13 y^2 + c14 x + c15 y + c16
///   y' = c21 x^2 + c22 x y + c23 y^2 + c24 x + c25 y + c26
inline CPReport check_calogero_payandeh(const RealPolySystem& sys) {
  if (sys.nvars() != 2) throw DimensionError("Calogero-Payandeh conditions need two variables");
  if (sys.degree() > 2) throw PreconditionError("Calogero-Payandeh conditions apply to degree <= 2 only");
  const RealPoly& p = sys.equations[0];
  const RealPoly& q = sys.equations[1];
  const Rational c11 = p.coefficient({2, 0}), c12 = p.coefficient({1, 1}), c13 = p.coefficient({0, 2});
  const Rational c14 = p.coefficient({1, 0}), c15 = p.coefficient({0, 1});
  const Rational c21 = q.coefficient({2, 0}), c22 = q.coefficient({1, 1}), c23 = q.coefficient({0, 2});
  const Rational c24 = q.coefficient({1, 0}), c25 = q.coefficient({0, 1});

  CPReport r;
  r.residuals[0] = 4 * c13 * c21 - c12 * c22;
  r.residuals[1] = 2 * (-c12 + 2 * c23) * c21 + (2 * c11 - c22) * c22;
  r.residuals[2] = c24 * (2 * c11 - c22) + 2 * c21 * (c25 - c14);
  r.residuals[3] = c12 * c24 - 2 * c15 * c21;
  r.satisfied = std::all_of(r.residuals.begin(), r.residuals.end(), [](const Rational& x) { return x == 0; });
  return r;
}

}  // namespace crode
