#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace crode {

/// Exponents of one monomial, one entry per variable.
using ExponentVector = std::vector<unsigned>;

inline unsigned total_degree(const ExponentVector& e) { return std::accumulate(e.begin(), e.end(), 0u); }

template <class To>
To scalar_cast(const Rational& q) {
  if constexpr (std::is_same_v<To, Rational>)
    return q;
  else if constexpr (std::is_same_v<To, double>)
    return to_double(q);
  else
    return To(to_double(q));
}

/// Sparse multivariate polynomial; zero coefficients are never stored.
template <class T>
class Polynomial {
 public:
  using Coefficient = T;
  using TermMap = std::map<ExponentVector, T>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const T& c) {
    Polynomial p(nvars);
    p.add_term(ExponentVector(nvars, 0), c);
    return p;
  }

  static Polynomial variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw DimensionError("variable index out of range");
    ExponentVector e(nvars, 0);
    e[index] = 1;
    Polynomial p(nvars);
    p.add_term(e, T(1));
    return p;
  }

  static Polynomial monomial(ExponentVector e, const T& c) {
    Polynomial p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  T coefficient(const ExponentVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? T(0) : it->second;
  }

  void add_term(ExponentVector e, const T& c) {
    if (e.size() != nvars_) throw DimensionError("exponent vector length does not match variable count");
    if (c == T(0)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == T(0)) terms_.erase(it);
    }
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, T(-c));
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    if (s == T(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= T(-1); }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    Polynomial r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        ExponentVector e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  template <class Fn>
  auto map_coefficients(Fn&& fn) const {
    using U = std::decay_t<decltype(fn(std::declval<const T&>()))>;
    Polynomial<U> r(nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
    return r;
  }

 private:
  void check_same(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw DimensionError("polynomials over different variable counts");
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

template <class T>
Polynomial<T> pow(const Polynomial<T>& p, unsigned k) {
  Polynomial<T> r = Polynomial<T>::constant(p.nvars(), T(1));
  for (unsigned i = 0; i < k; ++i) r = r * p;
  return r;
}

/// Exact formal derivative with respect to variable `var`.
template <class T>
Polynomial<T> partial_derivative(const Polynomial<T>& p, std::size_t var) {
  if (var >= p.nvars()) throw DimensionError("derivative variable out of range");
  Polynomial<T> r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    ExponentVector d = e;
    --d[var];
    r.add_term(std::move(d), c * T(e[var]));
  }
  return r;
}

/// Horner-free direct evaluation; exact when V is Rational.
template <class T, class V>
V evaluate(const Polynomial<T>& p, std::span<const V> point) {
  if (point.size() != p.nvars()) throw DimensionError("evaluation point has wrong dimension");
  V acc(0);
  for (const auto& [e, c] : p.terms()) {
    V term = scalar_cast<V>(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    acc += term;
  }
  return acc;
}

/// Substitutes the value for one variable, keeping the variable count.
template <class T>
Polynomial<T> substitute(const Polynomial<T>& p, std::size_t var, const T& value) {
  Polynomial<T> r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    T coeff = c;
    for (unsigned k = 0; k < e[var]; ++k) coeff *= value;
    ExponentVector d = e;
    d[var] = 0;
    r.add_term(std::move(d), coeff);
  }
  return r;
}

template <class T>
struct PolySystem {
  std::vector<std::string> names;
  std::vector<Polynomial<T>> equations;

  PolySystem() = default;
  PolySystem(std::vector<std::string> n, std::vector<Polynomial<T>> eqs) : names(std::move(n)), equations(std::move(eqs)) {
    validate();
  }

  static PolySystem zero(std::size_t nvars) {
    return PolySystem(default_names(nvars), std::vector<Polynomial<T>>(nvars, Polynomial<T>(nvars)));
  }

  std::size_t nvars() const { return equations.size(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& eq : equations) d = std::max(d, eq.degree());
    return d;
  }

  void validate() const {
    if (names.size() != equations.size())
      throw DimensionError("variable name count does not match equation count");
    for (const auto& eq : equations)
      if (eq.nvars() != equations.size()) throw DimensionError("equation variable count does not match system size");
  }

  static std::vector<std::string> default_names(std::size_t n) {
    if (n == 2) return {"x", "y"};
    std::vector<std::string> r;
    for (std::size_t i = 0; i < n; ++i) r.push_back("x" + std::to_string(i + 1));
    return r;
  }

  friend bool operator==(const PolySystem& a, const PolySystem& b) { return a.equations == b.equations; }
};

using RealPoly = Polynomial<Rational>;
using RealPolySystem = PolySystem<Rational>;

template <class T, class V>
std::vector<V> eval_system(const PolySystem<T>& sys, std::span<const V> point) {
  if (point.size() != sys.nvars()) throw DimensionError("point length does not match system dimension");
  std::vector<V> out;
  out.reserve(sys.nvars());
  for (const auto& eq : sys.equations) out.push_back(evaluate<T, V>(eq, point));
  return out;
}

template <class T, class V>
std::vector<V> eval_system(const PolySystem<T>& sys, const std::vector<V>& point) {
  return eval_system<T, V>(sys, std::span<const V>(point));
}

/// Human-readable form such as "1 - x^2 - 2*x*y + y^2".
inline std::string format_poly(const RealPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  // graded order: constant first, then by degree
  std::vector<std::pair<ExponentVector, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    auto da = total_degree(a.first), db = total_degree(b.first);
    if (da != db) return da < db;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    Rational mag = c.sign() < 0 ? Rational(-c) : c;
    if (first)
      os << (c.sign() < 0 ? "-" : "");
    else
      os << (c.sign() < 0 ? " - " : " + ");
    first = false;
    bool is_const = total_degree(e) == 0;
    bool wrote = false;
    if (is_const || mag != 1) {
      os << to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << names[i];
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace crode
