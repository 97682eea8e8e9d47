#pragma once

// Immutable expression trees over the time variable t with complex
// constants. Evaluation uses principal branches; builders in closed_form
// only emit trees whose branch cuts are not crossed on the validity interval.

#include "complex.hpp"
#include "errors.hpp"
#include "rational.hpp"

#include "json.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace crode {

enum class ExprOp { Constant, Time, Add, Multiply, Divide, Negate, Exp, Power, Log };

inline const char* op_name(ExprOp op) {
  switch (op) {
    case ExprOp::Constant: return "const";
    case ExprOp::Time: return "t";
    case ExprOp::Add: return "add";
    case ExprOp::Multiply: return "mul";
    case ExprOp::Divide: return "div";
    case ExprOp::Negate: return "neg";
    case ExprOp::Exp: return "exp";
    case ExprOp::Power: return "pow";
    case ExprOp::Log: return "log";
  }
  return "?";
}

inline ExprOp op_from_name(const std::string& s) {
  for (ExprOp op : {ExprOp::Constant, ExprOp::Time, ExprOp::Add, ExprOp::Multiply, ExprOp::Divide, ExprOp::Negate,
                    ExprOp::Exp, ExprOp::Power, ExprOp::Log})
    if (s == op_name(op)) return op;
  throw std::invalid_argument("unknown expression node type '" + s + "'");
}

class Expr {
 public:
  Expr() : Expr(Complex(0.0)) {}
  Expr(Complex value) : node_(std::make_shared<Node>(Node{ExprOp::Constant, value, Rational(0), {}})) {}

  static Expr time() { return Expr(ExprOp::Time, {}); }

  ExprOp op() const { return node_->op; }
  Complex value() const { return node_->value; }
  const Rational& exponent() const { return node_->exponent; }
  const std::vector<Expr>& children() const { return node_->children; }

  friend Expr operator+(const Expr& a, const Expr& b) { return Expr(ExprOp::Add, {a, b}); }
  friend Expr operator-(const Expr& a, const Expr& b) { return Expr(ExprOp::Add, {a, -b}); }
  friend Expr operator*(const Expr& a, const Expr& b) { return Expr(ExprOp::Multiply, {a, b}); }
  friend Expr operator/(const Expr& a, const Expr& b) { return Expr(ExprOp::Divide, {a, b}); }
  friend Expr operator-(const Expr& a) { return Expr(ExprOp::Negate, {a}); }
  friend Expr exp(const Expr& a) { return Expr(ExprOp::Exp, {a}); }
  friend Expr log(const Expr& a) { return Expr(ExprOp::Log, {a}); }
  friend Expr pow(const Expr& a, const Rational& exponent) {
    Expr e(ExprOp::Power, {a});
    e.node_->exponent = exponent;
    return e;
  }

  Complex evaluate(double t) const {
    const auto& c = node_->children;
    switch (node_->op) {
      case ExprOp::Constant: return node_->value;
      case ExprOp::Time: return Complex(t, 0.0);
      case ExprOp::Add: return c[0].evaluate(t) + c[1].evaluate(t);
      case ExprOp::Multiply: return c[0].evaluate(t) * c[1].evaluate(t);
      case ExprOp::Divide: return c[0].evaluate(t) / c[1].evaluate(t);
      case ExprOp::Negate: return -c[0].evaluate(t);
      case ExprOp::Exp: return std::exp(c[0].evaluate(t));
      case ExprOp::Log: return std::log(c[0].evaluate(t));
      case ExprOp::Power: {
        const Complex base = c[0].evaluate(t);
        const Rational& q = node_->exponent;
        if (mp::denominator(q) == 1 && mp::abs(q) <= 64) {
          const int k = q.convert_to<int>();
          Complex r(1.0);
          for (int i = 0; i < std::abs(k); ++i) r *= base;
          return k < 0 ? Complex(1.0) / r : r;
        }
        if (mp::denominator(q) == 2) {
          // integer power of the principal square root
          const Complex root = complex_sqrt(base);
          const int k = (q * 2).convert_to<int>();
          Complex r(1.0);
          for (int i = 0; i < std::abs(k); ++i) r *= root;
          return k < 0 ? Complex(1.0) / r : r;
        }
        return std::pow(base, to_double(q));
      }
    }
    return {};
  }

  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    if (x.op != y.op || x.children.size() != y.children.size()) return false;
    if (x.op == ExprOp::Constant && x.value != y.value) return false;
    if (x.op == ExprOp::Power && x.exponent != y.exponent) return false;
    for (std::size_t i = 0; i < x.children.size(); ++i)
      if (!(x.children[i] == y.children[i])) return false;
    return true;
  }

 private:
  struct Node {
    ExprOp op;
    Complex value;
    Rational exponent;
    std::vector<Expr> children;
  };

  Expr(ExprOp op, std::vector<Expr> children)
      : node_(std::make_shared<Node>(Node{op, Complex(0.0), Rational(0), std::move(children)})) {}

  std::shared_ptr<Node> node_;
};

/// JSON form: {"op": <name>, "args": [...]} with "re"/"im" on constants and
/// "exponent" (rational string) on powers.
inline nlohmann::json expr_to_json(const Expr& e) {
  nlohmann::json j;
  j["op"] = op_name(e.op());
  if (e.op() == ExprOp::Constant) {
    j["re"] = e.value().real();
    j["im"] = e.value().imag();
    return j;
  }
  if (e.op() == ExprOp::Power) j["exponent"] = to_string(e.exponent());
  if (e.op() != ExprOp::Time) {
    j["args"] = nlohmann::json::array();
    for (const auto& c : e.children()) j["args"].push_back(expr_to_json(c));
  }
  return j;
}

inline Expr expr_from_json(const nlohmann::json& j) {
  const ExprOp op = op_from_name(j.at("op").get<std::string>());
  auto arg = [&](std::size_t i) {
    const auto& args = j.at("args");
    if (!args.is_array() || i >= args.size()) throw std::invalid_argument("expression node is missing arguments");
    return expr_from_json(args[i]);
  };
  auto arity = [&](std::size_t n) {
    if (!j.contains("args") || j.at("args").size() != n)
      throw std::invalid_argument(std::string("expression node '") + op_name(op) + "' has wrong arity");
  };
  switch (op) {
    case ExprOp::Constant: return Expr(Complex(j.at("re").get<double>(), j.at("im").get<double>()));
    case ExprOp::Time: return Expr::time();
    case ExprOp::Add: arity(2); return Expr(arg(0)) + arg(1);
    case ExprOp::Multiply: arity(2); return arg(0) * arg(1);
    case ExprOp::Divide: arity(2); return arg(0) / arg(1);
    case ExprOp::Negate: arity(1); return -arg(0);
    case ExprOp::Exp: arity(1); return exp(arg(0));
    case ExprOp::Log: arity(1); return log(arg(0));
    case ExprOp::Power: arity(1); return pow(arg(0), parse_rational(j.at("exponent").get<std::string>()));
  }
  throw std::invalid_argument("unreachable expression node");
}

}  // namespace crode
