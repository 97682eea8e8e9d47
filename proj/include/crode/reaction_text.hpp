#pragma once

// Line-oriented reaction notation:
//   complex ("->" | "<->") complex "@" rate ["@" rate]
//   complex = "0" | term ("+" term)*,  term = [integer] species
// "#" starts a comment. Species register in order of first appearance.

#include "errors.hpp"
#include "kinetics.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace crode {

namespace detail {

enum class Tok { Ident, Number, Plus, Minus, Arrow, BiArrow, At, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> lex_reaction_line(const std::string& line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = line.size();
  auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < n) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < n && is_ident(line[j])) ++j;
      out.push_back({Tok::Ident, line.substr(i, j - i), col});
      i = j;
    } else if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(line[i + 1]))) {
      std::size_t j = i;
      while (j < n && is_digit(line[j])) ++j;
      if (j < n && line[j] == '.') {
        ++j;
        while (j < n && is_digit(line[j])) ++j;
      }
      // exponent, but not the start of an identifier such as "2e" in "2eX"
      if (j + 1 < n && (line[j] == 'e' || line[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < n && (line[k] == '+' || line[k] == '-')) ++k;
        if (k < n && is_digit(line[k])) {
          while (k < n && is_digit(line[k])) ++k;
          if (k >= n || !is_ident(line[k])) j = k;
        }
      }
      if (j + 1 < n && line[j] == '/' && is_digit(line[j + 1])) {
        ++j;
        while (j < n && is_digit(line[j])) ++j;
      }
      out.push_back({Tok::Number, line.substr(i, j - i), col});
      i = j;
    } else if (c == '+') {
      out.push_back({Tok::Plus, "+", col});
      ++i;
    } else if (c == '-' && i + 1 < n && line[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", col});
      i += 2;
    } else if (c == '<' && i + 2 < n && line[i + 1] == '-' && line[i + 2] == '>') {
      out.push_back({Tok::BiArrow, "<->", col});
      i += 3;
    } else if (c == '-') {
      out.push_back({Tok::Minus, "-", col});
      ++i;
    } else if (c == '@') {
      out.push_back({Tok::At, "@", col});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_no, col);
    }
  }
  out.push_back({Tok::End, "", n + 1});
  return out;
}

using SpeciesCounts = std::map<std::string, unsigned>;

class LineParser {
 public:
  LineParser(std::vector<Token> toks, std::size_t line_no, std::vector<std::string>& species)
      : toks_(std::move(toks)), line_(line_no), species_(species) {}

  struct Parsed {
    SpeciesCounts lhs, rhs;
    bool reversible = false;
    Rational forward, backward;
  };

  Parsed parse() {
    Parsed p;
    p.lhs = complex();
    if (peek().kind == Tok::Arrow) {
      next();
    } else if (peek().kind == Tok::BiArrow) {
      next();
      p.reversible = true;
    } else {
      fail("expected '->' or '<->'");
    }
    p.rhs = complex();
    expect(Tok::At, "expected '@' before rate");
    p.forward = rate();
    if (peek().kind == Tok::At) {
      next();
      if (!p.reversible) fail("irreversible reaction takes a single rate");
      p.backward = rate();
    } else if (p.reversible) {
      fail("reversible reaction needs two rates");
    }
    if (peek().kind != Tok::End) fail("unexpected trailing input '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, peek().column); }
  void expect(Tok k, const char* msg) {
    if (peek().kind != k) fail(msg);
    next();
  }

  SpeciesCounts complex() {
    SpeciesCounts out;
    if (peek().kind == Tok::Number && peek().text == "0" && toks_[pos_ + 1].kind != Tok::Ident) {
      next();
      return out;
    }
    for (;;) {
      unsigned coeff = 1;
      if (peek().kind == Tok::Number) {
        const Token& t = peek();
        if (!std::all_of(t.text.begin(), t.text.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
          fail("stoichiometric coefficient must be a nonnegative integer");
        if (t.text.size() > 6) fail("stoichiometric coefficient too large");
        coeff = static_cast<unsigned>(std::stoul(t.text));
        if (coeff == 0) fail("stoichiometric coefficient must be positive");
        next();
      }
      if (peek().kind != Tok::Ident) fail("expected a species name or '0'");
      const std::string name = next().text;
      if (std::find(species_.begin(), species_.end(), name) == species_.end()) species_.push_back(name);
      out[name] += coeff;
      if (peek().kind != Tok::Plus) break;
      next();
    }
    return out;
  }

  Rational rate() {
    bool negative = false;
    if (peek().kind == Tok::Minus) {
      negative = true;
      next();
    }
    if (peek().kind != Tok::Number) fail("expected a rate constant");
    const Token tok = next();
    Rational k;
    try {
      k = parse_rational(tok.text);
    } catch (const std::invalid_argument&) {
      throw ParseError("malformed rate '" + tok.text + "'", line_, tok.column);
    }
    if (negative) k = -k;
    if (k <= 0) throw ParseError("rate must be positive", line_, tok.column);
    return k;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::vector<std::string>& species_;
};

}  // namespace detail

inline ReactionNetwork parse_reactions(const std::string& text) {
  struct Pending {
    detail::SpeciesCounts from, to;
    Rational rate;
  };
  std::vector<std::string> species;
  std::vector<Pending> pending;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto toks = detail::lex_reaction_line(line, line_no);
    if (toks.size() == 1) continue;  // blank or comment
    auto p = detail::LineParser(std::move(toks), line_no, species).parse();
    pending.push_back({p.lhs, p.rhs, p.forward});
    if (p.reversible) pending.push_back({p.rhs, p.lhs, p.backward});
  }

  ReactionNetwork net;
  net.species = species;
  auto vec = [&](const detail::SpeciesCounts& counts) {
    ExponentVector e(species.size(), 0);
    for (std::size_t k = 0; k < species.size(); ++k)
      if (auto it = counts.find(species[k]); it != counts.end()) e[k] = it->second;
    return e;
  };
  for (const auto& p : pending) net.reactions.push_back({vec(p.from), vec(p.to), p.rate});
  return net;
}

/// "2 X + Y" style; "0" for the empty complex.
inline std::string format_complex(const ExponentVector& c, const std::vector<std::string>& species,
                                  bool compact = false) {
  std::string out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    if (!out.empty()) out += compact ? "+" : " + ";
    if (c[k] != 1) out += std::to_string(c[k]) + (compact ? "" : " ");
    out += species[k];
  }
  return out.empty() ? "0" : out;
}

/// Canonical text, one irreversible reaction per line.
inline std::string format_reactions(const ReactionNetwork& net) {
  std::string out;
  for (const auto& r : net.reactions)
    out += format_complex(r.reactant, net.species) + " -> " + format_complex(r.product, net.species) + " @ " +
           to_string(r.rate) + "\n";
  return out;
}

/// FHJ graph in DOT. Vertices and edges are sorted so output is deterministic.
inline std::string emit_fhj_dot(const ReactionNetwork& net) {
  std::set<std::string> vertices;
  std::set<std::tuple<std::string, std::string, std::string>> edges;
  for (const auto& r : net.reactions) {
    const auto from = format_complex(r.reactant, net.species, true);
    const auto to = format_complex(r.product, net.species, true);
    vertices.insert(from);
    vertices.insert(to);
    edges.emplace(from, to, to_string(r.rate));
  }
  std::string out = "digraph FHJ {\n  rankdir=LR;\n";
  for (const auto& v : vertices) out += "  \"" + v + "\";\n";
  for (const auto& [from, to, k] : edges) out += "  \"" + from + "\" -> \"" + to + "\" [label=\"" + k + "\"];\n";
  out += "}\n";
  return out;
}

}  // namespace crode
