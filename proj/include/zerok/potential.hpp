#ifndef ZEROK_POTENTIAL_HPP
#define ZEROK_POTENTIAL_HPP

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zerok/ratfunc.hpp"

namespace zerok {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class NotHomogeneous : public std::runtime_error {
 public:
  NotHomogeneous(int degree_a, int degree_b)
      : std::runtime_error("not homogeneous: monomial degrees " + std::to_string(degree_a) + " and " +
                           std::to_string(degree_b) + " disagree"),
        degree_a_(degree_a),
        degree_b_(degree_b) {}
  int degree_a() const { return degree_a_; }
  int degree_b() const { return degree_b_; }

 private:
  int degree_a_, degree_b_;
};

namespace detail {

// expr  := term (('+'|'-') term)*
// term  := unary (('*'|'/') unary)*
// unary := ('+'|'-') unary | power
// power := primary ('^' ['+'|'-'] INT | '^' '(' ['-'] INT ')')?
// primary := NUMBER | IDENT | 'i' | '(' expr ')'
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError("syntax error: " + msg, pos_); }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::size_t n() const { return vars_.size(); }

  RatFunc expr() {
    RatFunc acc = term();
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }
  RatFunc term() {
    RatFunc acc = unary();
    while (true) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        RatFunc d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc /= d;
      } else {
        return acc;
      }
    }
  }
  RatFunc unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  RatFunc power() {
    RatFunc base = primary();
    if (!accept('^')) return base;
    bool paren = accept('(');
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (pos_ - start > 6) fail("exponent too large");
    int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (paren && !accept(')')) fail("expected ')'");
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '^') fail("chained exponents are ambiguous; use parentheses");
    if (neg && base.is_zero()) throw ParseError("negative power of zero", start);
    return base.pow(neg ? -e : e);
  }
  RatFunc primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string digits(s_.substr(start, pos_ - start));
      Rational value(digits);
      if (pos_ < s_.size() && s_[pos_] == '.') {
        ++pos_;
        std::size_t fs = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string frac(s_.substr(fs, pos_ - fs));
        if (!frac.empty()) {
          Integer scale = 1;
          for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
          value = make_rational(Integer(digits + frac), scale);
        }
      }
      return RatFunc::constant(n(), GaussianRational(value));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      for (std::size_t k = 0; k < vars_.size(); ++k)
        if (vars_[k] == name) return RatFunc::variable(n(), k);
      if (name == "i") return RatFunc::constant(n(), GaussianRational::i());
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an arithmetic expression over vars into an exact rational function.
/// The identifier `i` is the imaginary unit.
inline RatFunc parse_expression(std::string_view text, const std::vector<std::string>& vars) {
  for (const auto& v : vars)
    if (v == "i") throw ParseError("'i' is reserved for the imaginary unit", 0);
  return detail::ExpressionParser(text, vars).parse();
}

/// Splits "q1,q2, q3" into identifiers.
inline std::vector<std::string> split_vars(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (cur.empty()) throw ParseError("empty variable name", out.size());
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

/// Homogeneous rational potential V(q) of degree k in n >= 2 variables.
struct Potential {
  RatFunc expr;
  int degree = 0;
  std::vector<std::string> varnames;

  std::size_t nvars() const { return varnames.size(); }
  std::string str() const { return expr.str(varnames); }
};

/// Builds a Potential, checking homogeneity exactly. The zero potential has every
/// degree; it is assigned degree 0.
inline Potential make_potential(RatFunc expr, std::vector<std::string> varnames) {
  if (varnames.size() < 2) throw std::invalid_argument("a potential needs at least two variables");
  if (expr.nvars() != varnames.size()) throw std::invalid_argument("potential arity mismatch");
  if (expr.is_zero()) return {std::move(expr), 0, std::move(varnames)};
  auto k = homogeneous_degree(expr);
  if (!k) {
    for (const MultiPoly* p : {&expr.num(), &expr.den()}) {
      if (!p->is_homogeneous())
        throw NotHomogeneous(zerok::total_degree(p->terms().begin()->first),
                             zerok::total_degree(p->terms().rbegin()->first));
    }
    throw NotHomogeneous(expr.num().total_degree(), expr.den().total_degree());
  }
  return {std::move(expr), *k, std::move(varnames)};
}

inline Potential parse_potential(std::string_view text, const std::vector<std::string>& vars) {
  return make_potential(parse_expression(text, vars), vars);
}

using GradientVec = std::vector<RatFunc>;

/// n x n matrix of second partials, row-major.
struct HessianFunc {
  std::size_t n = 0;
  std::vector<RatFunc> entries;
  const RatFunc& operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

inline GradientVec gradient(const Potential& v) {
  GradientVec g;
  for (std::size_t i = 0; i < v.nvars(); ++i) g.push_back(v.expr.derivative(i));
  return g;
}

inline HessianFunc hessian(const Potential& v) {
  const std::size_t n = v.nvars();
  GradientVec g = gradient(v);
  HessianFunc h{n, std::vector<RatFunc>(n * n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h.entries[i * n + j] = g[j].derivative(i);
  return h;
}

/// v(z) := V(1, z) as a univariate rational function in z.
inline RatFunc restrict_projective(const Potential& v) {
  if (v.nvars() != 2) throw std::invalid_argument("projective restriction is only supported for two variables");
  return v.expr.compose({RatFunc::constant(1, 1), RatFunc::variable(1, 0)});
}

/// One line of a corpus file: `name ; vars ; expression`.
struct CorpusEntry {
  std::string name;
  std::vector<std::string> vars;
  std::string expression;
  std::size_t line = 0;
};

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<CorpusEntry> read_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto a = t.find(';');
    auto b = a == std::string::npos ? a : t.find(';', a + 1);
    if (b == std::string::npos)
      throw ParseError("corpus line " + std::to_string(lineno) + ": expected 'name ; vars ; expression'", 0);
    CorpusEntry e;
    e.name = trim(std::string_view(t).substr(0, a));
    e.vars = split_vars(trim(std::string_view(t).substr(a + 1, b - a - 1)));
    e.expression = trim(std::string_view(t).substr(b + 1));
    e.line = lineno;
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<CorpusEntry> read_corpus_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open corpus file " + path);
  return read_corpus(f);
}

}  // namespace zerok

#endif
