#ifndef ZEROK_SCAN_HPP
#define ZEROK_SCAN_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zerok/linalg.hpp"
#include "zerok/obstruction.hpp"
#include "zerok/potential.hpp"
#include "zerok/roots.hpp"

namespace zerok {

/// A potential with symbolic parameters written $a, $b, ...
struct Family {
  std::string text;
  std::vector<std::string> vars;
  std::vector<std::string> params;  // without the '$', in order of first appearance
  RatFunc expr;                     // in vars followed by params
  int degree = 0;

  std::size_t nvars() const { return vars.size(); }
};

class FamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string param_ident(const std::string& name) { return "zk_param_" + name; }

}  // namespace detail

/// Parses a family and checks that it is homogeneous of the declared degree in vars.
inline Family parse_family(const std::string& text, const std::vector<std::string>& vars, int degree) {
  Family f;
  f.text = text;
  f.vars = vars;
  f.degree = degree;
  std::string rewritten;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '$') {
      rewritten += text[i];
      continue;
    }
    std::size_t j = i + 1;
    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
    std::string name = text.substr(i + 1, j - i - 1);
    if (name.empty()) throw ParseError("'$' must be followed by a parameter name", i);
    if (std::find(f.params.begin(), f.params.end(), name) == f.params.end()) f.params.push_back(name);
    rewritten += detail::param_ident(name);
    i = j - 1;
  }
  std::vector<std::string> all = vars;
  for (const auto& p : f.params) all.push_back(detail::param_ident(p));
  f.expr = parse_expression(rewritten, all);
  if (f.expr.is_zero()) throw FamilyError("the family is identically zero");
  std::vector<std::size_t> qidx;
  for (std::size_t i = 0; i < vars.size(); ++i) qidx.push_back(i);
  auto k = homogeneous_degree(f.expr, qidx);
  if (!k) throw FamilyError("the family is not homogeneous in " + std::to_string(vars.size()) + " variables");
  if (*k != degree)
    throw FamilyError("the family is homogeneous of degree " + std::to_string(*k) + ", not the declared " +
                      std::to_string(degree));
  return f;
}

/// Whether two parameter values coincide (the family requires distinct values).
inline bool has_equal_values(const std::vector<GaussianRational>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i] == values[j]) return true;
  return false;
}

inline Potential instantiate(const Family& f, const std::vector<GaussianRational>& values) {
  if (values.size() != f.params.size()) throw std::invalid_argument("one value per parameter is required");
  const std::size_t n = f.nvars();
  std::vector<RatFunc> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(RatFunc::variable(n, i));
  for (const auto& v : values) images.push_back(RatFunc::constant(n, v));
  return make_potential(f.expr.compose(images), f.vars);
}

struct GridEntry {
  std::vector<GaussianRational> values;
  bool rejected = false;  // equal parameter values
  Status status = Status::NotApplicable;
  std::string note;
};

/// Analyzes every point of the Cartesian grid values^m; points with equal
/// parameter values are rejected.
inline std::vector<GridEntry> scan_grid(const Family& f, const std::vector<GaussianRational>& values,
                                        const AnalyzeOptions& opt = {}) {
  std::vector<std::vector<GaussianRational>> points{{}};
  for (std::size_t p = 0; p < f.params.size(); ++p) {
    std::vector<std::vector<GaussianRational>> next;
    for (const auto& prefix : points)
      for (const auto& v : values) {
        auto e = prefix;
        e.push_back(v);
        next.push_back(std::move(e));
      }
    points = std::move(next);
  }
  std::vector<GridEntry> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    GridEntry& g = out[i];
    g.values = points[i];
    if (has_equal_values(g.values)) {
      g.rejected = true;
      g.note = "equal parameter values";
      return;
    }
    try {
      g.status = analyze(instantiate(f, g.values), opt).status;
    } catch (const std::exception& e) {
      g.rejected = true;
      g.note = e.what();
    }
  });
  return out;
}

struct ConstraintSolution {
  std::vector<GaussianRational> values;
  std::string potential;  // reconstructed, canonical form
  Status status = Status::NotApplicable;
};

struct ConstraintResult {
  std::vector<std::string> equations;  // semi-simplicity conditions, one per line
  std::vector<ConstraintSolution> solutions;
  std::vector<std::string> discarded;  // solutions with equal values or no Darboux point
  std::vector<std::string> invariants;  // e.g. "a+b = 0" when shared by all solutions
  std::optional<std::string> eliminant;  // when some solutions lie outside Q(i)
  bool positive_dimensional = false;
  std::string note;
};

namespace detail {

/// Polynomial in two variables as coefficient lists in variable 1 over Q(i)[variable 0].
inline std::vector<UniPoly> nested(const MultiPoly& p) {
  int d = std::max(0, p.degree_in(1));
  std::vector<std::vector<GaussianRational>> c(static_cast<std::size_t>(d) + 1);
  for (const auto& [e, v] : p.terms()) {
    auto& row = c[static_cast<std::size_t>(e[1])];
    if (row.size() <= static_cast<std::size_t>(e[0])) row.resize(static_cast<std::size_t>(e[0]) + 1);
    row[static_cast<std::size_t>(e[0])] = v;
  }
  std::vector<UniPoly> out;
  for (auto& row : c) out.emplace_back(std::move(row));
  return out;
}

inline UniPoly to_univariate(const MultiPoly& p, std::size_t var) {
  std::vector<GaussianRational> c;
  for (const auto& [e, v] : p.terms()) {
    auto k = static_cast<std::size_t>(e[var]);
    if (c.size() <= k) c.resize(k + 1);
    c[k] = v;
  }
  return UniPoly(std::move(c));
}

inline MultiPoly substitute(const MultiPoly& p, std::size_t var, const GaussianRational& value) {
  MultiPoly r(p.nvars());
  for (const auto& [e, v] : p.terms()) {
    Exponents f = e;
    f[var] = 0;
    r.add_term(std::move(f), v * value.pow(e[var]));
  }
  return r;
}

inline UniPoly gcd_all(const std::vector<UniPoly>& ps) {
  UniPoly g;
  for (const auto& p : ps) g = gcd(g, p);
  return g;
}

inline std::vector<GaussianRational> exact_roots(const UniPoly& f, UniPoly* rest = nullptr) {
  std::vector<GaussianRational> out;
  UniPoly r = f;
  if (f.degree() > 0)
    for (const auto& root : gaussian_rational_roots(f)) {
      out.push_back(root.value);
      strip_root(r, root.value);
    }
  if (rest) *rest = r;
  return out;
}

}  // namespace detail

/// Exact solution set of the semi-simplicity conditions at the two Darboux points
/// z* = +-i of a two-variable degree-0 family with one or two parameters.
///
/// V''(d) is proportional to V''(1, z*), and its spectrum is a double eigenvalue, so
/// V''(d) is semi-simple iff V''(1, z*) - (tr/2) I = 0. The numerators of these
/// entries are polynomials in the parameters; they are solved by resultants.
inline ConstraintResult constraint_solve(const Family& f, const AnalyzeOptions& opt = {}) {
  if (f.nvars() != 2 || f.degree != 0) throw FamilyError("constraint-solve needs a two-variable degree-0 family");
  const std::size_t m = f.params.size();
  if (m < 1 || m > 2) throw FamilyError("constraint-solve supports one or two parameters");
  ConstraintResult out;

  // polynomial ring of the parameters, padded to two variables
  std::vector<MultiPoly> eqs;
  std::vector<std::string> names = f.params;
  if (m == 1) names.push_back("unused");
  for (const GaussianRational& z : {GaussianRational::i(), -GaussianRational::i()}) {
    std::vector<RatFunc> images{RatFunc::constant(2, 1), RatFunc::constant(2, z)};
    for (std::size_t p = 0; p < m; ++p) images.push_back(RatFunc::variable(2, p));
    RatFunc h[2][2];
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) h[i][j] = f.expr.derivative(i).derivative(j).compose(images);
    RatFunc tr = h[0][0] + h[1][1];
    RatFunc disc = tr * tr - GaussianRational(4) * (h[0][0] * h[1][1] - h[0][1] * h[1][0]);
    if (!disc.is_zero()) throw FamilyError("the Hessian spectrum at z* = " + z.str() + " is not a double eigenvalue");
    for (const RatFunc& e : {h[0][0] - h[1][1], h[0][1]}) {
      if (e.is_zero()) continue;
      eqs.push_back(e.num());
      out.equations.push_back(e.num().str(names) + " = 0   (z* = " + z.str() + ")");
    }
  }

  auto finish = [&](const std::vector<GaussianRational>& values) {
    std::string label;
    for (std::size_t p = 0; p < m; ++p) label += (p ? ", " : "") + f.params[p] + " = " + values[p].str();
    if (has_equal_values(values)) {
      out.discarded.push_back(label + ": equal parameter values");
      return;
    }
    Potential v = instantiate(f, values);
    Analysis a = analyze(v, opt);
    if (a.points.size() < 2) {
      out.discarded.push_back(label + ": fewer than two Darboux points");
      return;
    }
    out.solutions.push_back({values, v.str(), a.status});
  };

  if (eqs.empty()) {
    out.positive_dimensional = true;
    out.note = "every parameter value satisfies the conditions";
    return out;
  }
  if (m == 1) {
    std::vector<UniPoly> us;
    for (const auto& e : eqs) us.push_back(detail::to_univariate(e, 0));
    UniPoly g = detail::gcd_all(us), rest;
    if (g.degree() <= 0) return out;
    for (const auto& r : detail::exact_roots(g, &rest)) finish({r});
    if (rest.degree() > 0) out.eliminant = rest.str();
    return out;
  }

  // eliminate the second parameter
  std::vector<UniPoly> univariate;
  std::vector<MultiPoly> with_b;
  for (const auto& e : eqs)
    if (e.degree_in(1) > 0)
      with_b.push_back(e);
    else
      univariate.push_back(detail::to_univariate(e, 0));
  for (std::size_t i = 0; i < with_b.size(); ++i)
    for (std::size_t j = i + 1; j < with_b.size(); ++j) {
      UniPoly r = resultant(detail::nested(with_b[i]), detail::nested(with_b[j]));
      if (!r.is_zero()) univariate.push_back(r);
    }
  UniPoly g = detail::gcd_all(univariate);
  if (univariate.empty() || g.is_zero()) {
    out.positive_dimensional = true;
    out.note = "the conditions define a curve in parameter space";
    return out;
  }
  if (g.degree() <= 0) return out;
  UniPoly rest;
  for (const auto& a : detail::exact_roots(g, &rest)) {
    std::vector<UniPoly> in_b;
    for (const auto& e : eqs) in_b.push_back(detail::to_univariate(detail::substitute(e, 0, a), 1));
    UniPoly gb = detail::gcd_all(in_b), rest_b;
    if (gb.is_zero()) {
      out.positive_dimensional = true;
      out.note = f.params[0] + " = " + a.str() + " satisfies the conditions for every " + f.params[1];
      continue;
    }
    for (const auto& b : detail::exact_roots(gb, &rest_b)) finish({a, b});
    if (rest_b.degree() > 0) out.note += f.params[0] + " = " + a.str() + ": values of " + f.params[1] +
                                         " outside Q(i) are roots of " + rest_b.str() + "; ";
  }
  if (rest.degree() > 0) out.eliminant = rest.str();

  // symmetric functions shared by every solution
  if (!out.solutions.empty()) {
    const std::string& a = f.params[0];
    const std::string& b = f.params[1];
    auto shared = [&](auto fn) {
      GaussianRational first = fn(out.solutions[0].values);
      for (const auto& s : out.solutions)
        if (fn(s.values) != first) return std::optional<GaussianRational>{};
      return std::optional<GaussianRational>{first};
    };
    if (auto s = shared([](const auto& v) { return v[0] + v[1]; })) out.invariants.push_back(a + "+" + b + " = " + s->str());
    if (auto p = shared([](const auto& v) { return v[0] * v[1]; })) out.invariants.push_back(a + b + " = " + p->str());
  }
  return out;
}

}  // namespace zerok

#endif
