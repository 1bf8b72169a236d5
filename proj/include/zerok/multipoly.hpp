#ifndef ZEROK_MULTIPOLY_HPP
#define ZEROK_MULTIPOLY_HPP

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "zerok/gaussian_rational.hpp"

namespace zerok {

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Graded lexicographic order: total degree first, then lex with variable 0 most significant.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

/// Sparse multivariate (Laurent) polynomial over Q(i).
///
/// Terms are kept in ascending graded-lex order; the leading term is the last
/// one. Zero coefficients are never stored. Exponents may be negative, which
/// fi-search uses for Laurent coefficient boxes; gcd and division require
/// genuine polynomials.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, GaussianRational, GrlexLess>;

  MultiPoly() : nvars_(0) {}
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const GaussianRational& c) {
    MultiPoly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
  }
  static MultiPoly variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw std::out_of_range("variable index out of range");
    Exponents e(nvars, 0);
    e[i] = 1;
    return monomial(std::move(e), GaussianRational(1));
  }
  static MultiPoly monomial(Exponents e, const GaussianRational& c) {
    MultiPoly p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && is_zero_exponent(terms_.begin()->first));
  }
  bool is_monomial() const { return terms_.size() == 1; }
  GaussianRational constant_term() const {
    auto it = terms_.find(Exponents(nvars_, 0));
    return it == terms_.end() ? GaussianRational(0) : it->second;
  }

  void add_term(Exponents e, const GaussianRational& c) {
    if (e.size() != nvars_) throw std::invalid_argument("exponent arity mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const Exponents& leading_exponents() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return terms_.rbegin()->first;
  }
  const GaussianRational& leading_coefficient() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return terms_.rbegin()->second;
  }

  int total_degree() const {
    if (terms_.empty()) return -1;
    return zerok::total_degree(terms_.rbegin()->first);
  }
  int degree_in(std::size_t i) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
  }
  int min_degree_in(std::size_t i) const {
    if (terms_.empty()) return 0;
    int d = terms_.begin()->first[i];
    for (const auto& [e, c] : terms_) d = std::min(d, e[i]);
    return d;
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    return zerok::total_degree(terms_.begin()->first) == zerok::total_degree(terms_.rbegin()->first);
  }
  bool has_negative_exponents() const {
    for (const auto& [e, c] : terms_)
      for (int x : e)
        if (x < 0) return true;
    return false;
  }
  bool involves(std::size_t i) const {
    for (const auto& [e, c] : terms_)
      if (e[i] != 0) return true;
    return false;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MultiPoly& operator*=(const GaussianRational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(MultiPoly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend MultiPoly operator*(MultiPoly a, const GaussianRational& s) { return a *= s; }
  friend MultiPoly operator*(const GaussianRational& s, MultiPoly a) { return a *= s; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_arity(b);
    MultiPoly r(a.nvars_);
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t k = 0; k < a.nvars_; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly pow(unsigned e) const {
    MultiPoly result = constant(nvars_, 1), base = *this;
    while (e > 0) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  /// Multiplies by the monomial x^shift (shift may have negative entries).
  MultiPoly shifted(const Exponents& shift) const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      for (std::size_t k = 0; k < nvars_; ++k) f[k] += shift[k];
      r.terms_.emplace(std::move(f), c);
    }
    return r;
  }

  MultiPoly derivative(std::size_t i) const {
    if (i >= nvars_) throw std::out_of_range("derivative variable out of range");
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents f = e;
      f[i] -= 1;
      r.add_term(std::move(f), c * GaussianRational(e[i]));
    }
    return r;
  }

  GaussianRational evaluate(const std::vector<GaussianRational>& x) const {
    if (x.size() != nvars_) throw std::invalid_argument("evaluation point arity mismatch");
    GaussianRational sum;
    for (const auto& [e, c] : terms_) {
      GaussianRational t = c;
      for (std::size_t k = 0; k < nvars_; ++k)
        if (e[k] != 0) {
          if (e[k] < 0 && x[k].is_zero()) throw std::domain_error("Laurent monomial evaluated at zero");
          t *= x[k].pow(e[k]);
        }
      sum += t;
    }
    return sum;
  }

  std::complex<double> evaluate(const std::vector<std::complex<double>>& x) const {
    if (x.size() != nvars_) throw std::invalid_argument("evaluation point arity mismatch");
    std::complex<double> sum = 0;
    for (const auto& [e, c] : terms_) {
      std::complex<double> t = c.to_complex();
      for (std::size_t k = 0; k < nvars_; ++k)
        if (e[k] != 0) t *= std::pow(x[k], e[k]);
      sum += t;
    }
    return sum;
  }

  /// Substitutes polynomial images for every variable; images share a target arity.
  MultiPoly compose(const std::vector<MultiPoly>& images) const {
    if (images.size() != nvars_) throw std::invalid_argument("compose arity mismatch");
    if (has_negative_exponents()) throw std::domain_error("compose requires a polynomial");
    std::size_t target = images.empty() ? 0 : images[0].nvars();
    MultiPoly r(target);
    for (const auto& [e, c] : terms_) {
      MultiPoly t = constant(target, c);
      for (std::size_t k = 0; k < nvars_; ++k)
        if (e[k] > 0) t *= images[k].pow(static_cast<unsigned>(e[k]));
      r += t;
    }
    return r;
  }

  /// Coefficients with respect to variable i: result[j] is the coefficient of x_i^j
  /// (as a polynomial of the same arity not involving x_i).
  std::vector<MultiPoly> coefficients_in(std::size_t i) const {
    std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(0, degree_in(i) + 1)), MultiPoly(nvars_));
    for (const auto& [e, c] : terms_) {
      if (e[i] < 0) throw std::domain_error("coefficients_in requires a polynomial");
      Exponents f = e;
      f[i] = 0;
      out[static_cast<std::size_t>(e[i])].add_term(std::move(f), c);
    }
    return out;
  }

  MultiPoly monic() const {
    if (is_zero()) return *this;
    return *this * leading_coefficient().inverse();
  }

  std::string str(const std::vector<std::string>& names) const;

 private:
  static bool is_zero_exponent(const Exponents& e) {
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
  }
  void check_arity(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
  }

  std::size_t nvars_;
  TermMap terms_;
};

namespace detail {

inline std::string coeff_str(const GaussianRational& c) {
  if (c.is_real() || c.re() == 0) return c.str();
  return "(" + c.str() + ")";
}

}  // namespace detail

inline std::string MultiPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t k = 0; k < nvars_; ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += k < names.size() ? names[k] : "x" + std::to_string(k + 1);
      if (e[k] != 1) mono += "^" + (e[k] < 0 ? "(" + std::to_string(e[k]) + ")" : std::to_string(e[k]));
    }
    GaussianRational coef = c;
    bool negative = c.is_real() ? c.re() < 0 : (c.re() == 0 && c.im() < 0);
    if (negative) coef = -c;
    std::string term;
    if (mono.empty())
      term = detail::coeff_str(coef);
    else if (coef.is_one())
      term = mono;
    else
      term = detail::coeff_str(coef) + "*" + mono;
    if (first)
      out += negative ? "-" + term : term;
    else
      out += (negative ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

/// Grlex division with remainder by a single divisor. Exact when b divides a.
inline std::pair<MultiPoly, MultiPoly> divide(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const std::size_t n = a.nvars();
  MultiPoly q(n), r(n), rest = a;
  const Exponents& lb = b.leading_exponents();
  GaussianRational lbinv = b.leading_coefficient().inverse();
  while (!rest.is_zero()) {
    Exponents le = rest.leading_exponents();
    GaussianRational lc = rest.leading_coefficient();
    bool divisible = true;
    Exponents d(n);
    for (std::size_t k = 0; k < n; ++k) {
      d[k] = le[k] - lb[k];
      if (d[k] < 0) divisible = false;
    }
    if (divisible) {
      MultiPoly t = MultiPoly::monomial(d, lc * lbinv);
      q += t;
      rest -= t * b;
    } else {
      MultiPoly t = MultiPoly::monomial(le, lc);
      r += t;
      rest -= t;
    }
  }
  return {q, r};
}

inline MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
  auto [q, r] = divide(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

inline bool divides(const MultiPoly& b, const MultiPoly& a) { return divide(a, b).second.is_zero(); }

}  // namespace zerok

#endif
