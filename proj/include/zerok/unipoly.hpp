#ifndef ZEROK_UNIPOLY_HPP
#define ZEROK_UNIPOLY_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zerok/gaussian_rational.hpp"
#include "zerok/multipoly.hpp"

namespace zerok {

/// Dense univariate polynomial over Q(i), ascending coefficients.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }
  explicit UniPoly(long c) : c_{GaussianRational(c)} { trim(); }
  UniPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static UniPoly constant(const GaussianRational& v) { return UniPoly(std::vector<GaussianRational>{v}); }
  static UniPoly x() { return UniPoly({0, 1}); }
  /// c * x^n
  static UniPoly monomial(std::size_t n, const GaussianRational& c) {
    std::vector<GaussianRational> v(n + 1);
    v[n] = c;
    return UniPoly(std::move(v));
  }
  /// Monic polynomial with the given roots.
  static UniPoly from_roots(const std::vector<GaussianRational>& roots) {
    UniPoly p = constant(1);
    for (const auto& r : roots) p *= UniPoly(std::vector<GaussianRational>{-r, 1});
    return p;
  }

  const std::vector<GaussianRational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  GaussianRational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : GaussianRational(0); }
  const GaussianRational& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  UniPoly& operator*=(const GaussianRational& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussianRational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r));
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(UniPoly a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend UniPoly operator*(UniPoly a, const GaussianRational& s) { return a *= s; }
  friend UniPoly operator*(const GaussianRational& s, UniPoly a) { return a *= s; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  UniPoly pow(unsigned e) const {
    UniPoly result = constant(1), base = *this;
    while (e > 0) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<GaussianRational> r(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * GaussianRational(static_cast<long>(k));
    return UniPoly(std::move(r));
  }

  GaussianRational operator()(const GaussianRational& x) const {
    GaussianRational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  std::complex<double> operator()(std::complex<double> x) const {
    std::complex<double> acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_complex();
    return acc;
  }

  /// p(q(x))
  UniPoly compose(const UniPoly& inner) const {
    UniPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
    return acc;
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
  }

  std::string str(const std::string& var = "x") const {
    std::vector<GaussianRational> cs = c_;
    MultiPoly m(1);
    for (std::size_t k = 0; k < cs.size(); ++k) m.add_term({static_cast<int>(k)}, cs[k]);
    return m.str({var});
  }

  MultiPoly to_multipoly(std::size_t nvars = 1, std::size_t var = 0) const {
    MultiPoly m(nvars);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      Exponents e(nvars, 0);
      e[var] = static_cast<int>(k);
      m.add_term(std::move(e), c_[k]);
    }
    return m;
  }

  /// Univariate view of a polynomial that involves only variable var.
  static UniPoly from_multipoly(const MultiPoly& m, std::size_t var = 0) {
    std::vector<GaussianRational> cs;
    for (const auto& [e, c] : m.terms()) {
      for (std::size_t k = 0; k < e.size(); ++k)
        if (k != var && e[k] != 0) throw std::invalid_argument("polynomial involves other variables");
      if (e[var] < 0) throw std::invalid_argument("negative exponent in univariate view");
      auto d = static_cast<std::size_t>(e[var]);
      if (cs.size() <= d) cs.resize(d + 1);
      cs[d] += c;
    }
    return UniPoly(std::move(cs));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<GaussianRational> c_;
};

inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<GaussianRational> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UniPoly(), a};
  std::vector<GaussianRational> q(static_cast<std::size_t>(a.degree() - db + 1));
  GaussianRational inv = b.leading().inverse();
  for (int k = a.degree(); k >= db; --k) {
    GaussianRational t = r[static_cast<std::size_t>(k)] * inv;
    q[static_cast<std::size_t>(k - db)] = t;
    if (t.is_zero()) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= t * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

/// Monic gcd (zero only when both inputs are zero).
inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Product of the distinct irreducible factors (monic).
inline UniPoly squarefree_part(const UniPoly& f) {
  if (f.degree() <= 0) return f.is_zero() ? f : UniPoly::constant(1);
  return divmod(f, gcd(f, f.derivative())).first.monic();
}

inline bool is_squarefree(const UniPoly& f) { return gcd(f, f.derivative()).degree() <= 0; }

/// Yun's algorithm: result[m-1] collects the factors of multiplicity m.
inline std::vector<UniPoly> squarefree_decomposition(const UniPoly& f) {
  std::vector<UniPoly> out;
  if (f.degree() <= 0) return out;
  UniPoly a = f.monic();
  UniPoly b = a.derivative();
  UniPoly c = gcd(a, b);
  UniPoly w = divmod(a, c).first;
  UniPoly y = divmod(b, c).first;
  UniPoly z = y - w.derivative();
  while (w.degree() > 0) {
    UniPoly g = gcd(w, z);
    out.push_back(g);
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    z = y - w.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

}  // namespace zerok

#endif
