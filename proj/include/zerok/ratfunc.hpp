#ifndef ZEROK_RATFUNC_HPP
#define ZEROK_RATFUNC_HPP

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zerok/poly_gcd.hpp"

namespace zerok {

/// Rational function num/den over Q(i) in canonical form:
/// gcd(num, den) = 1 and den has graded-lex leading coefficient 1.
/// Two canonical RatFuncs are equal iff they are the same function.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(MultiPoly::constant(0, 1)) {}
  explicit RatFunc(std::size_t nvars) : num_(nvars), den_(MultiPoly::constant(nvars, 1)) {}
  RatFunc(MultiPoly num)  // NOLINT(implicit)
      : num_(std::move(num)), den_(MultiPoly::constant(num_.nvars(), 1)) {
    normalize();
  }
  RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.nvars() != den_.nvars()) throw std::invalid_argument("RatFunc arity mismatch");
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    normalize();
  }

  static RatFunc constant(std::size_t nvars, const GaussianRational& c) {
    return RatFunc(MultiPoly::constant(nvars, c));
  }
  static RatFunc variable(std::size_t nvars, std::size_t i) { return RatFunc(MultiPoly::variable(nvars, i)); }

  std::size_t nvars() const { return num_.nvars(); }
  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return add(a, b, false); }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return add(a, b, true); }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    // cross-cancel first to keep intermediate sizes small
    MultiPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    return {divide_exact(a.num_, g1) * divide_exact(b.num_, g2),
            divide_exact(a.den_, g2) * divide_exact(b.den_, g1)};
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("rational function division by zero");
    return a * RatFunc(b.den_, b.num_);
  }
  friend RatFunc operator*(const GaussianRational& s, const RatFunc& a) {
    if (s.is_zero()) return RatFunc(a.nvars());
    RatFunc r = a;
    r.num_ *= s;
    return r;
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc pow(int e) const {
    if (e < 0) {
      if (is_zero()) throw std::domain_error("negative power of zero");
      return RatFunc(den_, num_).pow(-e);
    }
    RatFunc r;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    r.den_ = den_.pow(static_cast<unsigned>(e));
    r.normalize_scale();
    return r;
  }

  /// Quotient-rule partial derivative.
  RatFunc derivative(std::size_t i) const {
    if (i >= nvars()) throw std::out_of_range("derivative variable out of range");
    MultiPoly dn = num_.derivative(i);
    MultiPoly dd = den_.derivative(i);
    if (dd.is_zero()) return {dn, den_};
    return {dn * den_ - num_ * dd, den_ * den_};
  }

  GaussianRational evaluate(const std::vector<GaussianRational>& x) const {
    GaussianRational d = den_.evaluate(x);
    if (d.is_zero()) throw std::domain_error("rational function evaluated on its singular locus");
    return num_.evaluate(x) / d;
  }
  std::complex<double> evaluate(const std::vector<std::complex<double>>& x) const {
    std::complex<double> d = den_.evaluate(x);
    if (d == std::complex<double>(0.0, 0.0)) throw std::domain_error("rational function evaluated on its singular locus");
    return num_.evaluate(x) / d;
  }

  /// Substitutes rational-function images for the variables.
  RatFunc compose(const std::vector<RatFunc>& images) const {
    if (images.size() != nvars()) throw std::invalid_argument("compose arity mismatch");
    std::size_t target = images.empty() ? 0 : images[0].nvars();
    auto apply = [&](const MultiPoly& p) {
      RatFunc acc(target);
      for (const auto& [e, c] : p.terms()) {
        RatFunc t = RatFunc::constant(target, c);
        for (std::size_t k = 0; k < e.size(); ++k)
          if (e[k] != 0) t *= images[k].pow(e[k]);
        acc += t;
      }
      return acc;
    };
    return apply(num_) / apply(den_);
  }

  std::string str(const std::vector<std::string>& names) const {
    if (den_.is_constant()) return num_.str(names);
    std::string n = num_.size() > 1 ? "(" + num_.str(names) + ")" : num_.str(names);
    std::string d = den_.size() > 1 || !den_.leading_coefficient().is_one() ? "(" + den_.str(names) + ")"
                                                                           : den_.str(names);
    return n + "/" + d;
  }

 private:
  // a +- b over the lcm of the denominators
  static RatFunc add(const RatFunc& a, const RatFunc& b, bool subtract) {
    if (a.den_ == b.den_) return {subtract ? a.num_ - b.num_ : a.num_ + b.num_, a.den_};
    MultiPoly g = gcd(a.den_, b.den_);
    MultiPoly ad = divide_exact(a.den_, g), bd = divide_exact(b.den_, g);
    MultiPoly left = a.num_ * bd, right = b.num_ * ad;
    return {subtract ? left - right : left + right, a.den_ * bd};
  }

  void normalize() {
    if (num_.has_negative_exponents() || den_.has_negative_exponents()) {
      Exponents shift(num_.nvars(), 0);
      for (std::size_t k = 0; k < shift.size(); ++k)
        shift[k] = -std::min({0, num_.min_degree_in(k), den_.min_degree_in(k)});
      num_ = num_.shifted(shift);
      den_ = den_.shifted(shift);
    }
    if (num_.is_zero()) {
      den_ = MultiPoly::constant(num_.nvars(), 1);
      return;
    }
    if (!den_.is_constant()) {
      MultiPoly g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = divide_exact(num_, g);
        den_ = divide_exact(den_, g);
      }
    }
    normalize_scale();
  }
  void normalize_scale() {
    const GaussianRational& lc = den_.leading_coefficient();
    if (!lc.is_one()) {
      GaussianRational inv = lc.inverse();
      num_ *= inv;
      den_ *= inv;
    }
  }

  MultiPoly num_;
  MultiPoly den_;
};

/// Degree k of a homogeneous rational function, verified by the exact Euler
/// identity sum_{i in vars} x_i df/dx_i = k f. Returns nullopt when f is not
/// homogeneous in the given variables (all variables when vars is empty).
inline std::optional<int> homogeneous_degree(const RatFunc& f, const std::vector<std::size_t>& vars = {}) {
  if (f.is_zero()) throw std::domain_error("homogeneous degree of zero is undefined");
  std::vector<std::size_t> vs = vars;
  if (vs.empty())
    for (std::size_t k = 0; k < f.nvars(); ++k) vs.push_back(k);
  auto partial_degree = [&](const MultiPoly& p) {
    int d = 0;
    const auto& lead = p.terms().rbegin()->first;
    for (std::size_t v : vs) d += lead[v];
    return d;
  };
  int k = partial_degree(f.num()) - partial_degree(f.den());
  RatFunc euler(f.nvars());
  for (std::size_t v : vs) euler += RatFunc::variable(f.nvars(), v) * f.derivative(v);
  if (euler == GaussianRational(k) * f) return k;
  return std::nullopt;
}

/// Sum_i x_i df/dx_i.
inline RatFunc euler_operator(const RatFunc& f) {
  RatFunc e(f.nvars());
  for (std::size_t v = 0; v < f.nvars(); ++v) e += RatFunc::variable(f.nvars(), v) * f.derivative(v);
  return e;
}

}  // namespace zerok

#endif
