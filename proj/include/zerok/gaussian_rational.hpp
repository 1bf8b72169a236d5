#ifndef ZEROK_GAUSSIAN_RATIONAL_HPP
#define ZEROK_GAUSSIAN_RATIONAL_HPP

#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>

#include "zerok/rational.hpp"

namespace zerok {

/// Element re + im*i of Q(i). All arithmetic is exact.
class GaussianRational {
 public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(long re) : re_(re), im_(0) {}  // NOLINT(implicit)
  GaussianRational(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT(implicit)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_integer() const { return im_ == 0 && zerok::is_integer(re_); }
  bool is_gaussian_integer() const { return zerok::is_integer(re_) && zerok::is_integer(im_); }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(i)");
    Rational n = norm();
    return {re_ / n, -im_ / n};
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (o.im_ == 0) {
      re_ *= o.re_;
      im_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.im_ == 0) {
      if (o.re_ == 0) throw std::domain_error("division by zero in Q(i)");
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    return *this *= o.inverse();
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  /// Arbitrary total order (real part, then imaginary part); used for canonical sorting only.
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  GaussianRational pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    GaussianRational result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  /// Compact human-readable form: "3", "-1/2", "2*i", "1 - 6*i".
  std::string str() const {
    if (im_ == 0) return re_.get_str();
    std::string ims;
    Rational aim = abs(im_);
    if (aim == 1)
      ims = "i";
    else
      ims = aim.get_str() + "*i";
    if (re_ == 0) return (im_ < 0 ? "-" : "") + ims;
    return re_.get_str() + (im_ < 0 ? " - " : " + ") + ims;
  }

  /// Common denominator of re and im.
  Integer denominator_lcm() const {
    Integer l;
    mpz_lcm(l.get_mpz_t(), re_.get_den_mpz_t(), im_.get_den_mpz_t());
    return l;
  }

 private:
  Rational re_;
  Rational im_;
};

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

/// Parses strings produced by GaussianRational::str() plus plain "a", "b*i", "a+b*i".
inline GaussianRational parse_gaussian(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty Gaussian rational");
  // split at the last +/- that is not the leading sign and not after '/'
  std::size_t split = std::string::npos;
  for (std::size_t k = 1; k < s.size(); ++k)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') split = k;
  auto parse_part = [](const std::string& part, bool& imag) -> Rational {
    imag = !part.empty() && part.back() == 'i';
    if (!imag) return parse_rational(part);
    std::string body = part.substr(0, part.size() - 1);
    if (!body.empty() && body.back() == '*') body.pop_back();
    if (body.empty() || body == "+") return Rational(1);
    if (body == "-") return Rational(-1);
    return parse_rational(body);
  };
  bool imag_a = false, imag_b = false;
  if (split == std::string::npos) {
    Rational v = parse_part(s, imag_a);
    return imag_a ? GaussianRational(Rational(0), v) : GaussianRational(v);
  }
  std::string a = s.substr(0, split), b = s.substr(split);
  if (b[0] == '+') b.erase(0, 1);
  Rational va = parse_part(a, imag_a), vb = parse_part(b, imag_b);
  if (imag_a || !imag_b) throw std::invalid_argument("bad Gaussian rational: " + std::string(text));
  return {va, vb};
}

}  // namespace zerok

#endif
