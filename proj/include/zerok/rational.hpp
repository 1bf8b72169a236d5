#ifndef ZEROK_RATIONAL_HPP
#define ZEROK_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zerok {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "n" or "n/d" with optional leading sign.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (r.get_den() == 0) throw std::domain_error("rational with zero denominator");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline double to_double(const Rational& r) { return r.get_d(); }

inline Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

/// Exact square root of a nonnegative rational when it is a perfect square.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t()))
    return std::nullopt;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
  return make_rational(n, d);
}

/// Best rational approximation with denominator <= max_den (continued fractions).
/// Returns nullopt when |x - p/q| exceeds tol for every convergent.
inline std::optional<Rational> rationalize(double x, long max_den = 1000000, double tol = 1e-9) {
  if (!std::isfinite(x)) return std::nullopt;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  std::optional<Rational> best;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(frac);
    Integer ai(a);
    Integer p2 = ai * p1 + p0;
    Integer q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    Rational cand = make_rational(p2, q2);
    double err = std::abs(cand.get_d() - x);
    if (err <= tol * std::max(1.0, std::abs(x))) {
      best = cand;
      break;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - a;
    if (rem == 0.0) break;
    frac = 1.0 / rem;
  }
  return best;
}

}  // namespace zerok

#endif
