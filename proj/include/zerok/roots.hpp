#ifndef ZEROK_ROOTS_HPP
#define ZEROK_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "zerok/rational.hpp"
#include "zerok/unipoly.hpp"

namespace zerok {

struct IntegerRoot {
  Integer value;
  int multiplicity = 0;
  friend bool operator==(const IntegerRoot& a, const IntegerRoot& b) {
    return a.value == b.value && a.multiplicity == b.multiplicity;
  }
};

struct GaussianRoot {
  GaussianRational value;
  int multiplicity = 0;
};

/// All complex roots of f by Aberth-Ehrlich iteration (float candidates only).
inline std::vector<std::complex<double>> numeric_roots(const UniPoly& f, int max_iter = 500) {
  using C = std::complex<double>;
  const int n = f.degree();
  if (n <= 0) return {};
  std::vector<C> a(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) a[static_cast<std::size_t>(k)] = f.coeff(static_cast<std::size_t>(k)).to_complex();
  C lead = a.back();
  for (auto& v : a) v /= lead;
  if (n == 1) return {-a[0]};
  double radius = 0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::pow(std::abs(a[static_cast<std::size_t>(k)]), 1.0 / (n - k)));
  radius = std::max(radius, 1e-3) * 1.1;
  std::vector<C> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * M_PI * k / n + 0.4);
  auto eval = [&](C x, C& d) {
    C p = a[static_cast<std::size_t>(n)];
    d = 0;
    for (int k = n - 1; k >= 0; --k) {
      d = d * x + p;
      p = p * x + a[static_cast<std::size_t>(k)];
    }
    return p;
  };
  for (int it = 0; it < max_iter; ++it) {
    double maxstep = 0;
    for (int i = 0; i < n; ++i) {
      C d;
      C p = eval(z[static_cast<std::size_t>(i)], d);
      if (p == C(0)) continue;
      C ratio = p / d;
      C sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
      C step = ratio / (1.0 - ratio * sum);
      z[static_cast<std::size_t>(i)] -= step;
      maxstep = std::max(maxstep, std::abs(step) / std::max(1.0, std::abs(z[static_cast<std::size_t>(i)])));
    }
    if (maxstep < 1e-15) break;
  }
  return z;
}

/// Strips every factor (x - r) from f and returns how many were removed.
inline int strip_root(UniPoly& f, const GaussianRational& r) {
  int m = 0;
  const UniPoly lin(std::vector<GaussianRational>{-r, 1});
  while (!f.is_zero() && f(r).is_zero()) {
    f = divmod(f, lin).first;
    ++m;
  }
  return m;
}

/// Integer roots with multiplicity. Float roots of the squarefree part are
/// only candidates: each is rounded and accepted by exact substitution.
inline std::vector<IntegerRoot> integer_roots(const UniPoly& f) {
  if (f.is_zero()) throw std::domain_error("integer_roots of the zero polynomial");
  std::vector<IntegerRoot> out;
  UniPoly rest = f;
  for (const auto& z : numeric_roots(squarefree_part(f))) {
    if (std::abs(z.imag()) > 0.5) continue;
    Integer cand(std::round(z.real()));
    GaussianRational r{Rational(cand)};
    if (std::any_of(out.begin(), out.end(), [&](const IntegerRoot& x) { return x.value == cand; })) continue;
    int m = strip_root(rest, r);
    if (m > 0) out.push_back({cand, m});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return out;
}

/// Roots lying in Q(i) with multiplicity, found by rationalizing float candidates
/// (denominators up to max_den) and confirming by exact substitution.
inline std::vector<GaussianRoot> gaussian_rational_roots(const UniPoly& f, long max_den = 1000000) {
  if (f.is_zero()) throw std::domain_error("roots of the zero polynomial");
  std::vector<GaussianRoot> out;
  UniPoly rest = f;
  for (const auto& z : numeric_roots(squarefree_part(f))) {
    auto re = rationalize(z.real(), max_den, 1e-7);
    auto im = std::abs(z.imag()) < 1e-9 ? std::optional<Rational>(Rational(0)) : rationalize(z.imag(), max_den, 1e-7);
    if (!re || !im) continue;
    GaussianRational r{*re, *im};
    if (std::any_of(out.begin(), out.end(), [&](const GaussianRoot& x) { return x.value == r; })) continue;
    int m = strip_root(rest, r);
    if (m > 0) out.push_back({r, m});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return out;
}

}  // namespace zerok

#endif
