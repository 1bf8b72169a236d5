#ifndef ZEROK_TEST_SUPPORT_HPP
#define ZEROK_TEST_SUPPORT_HPP

#include <random>

#include "zerok/ratfunc.hpp"
#include "zerok/unipoly.hpp"

namespace zerok::test {

inline GaussianRational random_coeff(std::mt19937_64& rng, bool allow_imag = true) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  Rational re = make_rational(num(rng), den(rng));
  Rational im = allow_imag ? make_rational(num(rng) / 2, den(rng)) : Rational(0);
  return {re, im};
}

inline GaussianRational nonzero_coeff(std::mt19937_64& rng) {
  GaussianRational c;
  while (c.is_zero()) c = random_coeff(rng);
  return c;
}

/// Dense-ish random polynomial of total degree <= deg.
inline MultiPoly random_poly(std::mt19937_64& rng, std::size_t nvars, int deg) {
  std::uniform_int_distribution<int> e(0, deg), keep(0, 2);
  MultiPoly p(nvars);
  for (int t = 0; t < 4; ++t) {
    Exponents ex(nvars, 0);
    int budget = deg;
    for (std::size_t k = 0; k < nvars; ++k) {
      ex[k] = std::uniform_int_distribution<int>(0, budget)(rng);
      budget -= ex[k];
    }
    if (keep(rng)) p.add_term(ex, random_coeff(rng));
  }
  if (p.is_zero()) p = MultiPoly::constant(nvars, nonzero_coeff(rng));
  return p;
}

/// Homogeneous polynomial of exact degree deg.
inline MultiPoly random_homogeneous_poly(std::mt19937_64& rng, std::size_t nvars, int deg) {
  MultiPoly p(nvars);
  while (p.is_zero()) {
    for (int t = 0; t < 3; ++t) {
      Exponents ex(nvars, 0);
      int budget = deg;
      for (std::size_t k = 0; k + 1 < nvars; ++k) {
        ex[k] = std::uniform_int_distribution<int>(0, budget)(rng);
        budget -= ex[k];
      }
      ex[nvars - 1] = budget;
      p.add_term(ex, random_coeff(rng));
    }
  }
  return p;
}

inline RatFunc random_ratfunc(std::mt19937_64& rng, std::size_t nvars, int deg) {
  return {random_poly(rng, nvars, deg), random_poly(rng, nvars, deg)};
}

inline RatFunc random_homogeneous_ratfunc(std::mt19937_64& rng, std::size_t nvars, int num_deg, int den_deg) {
  return {random_homogeneous_poly(rng, nvars, num_deg), random_homogeneous_poly(rng, nvars, den_deg)};
}

/// Exact degree deg.
inline UniPoly random_unipoly(std::mt19937_64& rng, int deg) {
  std::vector<GaussianRational> c(static_cast<std::size_t>(deg + 1));
  for (auto& x : c) x = random_coeff(rng);
  c.back() = nonzero_coeff(rng);
  return UniPoly(std::move(c));
}

}  // namespace zerok::test

#endif
