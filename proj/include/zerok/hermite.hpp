#ifndef ZEROK_HERMITE_HPP
#define ZEROK_HERMITE_HPP

#include <vector>

#include "zerok/unipoly.hpp"

namespace zerok {

/// Probabilists' Hermite polynomial He_n from He_{n+1} = p He_n - He_n'.
inline UniPoly hermite(unsigned n) {
  UniPoly h = UniPoly::constant(1);
  const UniPoly p = UniPoly::x();
  for (unsigned k = 0; k < n; ++k) h = p * h - h.derivative();
  return h;
}

/// Coefficients gamma_n with f = sum gamma_n He_n.
struct HermiteExpansion {
  std::vector<GaussianRational> coeffs;

  UniPoly reconstruct() const {
    UniPoly sum;
    for (std::size_t n = 0; n < coeffs.size(); ++n)
      if (!coeffs[n].is_zero()) sum += hermite(static_cast<unsigned>(n)) * coeffs[n];
    return sum;
  }
};

/// Peels off the leading monomial against the monic He_deg repeatedly.
inline HermiteExpansion hermite_expand(const UniPoly& f) {
  HermiteExpansion out;
  if (f.is_zero()) return out;
  out.coeffs.resize(static_cast<std::size_t>(f.degree() + 1));
  UniPoly rest = f;
  while (!rest.is_zero()) {
    auto d = static_cast<unsigned>(rest.degree());
    GaussianRational c = rest.leading();
    out.coeffs[d] = c;
    rest -= hermite(d) * c;
  }
  return out;
}

/// (2m-1)!! with (-1)!! = 1.
inline Integer double_factorial_odd(unsigned m) {
  Integer r = 1;
  for (unsigned k = 1; k + 1 <= 2 * m; k += 2) r *= k;
  return r;
}

/// Integral of e^{-p^2/2} f(p) over the real line, in units of sqrt(2 pi).
inline GaussianRational gaussian_moment(const UniPoly& f) {
  GaussianRational sum;
  for (std::size_t k = 0; k < f.coeffs().size(); k += 2) {
    if (f.coeffs()[k].is_zero()) continue;
    sum += f.coeffs()[k] * GaussianRational(Rational(double_factorial_odd(static_cast<unsigned>(k / 2))));
  }
  return sum;
}

}  // namespace zerok

#endif
