#ifndef ZEROK_POLY_GCD_HPP
#define ZEROK_POLY_GCD_HPP

#include <vector>

#include "zerok/multipoly.hpp"
#include "zerok/unipoly.hpp"

namespace zerok {

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

namespace detail {

inline MultiPoly from_coefficients(const std::vector<MultiPoly>& cs, std::size_t var, std::size_t nvars) {
  MultiPoly r(nvars);
  for (std::size_t j = 0; j < cs.size(); ++j) {
    for (const auto& [e, c] : cs[j].terms()) {
      Exponents f = e;
      f[var] = static_cast<int>(j);
      r.add_term(std::move(f), c);
    }
  }
  return r;
}

inline MultiPoly content_in(const MultiPoly& a, std::size_t var) {
  MultiPoly g(a.nvars());
  for (const auto& c : a.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

/// Pseudo-remainder of a by b in variable var.
inline MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  const std::size_t n = a.nvars();
  std::vector<MultiPoly> r = a.coefficients_in(var);
  std::vector<MultiPoly> bc = b.coefficients_in(var);
  const int db = static_cast<int>(bc.size()) - 1;
  const MultiPoly& lb = bc.back();
  while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
    const int dr = static_cast<int>(r.size()) - 1;
    MultiPoly lr = r.back();
    // r <- lb*r - lr*x^(dr-db)*b
    for (auto& c : r) c = c * lb;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(j + dr - db)] -= lr * bc[static_cast<std::size_t>(j)];
    while (!r.empty() && r.back().is_zero()) r.pop_back();
  }
  return from_coefficients(r, var, n);
}

/// Certificate that no common factor of a and b involves var: the gcd of
/// univariate images (other variables fixed where both leading coefficients
/// survive) is constant. A false result is inconclusive.
inline bool coprime_image_in(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  static const long values[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  const std::size_t n = a.nvars();
  std::vector<MultiPoly> ca = a.coefficients_in(var), cb = b.coefficients_in(var);
  for (std::size_t attempt = 0; attempt < 3; ++attempt) {
    std::vector<GaussianRational> pt(n);
    for (std::size_t k = 0; k < n; ++k)
      if (k != var) pt[k] = GaussianRational(values[(3 * k + 5 * attempt) % 12]);
    if (ca.back().evaluate(pt).is_zero() || cb.back().evaluate(pt).is_zero()) continue;
    std::vector<GaussianRational> ia, ib;
    for (const auto& c : ca) ia.push_back(c.evaluate(pt));
    for (const auto& c : cb) ib.push_back(c.evaluate(pt));
    return gcd(UniPoly(std::move(ia)), UniPoly(std::move(ib))).degree() == 0;
  }
  return false;
}

inline MultiPoly monomial_gcd(const Exponents& e, const MultiPoly& b) {
  Exponents m = e;
  for (const auto& [f, c] : b.terms())
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::min(m[k], f[k]);
  return MultiPoly::monomial(m, GaussianRational(1));
}

}  // namespace detail

/// Greatest common divisor over Q(i), normalized to leading coefficient 1.
/// Recursive primitive polynomial remainder sequence on the lowest-index
/// variable present, with a monomial fast path.
inline MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("gcd arity mismatch");
  if (a.has_negative_exponents() || b.has_negative_exponents())
    throw std::domain_error("gcd requires polynomials");
  const std::size_t n = a.nvars();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(n, 1);
  if (a.is_monomial()) return detail::monomial_gcd(a.leading_exponents(), b);
  if (b.is_monomial()) return detail::monomial_gcd(b.leading_exponents(), a);

  bool certified_coprime = true;
  for (std::size_t k = 0; k < n && certified_coprime; ++k)
    if (a.involves(k) && b.involves(k)) certified_coprime = detail::coprime_image_in(a, b, k);
  if (certified_coprime) return MultiPoly::constant(n, 1);

  std::size_t var = n;
  for (std::size_t k = 0; k < n && var == n; ++k)
    if (a.involves(k) || b.involves(k)) var = k;

  if (!a.involves(var)) return gcd(a, detail::content_in(b, var));
  if (!b.involves(var)) return gcd(detail::content_in(a, var), b);

  MultiPoly ca = detail::content_in(a, var), cb = detail::content_in(b, var);
  MultiPoly c = gcd(ca, cb);
  MultiPoly pa = divide_exact(a, ca).monic(), pb = divide_exact(b, cb).monic();
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  while (true) {
    MultiPoly r = detail::pseudo_remainder(pa, pb, var);
    if (r.is_zero()) break;
    if (!r.involves(var)) {
      pb = MultiPoly::constant(n, 1);
      break;
    }
    pa = std::move(pb);
    pb = divide_exact(r, detail::content_in(r, var)).monic();
  }
  if (!pb.is_constant()) pb = divide_exact(pb, detail::content_in(pb, var));
  return (c * pb).monic();
}

}  // namespace zerok

#endif
