#ifndef ZEROK_MR_TABLE_HPP
#define ZEROK_MR_TABLE_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zerok/gaussian_rational.hpp"

namespace zerok {

/// One family of the admissible-eigenvalue table: for k in its gate, lambda(p) = c2 p^2 + c1 p + c0
/// with p an integer. Row 1 (k = +-2, lambda arbitrary) has no quadratic.
struct TableFamily {
  int row = 0;
  int family = 1;
  bool arbitrary = false;
  // gate: generic rows accept every k != 0, specific rows one value of k
  bool generic = false;
  std::vector<int> ks;
  // alpha + beta (gamma + delta p)^2 for rows 4-9
  Rational alpha, beta, gamma, delta;

  bool applies(int k) const {
    if (k == 0) return false;
    if (generic) return true;
    for (int x : ks)
      if (x == k) return true;
    return false;
  }

  /// Coefficients (c0, c1, c2) of lambda as a polynomial in p.
  std::array<Rational, 3> quadratic(int k) const {
    const Rational kk(k);
    if (row == 2) return {Rational(0), 1 - kk / 2, kk / 2};
    if (row == 3) return {(kk - 1) / (2 * kk), kk / 2, kk / 2};
    return {alpha + beta * gamma * gamma, 2 * beta * gamma * delta, beta * delta * delta};
  }

  Rational lambda_at(int k, const Integer& p) const {
    auto c = quadratic(k);
    Rational pp(p);
    return c[0] + c[1] * pp + c[2] * pp * pp;
  }

  std::string formula() const {
    if (arbitrary) return "arbitrary";
    if (row == 2) return "p + (k/2) p (p - 1)";
    if (row == 3) return "(1/2) ((k - 1)/k + p (p + 1) k)";
    return to_string(alpha) + " + " + to_string(beta) + " (" + to_string(gamma) + " + " + to_string(delta) + " p)^2";
  }
};

inline const std::vector<TableFamily>& mr_table() {
  static const std::vector<TableFamily> table = [] {
    auto q = [](long n, long d) { return make_rational(n, d); };
    auto fam = [&](int row, int family, int k, Rational a, Rational b, long g, long d) {
      TableFamily f;
      f.row = row;
      f.family = family;
      f.ks = {k};
      f.alpha = a;
      f.beta = b;
      f.gamma = g;
      f.delta = d;
      return f;
    };
    std::vector<TableFamily> t;
    TableFamily r1;
    r1.row = 1;
    r1.arbitrary = true;
    r1.ks = {2, -2};
    t.push_back(r1);
    TableFamily r2;
    r2.row = 2;
    r2.generic = true;
    t.push_back(r2);
    TableFamily r3 = r2;
    r3.row = 3;
    t.push_back(r3);
    t.push_back(fam(4, 1, 3, q(-1, 24), q(1, 6), 1, 3));
    t.push_back(fam(4, 2, 3, q(-1, 24), q(3, 32), 1, 4));
    t.push_back(fam(4, 3, 3, q(-1, 24), q(3, 50), 1, 5));
    t.push_back(fam(4, 4, 3, q(-1, 24), q(3, 50), 2, 5));
    t.push_back(fam(5, 1, 4, q(-1, 8), q(2, 9), 1, 3));
    t.push_back(fam(6, 1, 5, q(-9, 40), q(5, 18), 1, 3));
    t.push_back(fam(6, 2, 5, q(-9, 40), q(1, 10), 2, 5));
    t.push_back(fam(7, 1, -3, q(25, 24), q(-1, 6), 1, 3));
    t.push_back(fam(7, 2, -3, q(25, 24), q(-3, 32), 1, 4));
    t.push_back(fam(7, 3, -3, q(25, 24), q(-3, 50), 1, 5));
    t.push_back(fam(7, 4, -3, q(25, 24), q(-3, 50), 2, 5));
    t.push_back(fam(8, 1, -4, q(9, 8), q(-2, 9), 1, 3));
    t.push_back(fam(9, 1, -5, q(49, 40), q(-5, 18), 1, 3));
    t.push_back(fam(9, 2, -5, q(49, 40), q(-1, 10), 2, 5));
    return t;
  }();
  return table;
}

struct TableRowMatch {
  int row = 0;
  int family = 1;
  std::optional<Integer> p;  // absent for row 1
  GaussianRational lambda;
};

/// Re-evaluates the row formula at p and compares with lambda exactly.
inline bool revalidate(int k, const TableRowMatch& m) {
  for (const auto& f : mr_table()) {
    if (f.row != m.row || f.family != m.family || !f.applies(k)) continue;
    if (f.arbitrary) return !m.p.has_value();
    return m.p.has_value() && GaussianRational(f.lambda_at(k, *m.p)) == m.lambda;
  }
  return false;
}

/// All (row, family, p) with lambda = row formula at integer p, found by solving
/// each quadratic exactly. Non-real lambda can only match row 1.
inline std::vector<TableRowMatch> mr_table_membership(int k, const GaussianRational& lambda) {
  if (k == 0) throw std::invalid_argument("the table applies to nonzero degrees only");
  std::vector<TableRowMatch> out;
  for (const auto& f : mr_table()) {
    if (!f.applies(k)) continue;
    if (f.arbitrary) {
      out.push_back({f.row, f.family, std::nullopt, lambda});
      continue;
    }
    if (!lambda.is_real()) continue;
    auto [c0, c1, c2] = f.quadratic(k);
    c0 -= lambda.re();
    // c2 != 0 for every family with k != 0
    Rational disc = c1 * c1 - 4 * c2 * c0;
    if (disc < 0) continue;
    auto root = rational_sqrt(disc);
    if (!root) continue;
    std::vector<Rational> ps{(-c1 - *root) / (2 * c2)};
    if (*root != 0) ps.push_back((-c1 + *root) / (2 * c2));
    std::sort(ps.begin(), ps.end());
    for (const auto& p : ps)
      if (is_integer(p)) out.push_back({f.row, f.family, Integer(p.get_num()), lambda});
  }
  return out;
}

}  // namespace zerok

#endif
