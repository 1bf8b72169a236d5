#ifndef ZEROK_DARBOUX_HPP
#define ZEROK_DARBOUX_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "zerok/parallel.hpp"
#include "zerok/potential.hpp"

namespace zerok {

using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;

/// Proper Darboux point of a two-variable degree-0 potential in the affine
/// coordinate z = q2/q1, with d = x*(1, z*).
struct ProjectiveDarboux {
  GaussianRational z_star;     // i or -i
  GaussianRational v1;         // v'(z*)
  GaussianRational x_star_sq;  // x*^2 = -v'(z*) z* = v'(z*)/z*
  int branch = 1;              // sign of the chosen square root of x*^2
};

struct DarbouxPointNumeric {
  ComplexVec coords;
  double residual = 0;  // max |V'(d) - d|
  int newton_iters = 0;
};

struct DarbouxSearchOptions {
  int seeds = 64;
  double tol = 1e-9;
  double dedup = 1e-6;
  double radius = 3.0;
  int max_iter = 100;
  std::uint64_t seed = 1;
};

struct DarbouxSearchResult {
  std::vector<DarbouxPointNumeric> points;
  bool continuum = false;  // V'(q) = q identically: every nonzero q is a Darboux point
  int abandoned_seeds = 0;
};

/// v'(z) as a rational function of z for a two-variable potential.
inline RatFunc projective_derivative(const Potential& v) { return restrict_projective(v).derivative(0); }

/// Darboux points of a two-variable degree-0 potential. They can only sit at
/// z* = +-i; a candidate is kept when v'(z*) is defined and nonzero.
inline std::vector<ProjectiveDarboux> darboux_2d(const Potential& v) {
  if (v.nvars() != 2 || v.degree != 0)
    throw std::invalid_argument("darboux_2d requires a two-variable potential of degree 0");
  const RatFunc dv = projective_derivative(v);
  std::vector<ProjectiveDarboux> out;
  for (const GaussianRational& z : {GaussianRational::i(), -GaussianRational::i()}) {
    GaussianRational den = dv.den().evaluate({z});
    if (den.is_zero()) continue;
    GaussianRational v1 = dv.num().evaluate({z}) / den;
    if (v1.is_zero()) continue;
    GaussianRational xsq = -v1 * z;
    if (xsq != v1 / z) throw std::logic_error("inconsistent Darboux data");
    out.push_back({z, v1, xsq, 1});
  }
  return out;
}

/// Numeric evaluation of V'(q) - q; throws std::domain_error on the singular locus.
inline ComplexVec darboux_residual_vector(const GradientVec& grad, const ComplexVec& q) {
  ComplexVec f(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) f[i] = grad[i].evaluate(q) - q[i];
  return f;
}

inline double max_abs(const ComplexVec& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

/// The point d = x*(1, z*) for the chosen branch, with its certified residual.
inline DarbouxPointNumeric embed_2d(const ProjectiveDarboux& pd, const Potential& v) {
  Complex x = std::sqrt(pd.x_star_sq.to_complex());
  if (pd.branch < 0) x = -x;
  DarbouxPointNumeric p;
  p.coords = {x, x * pd.z_star.to_complex()};
  p.residual = max_abs(darboux_residual_vector(gradient(v), p.coords));
  return p;
}

/// True when V'(q) = q holds identically.
inline bool has_identity_gradient(const Potential& v) {
  GradientVec g = gradient(v);
  for (std::size_t i = 0; i < v.nvars(); ++i)
    if (g[i] != RatFunc::variable(v.nvars(), i)) return false;
  return true;
}

namespace detail {

struct NewtonOutcome {
  bool ok = false;
  DarbouxPointNumeric point;
};

inline NewtonOutcome newton_darboux(const GradientVec& grad, const HessianFunc& hess, ComplexVec q,
                                    const DarbouxSearchOptions& opt) {
  const std::size_t n = q.size();
  NewtonOutcome out;
  try {
    for (int it = 1; it <= opt.max_iter; ++it) {
      ComplexVec f = darboux_residual_vector(grad, q);
      Eigen::MatrixXcd jac(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
              hess(i, j).evaluate(q) - (i == j ? 1.0 : 0.0);
      Eigen::VectorXcd rhs(n);
      for (std::size_t i = 0; i < n; ++i) rhs(static_cast<Eigen::Index>(i)) = -f[i];
      Eigen::FullPivLU<Eigen::MatrixXcd> lu(jac);
      if (!lu.isInvertible()) return out;
      Eigen::VectorXcd step = lu.solve(rhs);
      double step_norm = 0, q_norm = 0;
      for (std::size_t i = 0; i < n; ++i) {
        q[i] += step(static_cast<Eigen::Index>(i));
        step_norm = std::max(step_norm, std::abs(step(static_cast<Eigen::Index>(i))));
        q_norm = std::max(q_norm, std::abs(q[i]));
      }
      if (!std::isfinite(step_norm) || q_norm > 1e8) return out;
      if (step_norm < 1e-14 * std::max(1.0, q_norm) || it == opt.max_iter) {
        if (q_norm < 1e-6) return out;  // the zero vector is excluded
        out.point.coords = q;
        out.point.residual = max_abs(darboux_residual_vector(grad, q));
        out.point.newton_iters = it;
        out.ok = out.point.residual < opt.tol;
        return out;
      }
    }
  } catch (const std::domain_error&) {
    // seed ran into a pole of V'
  }
  return out;
}

inline bool lex_less(const ComplexVec& a, const ComplexVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

inline double distance(const ComplexVec& a, const ComplexVec& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace detail

/// Newton multistart on F(q) = V'(q) - q from seeds in a complex ball.
/// Seeds are generated up front, so results do not depend on thread count.
inline DarbouxSearchResult darboux_nd(const Potential& v, const DarbouxSearchOptions& opt = {}) {
  if (v.nvars() < 2) throw std::invalid_argument("darboux_nd requires at least two variables");
  DarbouxSearchResult result;
  if (has_identity_gradient(v)) {
    result.continuum = true;
    return result;
  }
  const std::size_t n = v.nvars();
  const GradientVec grad = gradient(v);
  const HessianFunc hess = hessian(v);

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<ComplexVec> starts(static_cast<std::size_t>(std::max(0, opt.seeds)));
  for (auto& s : starts) {
    // rejection sampling in the ball of radius opt.radius in C^n = R^{2n}
    while (true) {
      s.assign(n, 0.0);
      double r2 = 0;
      for (auto& c : s) {
        c = Complex(unit(rng), unit(rng));
        r2 += std::norm(c);
      }
      if (r2 <= 1.0 && r2 > 1e-6) break;
    }
    for (auto& c : s) c *= opt.radius;
  }

  std::vector<detail::NewtonOutcome> outcomes(starts.size());
  parallel_for(starts.size(), [&](std::size_t k) { outcomes[k] = detail::newton_darboux(grad, hess, starts[k], opt); });

  std::vector<DarbouxPointNumeric> found;
  for (auto& o : outcomes) {
    if (o.ok)
      found.push_back(std::move(o.point));
    else
      ++result.abandoned_seeds;
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return detail::lex_less(a.coords, b.coords); });
  for (auto& p : found) {
    bool dup = std::any_of(result.points.begin(), result.points.end(),
                           [&](const auto& kept) { return detail::distance(kept.coords, p.coords) <= opt.dedup; });
    if (dup) continue;
    p.residual = max_abs(darboux_residual_vector(grad, p.coords));
    if (p.residual < opt.tol) result.points.push_back(std::move(p));
  }
  return result;
}

}  // namespace zerok

#endif
