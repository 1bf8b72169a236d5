#ifndef ZEROK_VARIATIONAL_HPP
#define ZEROK_VARIATIONAL_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zerok/darboux.hpp"
#include "zerok/hermite.hpp"
#include "zerok/linalg.hpp"
#include "zerok/roots.hpp"
#include "zerok/spectral.hpp"

namespace zerok {

/// Gamma_eps: p^2/2 + ln q = eps, so q = exp(eps - p^2/2).
struct PhaseCurve {
  Complex epsilon{0.0, 0.0};
  Complex q_at(Complex p) const { return std::exp(epsilon - p * p / 2.0); }
};

/// One Jordan block of the variational equations in t:
/// size 1: x'' = -(lambda/q^2) x; size m: a chain y_j'' = -(lambda/q^2) y_j - (1/q^2) y_{j-1}.
struct VEBlock {
  Eigenvalue lambda;
  int size = 1;
  std::string t_form() const {
    std::string l = lambda.str();
    if (size == 1) return "x'' = -(" + l + "/q^2) x";
    std::string s = "x1'' = -(" + l + "/q^2) x1";
    for (int j = 2; j <= size; ++j)
      s += "; x" + std::to_string(j) + "'' = -(" + l + "/q^2) x" + std::to_string(j) + " - (1/q^2) x" +
           std::to_string(j - 1);
    return s;
  }
  int first_order_dimension() const { return 2 * size; }
};

struct VESystem {
  PhaseCurve curve;
  std::vector<VEBlock> blocks;
};

/// Variational equations along Gamma_eps in Jordan-block form, one subsystem per block.
inline VESystem variational_system(const SpectralData& sd, const PhaseCurve& pc = {}) {
  VESystem s;
  s.curve = pc;
  for (const auto& b : sd.blocks) s.blocks.push_back({b.eigenvalue, b.size});
  return s;
}

/// x'' + p x' + lambda x = 0 in the variable p; coupled adds "+ x" to the second equation.
struct PForm {
  GaussianRational lambda;
  bool coupled = false;
  // coefficients of x'', x', x as polynomials in p
  UniPoly c2{1}, c1{0, 1};
  UniPoly c0() const { return UniPoly::constant(lambda); }
  std::string str() const {
    std::string first = "x'' + p x' + (" + lambda.str() + ") x = 0";
    if (!coupled) return first;
    return first + "; y'' + p y' + (" + lambda.str() + ") y + x = 0";
  }
};

inline PForm p_form(const GaussianRational& lambda, bool coupled = false) {
  PForm f;
  f.lambda = lambda;
  f.coupled = coupled;
  return f;
}

struct KummerParams {
  GaussianRational a;
  GaussianRational c;
};

/// z = -p^2/2 turns the p-form into z x'' + (c - z) x' + a x = 0.
inline KummerParams kummer_params(const GaussianRational& lambda) {
  return {-lambda * GaussianRational(make_rational(1, 2)), GaussianRational(make_rational(1, 2))};
}

enum class GaloisGroup { GL2, AdditiveSemidirect };

inline const char* galois_name(GaloisGroup g) { return g == GaloisGroup::GL2 ? "GL(2,C)" : "C* x| C"; }

struct GaloisClass {
  GaloisGroup over_base = GaloisGroup::GL2;
  bool virtually_abelian_over_qp = false;
  int dimension_over_qp = 3;  // exact when lambda is an integer, a lower bound otherwise
};

inline GaloisClass galois_class(const GaussianRational& lambda) {
  if (lambda.is_integer()) return {GaloisGroup::AdditiveSemidirect, true, 1};
  return {GaloisGroup::GL2, false, 3};
}

/// x_lambda = q He_{lambda-1}(p) for lambda >= 1 and He_{-lambda}(-i p) for lambda <= 0.
struct HermiteSolution {
  long lambda = 0;
  UniPoly poly;           // He_n
  bool q_factor = false;  // true iff lambda >= 1
  bool rotated = false;   // argument -i p instead of p

  /// The polynomial factor as a polynomial in p.
  UniPoly in_p() const {
    return rotated ? poly.compose(UniPoly::monomial(1, -GaussianRational::i())) : poly;
  }
  Complex operator()(Complex p, const PhaseCurve& pc) const {
    Complex v = in_p()(p);
    return q_factor ? pc.q_at(p) * v : v;
  }
  /// d/dp along Gamma_eps, using q' = -p q.
  Complex derivative(Complex p, const PhaseCurve& pc) const {
    UniPoly f = in_p();
    Complex v = f(p), dv = f.derivative()(p);
    return q_factor ? pc.q_at(p) * (dv - p * v) : dv;
  }
  std::string str() const {
    std::string n = std::to_string(q_factor ? lambda - 1 : -lambda);
    return q_factor ? "q*He_" + n + "(p)" : "He_" + n + "(-i*p)";
  }
};

inline HermiteSolution hermite_solution(long lambda) {
  HermiteSolution s;
  s.lambda = lambda;
  if (lambda >= 1) {
    s.poly = hermite(static_cast<unsigned>(lambda - 1));
    s.q_factor = true;
  } else {
    s.poly = hermite(static_cast<unsigned>(-lambda));
    s.rotated = true;
  }
  return s;
}

inline HermiteSolution hermite_solution(const GaussianRational& lambda) {
  if (!lambda.is_integer())
    throw std::domain_error("no closed-form Hermite solution for lambda = " + lambda.str() +
                            ": the Galois group is GL(2,C)");
  return hermite_solution(lambda.re().get_num().get_si());
}

/// Elements sum_e q^e P_e(p) with q' = -p q.
class QPExpr {
 public:
  QPExpr() = default;
  QPExpr(int e, UniPoly p) {
    if (!p.is_zero()) terms_[e] = std::move(p);
  }
  const std::map<int, UniPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend QPExpr operator+(QPExpr a, const QPExpr& b) {
    for (const auto& [e, p] : b.terms_) a.add(e, p);
    return a;
  }
  friend QPExpr operator*(const UniPoly& f, const QPExpr& a) {
    QPExpr r;
    for (const auto& [e, p] : a.terms_) r.add(e, f * p);
    return r;
  }
  QPExpr derivative() const {
    QPExpr r;
    for (const auto& [e, p] : terms_) r.add(e, p.derivative() - GaussianRational(e) * UniPoly::x() * p);
    return r;
  }

 private:
  void add(int e, const UniPoly& p) {
    UniPoly s = terms_.count(e) ? terms_[e] + p : p;
    if (s.is_zero())
      terms_.erase(e);
    else
      terms_[e] = s;
  }
  std::map<int, UniPoly> terms_;
};

/// x'' + p x' + lambda x for x = x_lambda; zero exactly when the solution is correct.
inline QPExpr verify_solution(const HermiteSolution& sol) {
  QPExpr x(sol.q_factor ? 1 : 0, sol.in_p());
  QPExpr d1 = x.derivative(), d2 = d1.derivative();
  return d2 + (UniPoly::x() * d1) + (UniPoly::constant(GaussianRational(sol.lambda)) * x);
}

/// lambda <= 0 maps to 1 - lambda >= 1.
inline long reduced_lambda(long lambda) { return lambda >= 1 ? lambda : 1 - lambda; }

struct Alpha1Certificate {
  long lambda = 1;
  GaussianRational moment_value;  // in units of sqrt(2 pi)
  Integer expected;               // (lambda - 1)!
  std::size_t unknowns = 0;       // coefficients of alpha_1 up to degree 2 lambda
  std::size_t equations = 0;
  bool system_consistent = true;
  std::string conclusion;
};

/// Certificate that alpha_1' - p alpha_1 = -He_{lambda-1}^2 has no polynomial
/// solution: the Gaussian moment of the right-hand side is (lambda-1)! != 0, and the
/// finite linear system for alpha_1 of degree <= 2 lambda is inconsistent.
inline Alpha1Certificate alpha1_obstruction(long lambda) {
  if (lambda < 1) throw std::invalid_argument("alpha1_obstruction needs lambda >= 1; reduce with 1 - lambda");
  Alpha1Certificate c;
  c.lambda = lambda;
  UniPoly h = hermite(static_cast<unsigned>(lambda - 1));
  UniPoly rhs = -(h * h);
  c.moment_value = gaussian_moment(h * h);
  c.expected = factorial(static_cast<unsigned long>(lambda - 1));
  if (c.moment_value != GaussianRational(Rational(c.expected)) || c.moment_value.is_zero())
    throw std::logic_error("Gaussian moment disagrees with (lambda-1)!");

  const std::size_t deg = static_cast<std::size_t>(2 * lambda);
  c.unknowns = deg + 1;
  c.equations = deg + 2;
  QiMatrix a(c.equations, c.unknowns);
  for (std::size_t j = 0; j < c.unknowns; ++j) {
    UniPoly basis = UniPoly::monomial(j, 1);
    UniPoly image = basis.derivative() - UniPoly::x() * basis;
    for (std::size_t i = 0; i < c.equations; ++i) a(i, j) = image.coeff(i);
  }
  QiVector b(c.equations);
  for (std::size_t i = 0; i < c.equations; ++i) b[i] = rhs.coeff(i);
  c.system_consistent = is_consistent(a, b);
  c.conclusion = c.system_consistent ? "a polynomial alpha_1 exists" : "no polynomial alpha_1 exists";
  return c;
}

namespace detail {

using CState = std::vector<Complex>;

inline auto make_stepper(double abs_tol, double rel_tol) {
  using namespace boost::numeric::odeint;
  return make_controlled(abs_tol, rel_tol, runge_kutta_dopri5<CState>());
}

}  // namespace detail

struct VENumericResult {
  std::vector<double> times;
  std::vector<Complex> q, p, x;
  double max_rel_deviation = 0;  // sup |x_num - x_closed| / sup |x_closed|
};

/// Integrates q' = p, p' = -1/q and x'' = -(lambda/q^2) x in real time from
/// (q0, p0) with x(0), x'(0) taken from the closed form, and compares x(t)
/// with x_lambda evaluated along the numeric trajectory.
inline VENumericResult integrate_ve_numeric(long lambda, Complex q0, Complex p0, double t1,
                                            double tol = 1e-10, int samples = 101) {
  if (std::abs(q0) == 0) throw std::invalid_argument("initial q must be nonzero");
  const HermiteSolution sol = hermite_solution(lambda);
  const PhaseCurve pc{p0 * p0 / 2.0 + std::log(q0)};
  const Complex x0 = sol(p0, pc);
  const Complex xdot0 = -sol.derivative(p0, pc) / q0;  // d/dt = (dp/dt) d/dp = -(1/q) d/dp
  const double lam = static_cast<double>(lambda);

  auto rhs = [&](const detail::CState& s, detail::CState& ds, double) {
    if (std::abs(s[0]) < 1e-6) throw std::runtime_error("trajectory passes within 1e-6 of q = 0");
    ds[0] = s[1];
    ds[1] = -1.0 / s[0];
    ds[2] = s[3];
    ds[3] = -lam * s[2] / (s[0] * s[0]);
  };
  VENumericResult r;
  detail::CState state{q0, p0, x0, xdot0};
  std::vector<double> ts;
  for (int k = 0; k < samples; ++k) ts.push_back(t1 * k / (samples - 1));
  double sup_closed = 0, sup_err = 0;
  boost::numeric::odeint::integrate_times(detail::make_stepper(tol, tol), rhs, state, ts.begin(), ts.end(), 1e-3,
                                          [&](const detail::CState& s, double t) {
                                            // the closed form along the numeric base flow: q(t) scales x_lambda
                                            Complex closed = sol.in_p()(s[1]);
                                            if (sol.q_factor) closed *= s[0];
                                            r.times.push_back(t);
                                            r.q.push_back(s[0]);
                                            r.p.push_back(s[1]);
                                            r.x.push_back(s[2]);
                                            sup_closed = std::max(sup_closed, std::abs(closed));
                                            sup_err = std::max(sup_err, std::abs(s[2] - closed));
                                          });
  r.max_rel_deviation = sup_closed > 0 ? sup_err / sup_closed : sup_err;
  return r;
}

struct SecondSolutionResult {
  std::vector<Complex> p;
  std::vector<Complex> x_tilde_quadrature;
  std::vector<Complex> x_tilde_ode;
  Complex wronskian_constant;
  double wronskian_deviation = 0;   // max |W/q - c| / |c|
  double quadrature_deviation = 0;  // max |x_ode - x_quad| / sup |x_quad|
};

namespace detail {

inline double segment_distance(Complex a, Complex b, Complex z) {
  Complex ab = b - a;
  double s = std::clamp(std::real(std::conj(ab) * (z - a)) / std::norm(ab), 0.0, 1.0);
  return std::abs(a + s * ab - z);
}

inline double min_distance(const std::vector<Complex>& legs, const std::vector<Complex>& zeros) {
  double m = 1e300;
  for (std::size_t k = 0; k + 1 < legs.size(); ++k)
    for (const auto& z : zeros) m = std::min(m, segment_distance(legs[k], legs[k + 1], z));
  return m;
}

}  // namespace detail

/// Second solution x~ = x_lambda * int q / x_lambda^2 dp along a polygonal path in p.
/// x~ is obtained twice: by Gauss-Kronrod quadrature of the integral, and by
/// integrating x'' + p x' + lambda x = 0 together with x_lambda. The Wronskian of the
/// two numeric solutions is compared with c * q.
///
/// A path within 0.1 of a zero of the Hermite factor is an error unless detour is set.
/// With detour the ODE still follows the path (its coefficients are entire), while the
/// quadrature skips samples within 0.1 of a zero and reaches the next sample through
/// Im p = +-0.3. The residue of q/x_lambda^2 at a simple zero vanishes, so the
/// integral does not depend on the contour. Skipped samples carry NaN quadrature values.
inline SecondSolutionResult second_solution_numeric(long lambda, const std::vector<Complex>& path,
                                                    const PhaseCurve& pc = {}, bool detour = false,
                                                    double tol = 1e-12) {
  if (path.size() < 2) throw std::invalid_argument("path needs at least two points");
  const HermiteSolution sol = hermite_solution(lambda);
  const UniPoly f = sol.in_p();
  const std::vector<Complex> zeros = f.degree() > 0 ? numeric_roots(f) : std::vector<Complex>{};
  auto near_zero = [&](Complex p) {
    for (const auto& z : zeros)
      if (std::abs(p - z) < 0.1) return true;
    return false;
  };
  if (!detour)
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
      for (const auto& z : zeros)
        if (detail::segment_distance(path[k], path[k + 1], z) < 0.1) {
          char buf[128];
          std::snprintf(buf, sizeof buf, "path passes within 0.1 of the zero %.6g%+.6gi of the Hermite factor",
                        z.real(), z.imag());
          throw std::domain_error(buf);
        }
  if (near_zero(path.front())) throw std::domain_error("the path must start at least 0.1 away from the Hermite zeros");

  auto integrand = [&](Complex p) {
    Complex x = sol(p, pc);
    return pc.q_at(p) / (x * x);
  };
  boost::math::quadrature::gauss_kronrod<double, 61> gk;
  auto integrate_leg = [&](Complex a, Complex b) {
    const Complex ab = b - a;
    auto part = [&](auto proj) {
      return gk.integrate([&](double s) { return proj(integrand(a + s * ab) * ab); }, 0.0, 1.0, 12, 1e-13);
    };
    return Complex(part([](Complex c) { return c.real(); }), part([](Complex c) { return c.imag(); }));
  };
  auto integrate_between = [&](Complex a, Complex b) {
    if (detail::min_distance({a, b}, zeros) >= 0.1) return integrate_leg(a, b);
    std::vector<Complex> best;
    double best_dist = -1;
    for (double h : {0.3, -0.3}) {
      std::vector<Complex> route{a, a + Complex(0, h), b + Complex(0, h), b};
      double d = detail::min_distance(route, zeros);
      if (d > best_dist) {
        best_dist = d;
        best = route;
      }
    }
    if (best_dist < 0.1) throw std::domain_error("no detour stays 0.1 away from the Hermite zeros");
    Complex sum = 0;
    for (std::size_t k = 0; k + 1 < best.size(); ++k) sum += integrate_leg(best[k], best[k + 1]);
    return sum;
  };

  SecondSolutionResult r;
  const Complex x0 = sol(path[0], pc);
  // ODE state: x_lambda, x_lambda', x~, x~' as functions of p
  detail::CState state{x0, sol.derivative(path[0], pc), 0.0, pc.q_at(path[0]) / x0};
  const Complex lam(static_cast<double>(lambda), 0);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Complex integral = 0, last_safe = path[0];
  double sup_quad = 0, sup_diff = 0;
  std::vector<Complex> w;
  auto record = [&](Complex p, const detail::CState& s) {
    Complex quad(nan, nan);
    if (!near_zero(p)) {
      if (p != last_safe) integral += integrate_between(last_safe, p);
      last_safe = p;
      quad = sol(p, pc) * integral;
      sup_quad = std::max(sup_quad, std::abs(quad));
      sup_diff = std::max(sup_diff, std::abs(quad - s[2]));
    }
    r.p.push_back(p);
    r.x_tilde_quadrature.push_back(quad);
    r.x_tilde_ode.push_back(s[2]);
    w.push_back((s[3] * s[0] - s[2] * s[1]) / pc.q_at(p));
  };
  record(path[0], state);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const Complex a = path[k], ab = path[k + 1] - path[k];
    auto rhs = [&](const detail::CState& s, detail::CState& ds, double t) {
      Complex p = a + t * ab;
      ds[0] = ab * s[1];
      ds[1] = ab * (-p * s[1] - lam * s[0]);
      ds[2] = ab * s[3];
      ds[3] = ab * (-p * s[3] - lam * s[2]);
    };
    boost::numeric::odeint::integrate_adaptive(detail::make_stepper(tol, tol), rhs, state, 0.0, 1.0, 1e-3);
    record(path[k + 1], state);
  }
  r.wronskian_constant = w.front();
  for (const auto& v : w)
    r.wronskian_deviation =
        std::max(r.wronskian_deviation, std::abs(v - r.wronskian_constant) / std::abs(r.wronskian_constant));
  r.quadrature_deviation = sup_quad > 0 ? sup_diff / sup_quad : sup_diff;
  return r;
}

/// Uniform samples of [a, b] on the real axis.
inline std::vector<Complex> real_path(double a, double b, int n = 31) {
  std::vector<Complex> out;
  for (int k = 0; k < n; ++k) out.emplace_back(a + (b - a) * k / (n - 1), 0.0);
  return out;
}

struct PlaneInvarianceResult {
  double max_off_plane = 0;  // sup over samples of |q_perp| + |p_perp|
  double final_time = 0;
};

/// Integrates the full Hamiltonian flow q' = p, p' = -V'(q) from (q0 d, p0 d) and
/// measures the components of (q, p) orthogonal (Hermitian) to d.
inline PlaneInvarianceResult plane_invariance(const Potential& v, const ComplexVec& d, Complex q0, Complex p0,
                                              double t1, double tol = 1e-12, int samples = 101) {
  const std::size_t n = v.nvars();
  const GradientVec grad = gradient(v);
  detail::CState state(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    state[i] = q0 * d[i];
    state[n + i] = p0 * d[i];
  }
  Complex dd = 0;
  for (const auto& c : d) dd += std::norm(c);
  auto off_plane = [&](const detail::CState& s, std::size_t offset) {
    Complex proj = 0;
    for (std::size_t i = 0; i < n; ++i) proj += std::conj(d[i]) * s[offset + i];
    proj /= dd;
    double m = 0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(s[offset + i] - proj * d[i]));
    return m;
  };
  auto rhs = [&](const detail::CState& s, detail::CState& ds, double) {
    ComplexVec q(s.begin(), s.begin() + static_cast<long>(n));
    for (std::size_t i = 0; i < n; ++i) {
      ds[i] = s[n + i];
      ds[n + i] = -grad[i].evaluate(q);
    }
  };
  std::vector<double> ts;
  for (int k = 0; k < samples; ++k) ts.push_back(t1 * k / (samples - 1));
  PlaneInvarianceResult r;
  boost::numeric::odeint::integrate_times(detail::make_stepper(tol, tol), rhs, state, ts.begin(), ts.end(), 1e-3,
                                          [&](const detail::CState& s, double t) {
                                            r.max_off_plane = std::max(r.max_off_plane, off_plane(s, 0) + off_plane(s, n));
                                            r.final_time = t;
                                          });
  return r;
}

struct NumericChecks {
  double ve_deviation = 0;          // numeric VE against the closed form, t in [0, 1]
  double wronskian_deviation = 0;   // along p in [0.5, 2]
  double quadrature_deviation = 0;  // along p in [0.5, 2]
};

/// Everything the lab states about one eigenvalue lambda.
struct CertificateBundle {
  GaussianRational lambda;
  PhaseCurve curve;
  PForm pform;
  KummerParams kummer;
  GaloisClass galois;
  std::optional<HermiteSolution> hermite;  // integer lambda only
  bool hermite_verified = false;           // exact residual is zero
  std::optional<Alpha1Certificate> alpha1;  // for the reduced lambda
  std::optional<NumericChecks> numeric;
  std::string note;
};

/// Integer eigenvalues above this size get no Hermite or alpha_1 data.
inline constexpr long kMaxCertifiedLambda = 60;

/// Builds the bundle. With require_hermite a non-integer lambda is an error.
inline CertificateBundle make_certificates(const GaussianRational& lambda, bool require_hermite = false,
                                           bool numeric = false, const PhaseCurve& pc = {}) {
  CertificateBundle b;
  b.lambda = lambda;
  b.curve = pc;
  b.pform = p_form(lambda);
  b.kummer = kummer_params(lambda);
  b.galois = galois_class(lambda);
  if (!lambda.is_integer()) {
    if (require_hermite) hermite_solution(lambda);  // throws with the reason
    b.note = "lambda is not an integer: no polynomial solution, the Galois group is GL(2,C)";
    return b;
  }
  const long l = lambda.re().get_num().get_si();
  if (std::abs(l) > kMaxCertifiedLambda) {
    b.note = "|lambda| exceeds " + std::to_string(kMaxCertifiedLambda) + "; closed forms not generated";
    return b;
  }
  b.hermite = hermite_solution(l);
  b.hermite_verified = verify_solution(*b.hermite).is_zero();
  b.alpha1 = alpha1_obstruction(reduced_lambda(l));
  if (numeric) {
    NumericChecks c;
    c.ve_deviation = integrate_ve_numeric(l, std::exp(pc.epsilon), 0.0, 1.0).max_rel_deviation;
    auto w = second_solution_numeric(l, real_path(0.5, 2.0), pc, true);
    c.wronskian_deviation = w.wronskian_deviation;
    c.quadrature_deviation = w.quadrature_deviation;
    b.numeric = c;
  }
  return b;
}

}  // namespace zerok

#endif
