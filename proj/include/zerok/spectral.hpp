#ifndef ZEROK_SPECTRAL_HPP
#define ZEROK_SPECTRAL_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "zerok/darboux.hpp"
#include "zerok/linalg.hpp"
#include "zerok/roots.hpp"

namespace zerok {

/// Hessian V''(d) at a Darboux point, either exact over Q(i) or complex floats.
struct HessianAtPoint {
  bool exact = true;
  QiMatrix exact_entries;
  Eigen::MatrixXcd numeric_entries;

  std::size_t n() const { return exact ? exact_entries.rows() : static_cast<std::size_t>(numeric_entries.rows()); }
};

/// Eigenvalue known exactly in Q(i) or only as a float approximation.
struct Eigenvalue {
  bool exact = true;
  GaussianRational value;
  Complex approx;

  static Eigenvalue of(const GaussianRational& g) { return {true, g, g.to_complex()}; }
  static Eigenvalue numeric(Complex c) { return {false, GaussianRational(0), c}; }

  bool is_integer() const { return exact && value.is_integer(); }
  std::string str() const {
    if (exact) return value.str();
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", approx.real(), approx.imag());
    return buf;
  }
};

/// Jordan block B(eigenvalue, size).
struct JordanBlockDesc {
  Eigenvalue eigenvalue;
  int size = 1;
};

struct EigenMultiplicity {
  Eigenvalue eigenvalue;
  int multiplicity = 1;
};

struct SpectralData {
  bool exact = true;
  UniPoly char_poly;  // exact path only
  std::vector<EigenMultiplicity> eigenvalues;
  std::vector<JordanBlockDesc> blocks;
  bool semisimple = true;
  bool all_integer = true;
  bool indeterminate = false;  // numeric Jordan structure could not be resolved
  std::string note;
};

struct SpectralThresholds {
  double rank_rel = 1e-8;       // singular values below rank_rel * ||A|| count as zero
  double cluster_rel = 1e-4;    // eigenvalues closer than this (relative) are one cluster
  double integer_abs = 1e-7;    // |lambda - round(lambda)| for integer detection
};

/// Exact Hessian at a two-variable degree-0 Darboux point from v(z):
/// [[-v'' s - 2, -(v' + z v'') s], [-(v' + z v'') s, v'' s]] with s = 1/x*^2.
inline HessianAtPoint hessian_at_2d(const ProjectiveDarboux& pd, const RatFunc& v) {
  if (v.nvars() != 1) throw std::invalid_argument("hessian_at_2d expects v(z) in one variable");
  const RatFunc d1 = v.derivative(0), d2 = d1.derivative(0);
  const GaussianRational& z = pd.z_star;
  GaussianRational v1 = d1.evaluate({z}), v2 = d2.evaluate({z});
  GaussianRational s = pd.x_star_sq.inverse();
  GaussianRational off = -(v1 + z * v2) * s;
  HessianAtPoint h;
  h.exact = true;
  h.exact_entries = QiMatrix(2, 2);
  h.exact_entries(0, 0) = -v2 * s - GaussianRational(2);
  h.exact_entries(0, 1) = off;
  h.exact_entries(1, 0) = off;
  h.exact_entries(1, 1) = v2 * s;
  return h;
}

/// V''(q) evaluated exactly at a point of Q(i)^n.
inline QiMatrix hessian_exact_at(const Potential& v, const std::vector<GaussianRational>& q) {
  HessianFunc h = hessian(v);
  QiMatrix m(h.n, h.n);
  for (std::size_t i = 0; i < h.n; ++i)
    for (std::size_t j = 0; j < h.n; ++j) m(i, j) = h(i, j).evaluate(q);
  return m;
}

inline HessianAtPoint hessian_numeric(const Potential& v, const ComplexVec& d) {
  HessianFunc h = hessian(v);
  HessianAtPoint out;
  out.exact = false;
  out.numeric_entries.resize(static_cast<Eigen::Index>(h.n), static_cast<Eigen::Index>(h.n));
  for (std::size_t i = 0; i < h.n; ++i)
    for (std::size_t j = 0; j < h.n; ++j)
      out.numeric_entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = h(i, j).evaluate(d);
  return out;
}

inline Eigen::MatrixXcd to_eigen(const QiMatrix& a) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j).to_complex();
  return m;
}

namespace detail {

/// Block sizes from the nullity sequence nullity((A - lambda)^j), j = 0..m.
/// Returns nullopt when the sequence is not a valid Jordan profile.
inline std::optional<std::vector<int>> blocks_from_nullities(const std::vector<int>& nullity, int multiplicity) {
  // nullity[0] = 0
  const int m = multiplicity;
  if (static_cast<int>(nullity.size()) != m + 1 || nullity[static_cast<std::size_t>(m)] != m || nullity[1] < 1)
    return std::nullopt;
  std::vector<int> at_least(static_cast<std::size_t>(m + 2), 0);
  for (int j = 1; j <= m; ++j) {
    at_least[static_cast<std::size_t>(j)] = nullity[static_cast<std::size_t>(j)] - nullity[static_cast<std::size_t>(j - 1)];
    if (at_least[static_cast<std::size_t>(j)] < 0) return std::nullopt;
    if (j > 1 && at_least[static_cast<std::size_t>(j)] > at_least[static_cast<std::size_t>(j - 1)]) return std::nullopt;
  }
  std::vector<int> sizes;
  for (int j = m; j >= 1; --j) {
    int exactly = at_least[static_cast<std::size_t>(j)] - at_least[static_cast<std::size_t>(j + 1)];
    for (int c = 0; c < exactly; ++c) sizes.push_back(j);
  }
  return sizes;
}

inline void finish(SpectralData& sd) {
  sd.semisimple = std::all_of(sd.blocks.begin(), sd.blocks.end(), [](const auto& b) { return b.size == 1; });
  sd.all_integer = std::all_of(sd.eigenvalues.begin(), sd.eigenvalues.end(),
                               [](const auto& e) { return e.eigenvalue.is_integer(); });
}

}  // namespace detail

/// Exact spectral data over Q(i). Integer eigenvalues come from integer_roots of
/// the characteristic polynomial; other Q(i) roots are exact witnesses; the rest
/// are reported numerically. Semisimplicity is decided by whether the squarefree
/// part of the characteristic polynomial annihilates A.
inline SpectralData eigen_structure_exact(const QiMatrix& a) {
  const std::size_t n = a.rows();
  SpectralData sd;
  sd.exact = true;
  sd.char_poly = characteristic_polynomial(a);
  UniPoly rest = sd.char_poly;

  std::vector<GaussianRoot> exact_roots;
  for (const auto& r : integer_roots(rest)) exact_roots.push_back({GaussianRational(Rational(r.value)), r.multiplicity});
  for (const auto& r : exact_roots) strip_root(rest, r.value);
  if (rest.degree() > 0)
    for (const auto& r : gaussian_rational_roots(rest)) {
      exact_roots.push_back(r);
      strip_root(rest, r.value);
    }
  std::sort(exact_roots.begin(), exact_roots.end(), [](const auto& x, const auto& y) { return x.value < y.value; });

  const QiMatrix id = QiMatrix::identity(n);
  for (const auto& r : exact_roots) {
    sd.eigenvalues.push_back({Eigenvalue::of(r.value), r.multiplicity});
    QiMatrix shifted = a - r.value * id;
    std::vector<int> nullity{0};
    QiMatrix power = id;
    for (int j = 1; j <= r.multiplicity; ++j) {
      power = power * shifted;
      nullity.push_back(static_cast<int>(n - rank(power)));
    }
    auto sizes = detail::blocks_from_nullities(nullity, r.multiplicity);
    if (!sizes) throw std::logic_error("exact Jordan profile is inconsistent");
    for (int s : *sizes) sd.blocks.push_back({Eigenvalue::of(r.value), s});
  }

  // factors without roots in Q(i): aggregate Jordan data per squarefree factor
  auto parts = squarefree_decomposition(rest);
  for (std::size_t mi = 0; mi < parts.size(); ++mi) {
    const UniPoly& f = parts[mi];
    if (f.degree() <= 0) continue;
    const int mult = static_cast<int>(mi + 1);
    const int deg = f.degree();
    QiMatrix fa = evaluate_at_matrix(f, a);
    std::vector<int> nullity{0};
    QiMatrix power = id;
    for (int j = 1; j <= mult; ++j) {
      power = power * fa;
      nullity.push_back(static_cast<int>(n - rank(power)));
    }
    std::vector<int> per_root(nullity.size(), 0);
    bool uniform = true;
    for (std::size_t j = 0; j < nullity.size(); ++j) {
      if (nullity[j] % deg != 0) uniform = false;
      per_root[j] = nullity[j] / deg;
    }
    auto sizes = uniform ? detail::blocks_from_nullities(per_root, mult) : std::nullopt;
    for (const auto& z : numeric_roots(f)) {
      sd.eigenvalues.push_back({Eigenvalue::numeric(z), mult});
      if (sizes)
        for (int s : *sizes) sd.blocks.push_back({Eigenvalue::numeric(z), s});
    }
    if (!sizes) {
      sd.indeterminate = true;
      sd.note = "Jordan structure of irrational eigenvalues not attributable per root";
    }
  }
  detail::finish(sd);
  // cross-check: semisimple iff the squarefree part of the characteristic polynomial annihilates A
  bool annihilates = evaluate_at_matrix(squarefree_part(sd.char_poly), a).is_zero();
  if (!sd.indeterminate && annihilates != sd.semisimple) throw std::logic_error("semisimplicity routes disagree");
  sd.semisimple = annihilates;
  return sd;
}

/// Numeric spectral data: eigenvalues from a dense complex solver, clustered;
/// Jordan structure per cluster from singular-value ranks of (A - mu I)^j.
inline SpectralData eigen_structure_numeric(const Eigen::MatrixXcd& a, const SpectralThresholds& th = {}) {
  const Eigen::Index n = a.rows();
  SpectralData sd;
  sd.exact = false;
  const double scale = std::max(1.0, a.norm());
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
  std::vector<Complex> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  // single-linkage clustering
  std::vector<int> cluster(static_cast<std::size_t>(n), -1);
  int nclusters = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (cluster[static_cast<std::size_t>(i)] >= 0) continue;
    std::vector<Eigen::Index> stack{i};
    cluster[static_cast<std::size_t>(i)] = nclusters;
    while (!stack.empty()) {
      Eigen::Index k = stack.back();
      stack.pop_back();
      for (Eigen::Index j = 0; j < n; ++j)
        if (cluster[static_cast<std::size_t>(j)] < 0 &&
            std::abs(ev[static_cast<std::size_t>(j)] - ev[static_cast<std::size_t>(k)]) < th.cluster_rel * scale) {
          cluster[static_cast<std::size_t>(j)] = nclusters;
          stack.push_back(j);
        }
    }
    ++nclusters;
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  for (int c = 0; c < nclusters; ++c) {
    Complex mu = 0;
    int m = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (cluster[static_cast<std::size_t>(i)] == c) {
        mu += ev[static_cast<std::size_t>(i)];
        ++m;
      }
    mu /= static_cast<double>(m);
    Eigenvalue e = Eigenvalue::numeric(mu);
    double rounded = std::round(mu.real());
    if (std::abs(mu - Complex(rounded, 0)) < th.integer_abs) e = Eigenvalue::of(GaussianRational(static_cast<long>(rounded)));
    sd.eigenvalues.push_back({e, m});

    Eigen::MatrixXcd shifted = a - mu * id, power = id;
    std::vector<int> nullity{0};
    for (int j = 1; j <= m; ++j) {
      power = power * shifted;
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(power);
      int null = 0;
      for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()(k) < th.rank_rel * std::pow(scale, j)) ++null;
      nullity.push_back(null);
    }
    auto sizes = detail::blocks_from_nullities(nullity, m);
    if (!sizes) {
      sd.indeterminate = true;
      sd.note = "clustered eigenvalues near " + e.str() + " have no consistent Jordan profile";
      continue;
    }
    for (int s : *sizes) sd.blocks.push_back({e, s});
  }
  detail::finish(sd);
  return sd;
}

inline SpectralData eigen_structure(const HessianAtPoint& h, const SpectralThresholds& th = {}) {
  return h.exact ? eigen_structure_exact(h.exact_entries) : eigen_structure_numeric(h.numeric_entries, th);
}

struct SemisimplicityResult {
  bool semisimple = true;
  std::optional<JordanBlockDesc> witness;  // a block of size >= 2 when not semisimple
  bool indeterminate = false;
};

inline SemisimplicityResult is_semisimple(const SpectralData& sd) {
  SemisimplicityResult r;
  r.indeterminate = sd.indeterminate;
  r.semisimple = sd.semisimple;
  for (const auto& b : sd.blocks)
    if (b.size >= 2) {
      r.witness = b;
      break;
    }
  return r;
}

inline SemisimplicityResult is_semisimple(const HessianAtPoint& h) { return is_semisimple(eigen_structure(h)); }

}  // namespace zerok

#endif
