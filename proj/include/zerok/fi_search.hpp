#ifndef ZEROK_FI_SEARCH_HPP
#define ZEROK_FI_SEARCH_HPP

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zerok/linalg.hpp"
#include "zerok/parallel.hpp"
#include "zerok/potential.hpp"
#include "zerok/ratfunc.hpp"

namespace zerok {

// Phase-space functions are RatFuncs in 2n variables: q1..qn, then p1..pn.

/// Canonical bracket sum_i dF/dq_i dG/dp_i - dF/dp_i dG/dq_i.
inline RatFunc poisson_bracket(const RatFunc& f, const RatFunc& g, std::size_t n) {
  if (f.nvars() != 2 * n || g.nvars() != 2 * n) throw std::invalid_argument("bracket arity must be 2n");
  RatFunc r(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    r += f.derivative(i) * g.derivative(n + i);
    r -= f.derivative(n + i) * g.derivative(i);
  }
  return r;
}

/// Lifts a function of q to phase space.
inline MultiPoly lift_to_phase_space(const MultiPoly& p) {
  const std::size_t n = p.nvars();
  MultiPoly r(2 * n);
  for (const auto& [e, c] : p.terms()) {
    Exponents f(e);
    f.resize(2 * n, 0);
    r.add_term(std::move(f), c);
  }
  return r;
}

inline RatFunc lift_to_phase_space(const RatFunc& f) {
  return {lift_to_phase_space(f.num()), lift_to_phase_space(f.den())};
}

inline std::vector<std::string> phase_space_names(const std::vector<std::string>& qnames) {
  std::vector<std::string> names = qnames;
  for (const auto& q : qnames) {
    std::string p = q;
    if (!p.empty() && p[0] == 'q')
      p[0] = 'p';
    else
      p = "p_" + p;
    names.push_back(p);
  }
  return names;
}

/// H = |p|^2 / 2 + V(q).
inline RatFunc hamiltonian(const Potential& v) {
  const std::size_t n = v.nvars();
  MultiPoly kinetic(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    Exponents e(2 * n, 0);
    e[n + i] = 2;
    kinetic.add_term(std::move(e), GaussianRational(make_rational(1, 2)));
  }
  return RatFunc(kinetic) + lift_to_phase_space(v.expr);
}

/// Laurent polynomial (negative exponents allowed) as a canonical RatFunc.
inline RatFunc laurent_to_ratfunc(const MultiPoly& p) {
  const std::size_t m = p.nvars();
  Exponents low(m, 0);
  for (const auto& [e, c] : p.terms())
    for (std::size_t k = 0; k < m; ++k) low[k] = std::min(low[k], e[k]);
  Exponents shift(m), den(m);
  for (std::size_t k = 0; k < m; ++k) {
    shift[k] = -low[k];
    den[k] = -low[k];
  }
  return {p.shifted(shift), MultiPoly::monomial(den, GaussianRational(1))};
}

/// F = sum c q^alpha p^beta with |beta| <= pdeg, alpha_1 in [-a, b], alpha_j in [0, b] for j > 1.
struct MomentumAnsatz {
  int pdeg = 2;
  int a = 0;
  int b = 0;
  std::size_t cap = 20000;

  std::size_t q_monomials(std::size_t n) const {
    std::size_t r = static_cast<std::size_t>(a + b + 1);
    for (std::size_t j = 1; j < n; ++j) r *= static_cast<std::size_t>(b + 1);
    return r;
  }
  std::size_t p_monomials(std::size_t n) const {
    // monomials of total degree <= pdeg in n variables: C(pdeg + n, n)
    std::size_t r = 1;
    for (std::size_t j = 1; j <= n; ++j) r = r * (static_cast<std::size_t>(pdeg) + j) / j;
    return r;
  }
  std::size_t dimension(std::size_t n) const { return q_monomials(n) * p_monomials(n); }
  std::string str() const {
    return "momentum degree <= " + std::to_string(pdeg) + ", q1 exponents in [" + std::to_string(-a) + ", " +
           std::to_string(b) + "], other q exponents in [0, " + std::to_string(b) + "]";
  }
};

/// Default box: a = b = 2 deg(den V) + pdeg.
inline MomentumAnsatz default_ansatz(const Potential& v, int pdeg) {
  MomentumAnsatz m;
  m.pdeg = pdeg;
  m.a = m.b = 2 * v.expr.den().total_degree() + pdeg;
  return m;
}

class AnsatzTooLarge : public std::runtime_error {
 public:
  AnsatzTooLarge(std::size_t dim, std::size_t cap)
      : std::runtime_error("ansatz dimension " + std::to_string(dim) + " exceeds the cap " + std::to_string(cap)),
        dimension(dim) {}
  std::size_t dimension;
};

struct FIBlockStats {
  int weight = 0;  // 2 |alpha| + k |beta|
  int parity = 0;  // |beta| mod 2
  std::size_t columns = 0;
  std::size_t equations = 0;
  std::size_t nullity = 0;
};

struct FIBasis {
  MomentumAnsatz ansatz;
  std::size_t dimension = 0;
  std::vector<FIBlockStats> blocks;
  std::vector<RatFunc> basis;
  std::vector<RatFunc> independent_of_H;
  std::vector<int> h_powers;  // m with H^m inside the ansatz
  std::string scope;
};

namespace detail {

struct FIColumn {
  Exponents alpha, beta;
};

inline void enumerate_exponents(std::size_t n, const std::vector<std::pair<int, int>>& range, Exponents& cur,
                                std::size_t i, std::vector<Exponents>& out) {
  if (i == n) {
    out.push_back(cur);
    return;
  }
  for (int e = range[i].first; e <= range[i].second; ++e) {
    cur[i] = e;
    enumerate_exponents(n, range, cur, i + 1, out);
  }
}

inline std::vector<Exponents> momentum_exponents(std::size_t n, int pdeg) {
  std::vector<Exponents> all;
  Exponents cur(n, 0);
  enumerate_exponents(n, std::vector<std::pair<int, int>>(n, {0, pdeg}), cur, 0, all);
  std::vector<Exponents> out;
  for (auto& e : all)
    if (total_degree(e) <= pdeg) out.push_back(std::move(e));
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

inline Exponents join(const Exponents& alpha, const Exponents& beta) {
  Exponents e = alpha;
  e.insert(e.end(), beta.begin(), beta.end());
  return e;
}

}  // namespace detail

/// Exact search for first integrals polynomial in p with Laurent coefficients in q.
///
/// {H, F} = 0 is multiplied by the common denominator D of grad V, giving the linear
/// condition sum_i N_i dF/dp_i - D p_i dF/dq_i = 0 with grad V = N / D. Since V is
/// homogeneous of degree k, the bracket with H respects the weight 2 |alpha| + k |beta|
/// and the parity of |beta|, so each (weight, parity) block is solved on its own.
inline FIBasis fi_search(const Potential& v, const MomentumAnsatz& ansatz) {
  const std::size_t n = v.nvars();
  const int k = v.degree;
  FIBasis out;
  out.ansatz = ansatz;
  out.dimension = ansatz.dimension(n);
  if (ansatz.pdeg < 0 || ansatz.a < 0 || ansatz.b < 0) throw std::invalid_argument("ansatz bounds must be >= 0");
  if (out.dimension > ansatz.cap) throw AnsatzTooLarge(out.dimension, ansatz.cap);
  out.scope = "first integrals with " + ansatz.str() + "; coefficients outside this box are not searched";

  const MultiPoly& num = v.expr.num();
  const MultiPoly& den = v.expr.den();
  if (!den.is_monomial())
    out.scope += "; V has a non-monomial denominator, so H is outside the ansatz and only constants are filtered";
  const MultiPoly dcommon = lift_to_phase_space(den * den);
  std::vector<MultiPoly> ngrad;
  for (std::size_t i = 0; i < n; ++i)
    ngrad.push_back(lift_to_phase_space(num.derivative(i) * den - num * den.derivative(i)));

  // columns grouped into blocks
  std::vector<std::pair<int, int>> qrange(n, {0, ansatz.b});
  qrange[0].first = -ansatz.a;
  std::vector<Exponents> alphas;
  Exponents cur(n, 0);
  detail::enumerate_exponents(n, qrange, cur, 0, alphas);
  const std::vector<Exponents> betas = detail::momentum_exponents(n, ansatz.pdeg);
  std::map<std::pair<int, int>, std::vector<detail::FIColumn>> grouped;
  for (const auto& al : alphas)
    for (const auto& be : betas) {
      int bd = total_degree(be);
      grouped[{2 * total_degree(al) + k * bd, bd % 2}].push_back({al, be});
    }
  std::vector<std::pair<int, int>> keys;
  std::vector<std::vector<detail::FIColumn>> blocks;
  for (auto& [key, cols] : grouped) {
    keys.push_back(key);
    blocks.push_back(std::move(cols));
  }

  // assembly, parallel over blocks
  std::vector<QiMatrix> matrices(blocks.size());
  parallel_for(blocks.size(), [&](std::size_t bi) {
    const auto& cols = blocks[bi];
    std::vector<MultiPoly> images;
    std::map<Exponents, std::size_t, GrlexLess> rows;
    for (const auto& c : cols) {
      MultiPoly img(2 * n);
      for (std::size_t i = 0; i < n; ++i) {
        if (c.beta[i] > 0) {
          Exponents be = c.beta;
          be[i] -= 1;
          img += ngrad[i].shifted(detail::join(c.alpha, be)) * GaussianRational(c.beta[i]);
        }
        if (c.alpha[i] != 0) {
          Exponents al = c.alpha, be = c.beta;
          al[i] -= 1;
          be[i] += 1;
          img -= dcommon.shifted(detail::join(al, be)) * GaussianRational(c.alpha[i]);
        }
      }
      for (const auto& [e, coef] : img.terms()) rows.emplace(e, 0);
      images.push_back(std::move(img));
    }
    std::size_t r = 0;
    for (auto& [e, idx] : rows) idx = r++;
    QiMatrix m(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [e, coef] : images[j].terms()) m(rows.at(e), j) = coef;
    matrices[bi] = std::move(m);
  });

  // powers of H that are Laurent polynomials inside the box
  std::vector<std::pair<int, MultiPoly>> hpow{{0, MultiPoly::constant(2 * n, 1)}};
  if (den.is_monomial()) {
    MultiPoly h(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      Exponents e(2 * n, 0);
      e[n + i] = 2;
      h.add_term(std::move(e), GaussianRational(make_rational(1, 2)));
    }
    Exponents inv = den.leading_exponents();
    for (auto& x : inv) x = -x;
    h += lift_to_phase_space(num.shifted(inv)) * den.leading_coefficient().inverse();
    MultiPoly hm = h;
    for (int m = 1; 2 * m <= ansatz.pdeg; ++m, hm *= h) {
      bool inside = true;
      for (const auto& [e, c] : hm.terms()) {
        Exponents beta(e.begin() + static_cast<long>(n), e.end());
        if (total_degree(beta) > ansatz.pdeg || e[0] < -ansatz.a) inside = false;
        for (std::size_t i = 0; i < n; ++i)
          if (e[i] > ansatz.b || (i > 0 && e[i] < 0)) inside = false;
      }
      if (inside) hpow.emplace_back(m, hm);
    }
  }
  for (const auto& [m, p] : hpow) out.h_powers.push_back(m);

  // elimination, serial and in block order
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& cols = blocks[bi];
    std::map<Exponents, std::size_t> index;
    for (std::size_t j = 0; j < cols.size(); ++j) index.emplace(detail::join(cols[j].alpha, cols[j].beta), j);
    std::vector<QiVector> null = nullspace(matrices[bi]);
    out.blocks.push_back({keys[bi].first, keys[bi].second, cols.size(), matrices[bi].rows(), null.size()});
    if (null.empty()) continue;

    std::vector<QiVector> hvecs;
    for (const auto& [m, p] : hpow) {
      QiVector x(cols.size());
      bool here = false;
      for (const auto& [e, c] : p.terms()) {
        auto it = index.find(e);
        if (it == index.end()) {
          here = false;
          break;
        }
        x[it->second] = c;
        here = true;
      }
      if (!here) continue;
      for (const auto& y : zerok::apply(matrices[bi], x))
        if (!y.is_zero()) throw std::logic_error("a power of H failed the bracket equation");
      hvecs.push_back(std::move(x));
    }
    auto to_function = [&](const QiVector& x) {
      MultiPoly f(2 * n);
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (!x[j].is_zero()) f.add_term(detail::join(cols[j].alpha, cols[j].beta), x[j]);
      return laurent_to_ratfunc(f);
    };
    // columns [H powers | nullspace]; pivots past the H powers leave their span
    QiMatrix stacked(cols.size(), hvecs.size() + null.size());
    for (std::size_t c = 0; c < hvecs.size(); ++c)
      for (std::size_t r = 0; r < cols.size(); ++r) stacked(r, c) = hvecs[c][r];
    for (std::size_t c = 0; c < null.size(); ++c)
      for (std::size_t r = 0; r < cols.size(); ++r) stacked(r, hvecs.size() + c) = null[c][r];
    FractionFreeEchelon ech = fraction_free_echelon(stacked);
    for (const auto& x : null) out.basis.push_back(to_function(x));
    for (std::size_t pc : ech.pivot_cols)
      if (pc >= hvecs.size()) out.independent_of_H.push_back(to_function(null[pc - hvecs.size()]));
  }
  return out;
}

struct IndependenceReport {
  std::vector<std::size_t> ranks;  // Jacobian rank at each regular sample point
  std::size_t singular_points = 0;
  bool independent = false;  // rank 2 at some sample point
};

/// Rank of the Jacobian of (H, F) at 5 random integer points of phase space.
inline IndependenceReport independence_check(const RatFunc& h, const RatFunc& f, std::uint64_t seed = 1,
                                             int samples = 5) {
  const std::size_t m = h.nvars();
  if (f.nvars() != m) throw std::invalid_argument("independence check arity mismatch");
  std::vector<RatFunc> dh, df;
  for (std::size_t i = 0; i < m; ++i) {
    dh.push_back(h.derivative(i));
    df.push_back(f.derivative(i));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-7, 7);
  IndependenceReport rep;
  for (int s = 0; s < samples; ++s) {
    std::vector<GaussianRational> x(m);
    for (auto& c : x) c = GaussianRational(coord(rng));
    QiMatrix jac(2, m);
    try {
      for (std::size_t i = 0; i < m; ++i) {
        jac(0, i) = dh[i].evaluate(x);
        jac(1, i) = df[i].evaluate(x);
      }
    } catch (const std::domain_error&) {
      ++rep.singular_points;
      continue;
    }
    rep.ranks.push_back(rank(jac));
    if (rep.ranks.back() == 2) rep.independent = true;
  }
  if (rep.ranks.empty()) throw std::domain_error("every sample point is singular");
  return rep;
}

}  // namespace zerok

#endif
