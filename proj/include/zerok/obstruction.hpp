#ifndef ZEROK_OBSTRUCTION_HPP
#define ZEROK_OBSTRUCTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "zerok/darboux.hpp"
#include "zerok/mr_table.hpp"
#include "zerok/spectral.hpp"

namespace zerok {

enum class Status { NecessaryConditionsHold, NonIntegrable, Indeterminate, NotApplicable };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::NecessaryConditionsHold: return "NecessaryConditionsHold";
    case Status::NonIntegrable: return "NonIntegrable";
    case Status::Indeterminate: return "Indeterminate";
    case Status::NotApplicable: return "NotApplicable";
  }
  return "?";
}

enum class ReasonKind { NonIntegerEigenvalue, JordanBlock, TableMiss, JordanRowRule, IndeterminateSpectrum };

inline const char* reason_name(ReasonKind r) {
  switch (r) {
    case ReasonKind::NonIntegerEigenvalue: return "NonIntegerEigenvalue";
    case ReasonKind::JordanBlock: return "JordanBlock";
    case ReasonKind::TableMiss: return "TableMiss";
    case ReasonKind::JordanRowRule: return "JordanRowRule";
    case ReasonKind::IndeterminateSpectrum: return "IndeterminateSpectrum";
  }
  return "?";
}

/// One obstruction certificate.
struct Reason {
  ReasonKind kind = ReasonKind::NonIntegerEigenvalue;
  Eigenvalue eigenvalue;
  int block_size = 1;                  // JordanBlock, JordanRowRule
  int k = 0;                           // TableMiss, JordanRowRule
  std::vector<TableRowMatch> matches;  // JordanRowRule: the rows the eigenvalue does match
  bool numeric = false;                // decided from float data
  std::string note;
};

struct Verdict {
  Status status = Status::NecessaryConditionsHold;
  std::vector<Reason> reasons;
};

namespace detail {

inline Verdict close(std::vector<Reason> reasons, bool indeterminate) {
  Verdict v;
  v.reasons = std::move(reasons);
  if (!v.reasons.empty())
    v.status = Status::NonIntegrable;
  else if (indeterminate)
    v.status = Status::Indeterminate;
  return v;
}

inline Verdict indeterminate_verdict(const SpectralData& sd) {
  Verdict v;
  v.status = Status::Indeterminate;
  Reason r;
  r.kind = ReasonKind::IndeterminateSpectrum;
  r.numeric = !sd.exact;
  r.note = sd.note;
  v.reasons.push_back(r);
  return v;
}

}  // namespace detail

/// Degree-zero conditions at one Darboux point: every eigenvalue of V''(d) is an
/// integer and V''(d) is semi-simple.
inline Verdict degree_zero_check(const SpectralData& sd) {
  if (sd.indeterminate) return detail::indeterminate_verdict(sd);
  std::vector<Reason> reasons;
  for (const auto& e : sd.eigenvalues)
    if (!e.eigenvalue.is_integer()) {
      Reason r;
      r.kind = ReasonKind::NonIntegerEigenvalue;
      r.eigenvalue = e.eigenvalue;
      r.numeric = !sd.exact;
      reasons.push_back(r);
    }
  for (const auto& b : sd.blocks)
    if (b.size >= 2 && b.eigenvalue.is_integer()) {
      Reason r;
      r.kind = ReasonKind::JordanBlock;
      r.eigenvalue = b.eigenvalue;
      r.block_size = b.size;
      r.numeric = !sd.exact;
      reasons.push_back(r);
    }
  return detail::close(std::move(reasons), false);
}

/// Exact value of an eigenvalue for table lookups; numeric values are rationalized.
inline std::optional<GaussianRational> table_value(const Eigenvalue& e) {
  if (e.exact) return e.value;
  auto re = rationalize(e.approx.real());
  auto im = std::abs(e.approx.imag()) < 1e-9 ? std::optional<Rational>(Rational(0)) : rationalize(e.approx.imag());
  if (!re || !im) return std::nullopt;
  return GaussianRational{*re, *im};
}

/// Table membership of every eigenvalue (nonzero degree).
inline Verdict table_check(int k, const SpectralData& sd) {
  if (sd.indeterminate) return detail::indeterminate_verdict(sd);
  std::vector<Reason> reasons;
  for (const auto& e : sd.eigenvalues) {
    auto value = table_value(e.eigenvalue);
    bool member = false;
    if (value)
      member = !mr_table_membership(k, *value).empty();
    else
      member = k == 2 || k == -2;
    if (!member) {
      Reason r;
      r.kind = ReasonKind::TableMiss;
      r.eigenvalue = e.eigenvalue;
      r.k = k;
      r.numeric = !e.eigenvalue.exact;
      if (!value) r.note = "eigenvalue could not be rationalized";
      reasons.push_back(r);
    }
  }
  return detail::close(std::move(reasons), false);
}

/// Jordan-block rules for k not in {-2, 0, 2}: no block of size >= 3, and a block of
/// size 2 needs its eigenvalue in a table row numbered above two.
inline Verdict jordan_obstruction(int k, const SpectralData& sd) {
  if (k == 0 || k == 2 || k == -2) throw std::invalid_argument("Jordan-block rules need k outside {-2, 0, 2}");
  if (sd.indeterminate) return detail::indeterminate_verdict(sd);
  std::vector<Reason> reasons;
  for (const auto& b : sd.blocks) {
    if (b.size >= 3) {
      Reason r;
      r.kind = ReasonKind::JordanBlock;
      r.eigenvalue = b.eigenvalue;
      r.block_size = b.size;
      r.numeric = !sd.exact;
      reasons.push_back(r);
    } else if (b.size == 2) {
      auto value = table_value(b.eigenvalue);
      std::vector<TableRowMatch> matches;
      if (value) matches = mr_table_membership(k, *value);
      bool high_row = std::any_of(matches.begin(), matches.end(), [](const auto& m) { return m.row > 2; });
      if (!high_row) {
        Reason r;
        r.kind = ReasonKind::JordanRowRule;
        r.eigenvalue = b.eigenvalue;
        r.block_size = 2;
        r.k = k;
        r.matches = matches;
        r.numeric = !b.eigenvalue.exact;
        reasons.push_back(r);
      }
    }
  }
  return detail::close(std::move(reasons), false);
}

/// Combines verdicts: any certificate wins, then indeterminacy, then hold.
inline Status combine(Status a, Status b) {
  auto rank = [](Status s) {
    switch (s) {
      case Status::NonIntegrable: return 3;
      case Status::Indeterminate: return 2;
      case Status::NecessaryConditionsHold: return 1;
      case Status::NotApplicable: return 0;
    }
    return 0;
  };
  return rank(a) >= rank(b) ? a : b;
}

/// The full verdict at one point of degree k.
inline Verdict point_verdict(int k, const SpectralData& sd) {
  if (k == 0) return degree_zero_check(sd);
  Verdict v = table_check(k, sd);
  if (k != 2 && k != -2 && v.status != Status::Indeterminate) {
    Verdict j = jordan_obstruction(k, sd);
    v.reasons.insert(v.reasons.end(), j.reasons.begin(), j.reasons.end());
    v.status = combine(v.status, j.status);
  }
  return v;
}

inline std::string hypothesis_statement(int k) {
  if (k == 0) return "the system is integrable in the Liouville sense with rational first integrals";
  return "the system is integrable in the Liouville sense with first integrals which are meromorphic in a "
         "connected neighbourhood of Gamma_{k,epsilon}, with epsilon in C*";
}

struct AnalyzeOptions {
  bool numeric = false;           // force the numeric path
  bool include_table = false;     // record table matches per eigenvalue (k != 0)
  DarbouxSearchOptions search;
  SpectralThresholds thresholds;
};

struct PointAnalysis {
  std::optional<ProjectiveDarboux> projective;
  DarbouxPointNumeric point;
  bool representative = false;  // stands for a continuum of Darboux points
  HessianAtPoint hessian;
  SpectralData spectral;
  std::vector<std::vector<TableRowMatch>> table_matches;  // parallel to spectral.eigenvalues
  Verdict verdict;
};

struct Analysis {
  std::string name;
  std::string input;
  std::vector<std::string> vars;
  std::string canonical;
  int degree = 0;
  std::string path;  // "exact" or "numeric"
  bool continuum = false;
  int abandoned_seeds = 0;
  std::vector<PointAnalysis> points;
  Status status = Status::NotApplicable;
  std::string hypothesis;
  std::string note;
};

namespace detail {

inline void finish_point(int k, PointAnalysis& pa, const AnalyzeOptions& opt) {
  pa.spectral = eigen_structure(pa.hessian, opt.thresholds);
  pa.verdict = point_verdict(k, pa.spectral);
  if (opt.include_table && k != 0)
    for (const auto& e : pa.spectral.eigenvalues) {
      auto value = table_value(e.eigenvalue);
      pa.table_matches.push_back(value ? mr_table_membership(k, *value) : std::vector<TableRowMatch>{});
    }
}

}  // namespace detail

/// Darboux points, spectral data and verdicts of a potential. The overall status is
/// NonIntegrable as soon as one point certifies it, since the conditions are
/// necessary at every Darboux point.
inline Analysis analyze(const Potential& v, const AnalyzeOptions& opt = {}) {
  Analysis a;
  a.input = v.str();
  a.vars = v.varnames;
  a.canonical = v.str();
  a.degree = v.degree;
  a.hypothesis = hypothesis_statement(v.degree);
  const int k = v.degree;

  if (k == 0 && v.nvars() == 2 && !opt.numeric) {
    a.path = "exact";
    const RatFunc vz = restrict_projective(v);
    // one entry per projective point; the antipodal branch -d has the same Hessian
    for (const auto& pd : darboux_2d(v)) {
      PointAnalysis pa;
      pa.projective = pd;
      pa.point = embed_2d(pd, v);
      pa.hessian = hessian_at_2d(pd, vz);
      detail::finish_point(k, pa, opt);
      a.points.push_back(std::move(pa));
    }
  } else {
    a.path = "numeric";
    DarbouxSearchResult found = darboux_nd(v, opt.search);
    a.continuum = found.continuum;
    a.abandoned_seeds = found.abandoned_seeds;
    if (found.continuum) {
      // V'' is the identity everywhere; e1 represents every point
      PointAnalysis pa;
      std::vector<GaussianRational> e1(v.nvars(), GaussianRational(0));
      e1[0] = 1;
      pa.point.coords.assign(v.nvars(), 0.0);
      pa.point.coords[0] = 1.0;
      pa.representative = true;
      pa.hessian.exact = true;
      pa.hessian.exact_entries = hessian_exact_at(v, e1);
      detail::finish_point(k, pa, opt);
      a.points.push_back(std::move(pa));
    } else {
      for (const auto& d : found.points) {
        PointAnalysis pa;
        pa.point = d;
        pa.hessian = hessian_numeric(v, d.coords);
        detail::finish_point(k, pa, opt);
        a.points.push_back(std::move(pa));
      }
    }
  }
  for (const auto& pa : a.points) a.status = combine(a.status, pa.verdict.status);
  if (a.points.empty()) a.note = "no proper Darboux point; the obstruction checks do not apply";
  return a;
}

}  // namespace zerok

#endif
