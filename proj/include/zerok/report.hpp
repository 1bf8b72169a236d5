#ifndef ZEROK_REPORT_HPP
#define ZEROK_REPORT_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "zerok/fi_search.hpp"
#include "zerok/obstruction.hpp"
#include "zerok/variational.hpp"

namespace zerok {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "report_v1";

using Json = nlohmann::ordered_json;

/// Exit status of the command line tool as a function of the overall verdict.
inline int exit_code(Status s) {
  switch (s) {
    case Status::NonIntegrable: return 3;
    case Status::Indeterminate: return 4;
    case Status::NecessaryConditionsHold:
    case Status::NotApplicable: return 0;
  }
  return 0;
}

inline Status status_from_name(const std::string& s) {
  for (Status x : {Status::NecessaryConditionsHold, Status::NonIntegrable, Status::Indeterminate, Status::NotApplicable})
    if (s == status_name(x)) return x;
  throw std::invalid_argument("unknown status " + s);
}

inline ReasonKind reason_from_name(const std::string& s) {
  for (ReasonKind x : {ReasonKind::NonIntegerEigenvalue, ReasonKind::JordanBlock, ReasonKind::TableMiss,
                       ReasonKind::JordanRowRule, ReasonKind::IndeterminateSpectrum})
    if (s == reason_name(x)) return x;
  throw std::invalid_argument("unknown reason " + s);
}

struct ReportConfig {
  bool numeric = false;
  bool mr_table = false;
  int seeds = 64;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  Complex epsilon{0.0, 0.0};
  bool certificates = false;     // variational bundle per exact eigenvalue
  bool numeric_checks = false;   // numeric VE and Wronskian runs inside the bundles
  std::optional<int> fi_pdeg;    // run fi-search with this momentum degree
  std::optional<int> fi_box;     // a = b; default 2 deg(den) + pdeg

  AnalyzeOptions analyze_options() const {
    AnalyzeOptions o;
    o.numeric = numeric;
    o.include_table = mr_table;
    o.search.seeds = seeds;
    o.search.tol = tol;
    o.search.seed = seed;
    return o;
  }
};

struct IndependenceEntry {
  std::string function;
  IndependenceReport report;
};

struct FISummary {
  MomentumAnsatz ansatz;
  std::size_t dimension = 0;
  std::vector<FIBlockStats> blocks;
  std::vector<int> h_powers;
  std::vector<std::string> variables;
  std::vector<std::string> basis;
  std::vector<std::string> independent_of_H;
  std::vector<IndependenceEntry> independence;
  std::string scope;
};

struct Report {
  std::string tool_version = kToolVersion;
  ReportConfig config;
  Analysis analysis;
  std::vector<CertificateBundle> certificates;
  std::optional<FISummary> fi;
};

namespace json_io {

inline std::string decimal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_decimal(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

inline Json rational(const Rational& r) { return {{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}}; }

inline Rational rational_from(const Json& j) {
  return make_rational(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
}

inline Json gaussian(const GaussianRational& g) { return {{"re", rational(g.re())}, {"im", rational(g.im())}}; }

inline GaussianRational gaussian_from(const Json& j) { return {rational_from(j.at("re")), rational_from(j.at("im"))}; }

inline Json complex(Complex c) { return {{"re", decimal(c.real())}, {"im", decimal(c.imag())}}; }

inline Complex complex_from(const Json& j) {
  return {parse_decimal(j.at("re").get<std::string>()), parse_decimal(j.at("im").get<std::string>())};
}

inline Json gaussian_list(const std::vector<GaussianRational>& v) {
  Json a = Json::array();
  for (const auto& g : v) a.push_back(gaussian(g));
  return a;
}

inline std::vector<GaussianRational> gaussian_list_from(const Json& j) {
  std::vector<GaussianRational> v;
  for (const auto& e : j) v.push_back(gaussian_from(e));
  return v;
}

inline Json eigenvalue(const Eigenvalue& e) {
  Json j{{"exact", e.exact}};
  if (e.exact) j["value"] = gaussian(e.value);
  j["approx"] = complex(e.approx);
  return j;
}

inline Eigenvalue eigenvalue_from(const Json& j) {
  if (j.at("exact").get<bool>()) return Eigenvalue::of(gaussian_from(j.at("value")));
  return Eigenvalue::numeric(complex_from(j.at("approx")));
}

inline Json match(const TableRowMatch& m) {
  Json j{{"row", m.row}, {"family", m.family}};
  j["p"] = m.p ? Json(m.p->get_str()) : Json(nullptr);
  j["lambda"] = gaussian(m.lambda);
  return j;
}

inline TableRowMatch match_from(const Json& j) {
  TableRowMatch m;
  m.row = j.at("row").get<int>();
  m.family = j.at("family").get<int>();
  if (!j.at("p").is_null()) m.p = Integer(j.at("p").get<std::string>());
  m.lambda = gaussian_from(j.at("lambda"));
  return m;
}

inline Json matches(const std::vector<TableRowMatch>& ms) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(match(m));
  return a;
}

inline std::vector<TableRowMatch> matches_from(const Json& j) {
  std::vector<TableRowMatch> v;
  for (const auto& e : j) v.push_back(match_from(e));
  return v;
}

inline Json hessian(const HessianAtPoint& h) {
  Json rows = Json::array();
  const std::size_t n = h.n();
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < n; ++j)
      row.push_back(h.exact ? gaussian(h.exact_entries(i, j))
                            : complex(h.numeric_entries(static_cast<long>(i), static_cast<long>(j))));
    rows.push_back(std::move(row));
  }
  return {{"exact", h.exact}, {"entries", rows}};
}

inline HessianAtPoint hessian_from(const Json& j) {
  HessianAtPoint h;
  h.exact = j.at("exact").get<bool>();
  const auto& rows = j.at("entries");
  const std::size_t n = rows.size();
  if (h.exact) {
    h.exact_entries = QiMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) h.exact_entries(i, k) = gaussian_from(rows[i][k]);
  } else {
    h.numeric_entries = Eigen::MatrixXcd(static_cast<long>(n), static_cast<long>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        h.numeric_entries(static_cast<long>(i), static_cast<long>(k)) = complex_from(rows[i][k]);
  }
  return h;
}

inline Json spectral(const SpectralData& s) {
  Json eig = Json::array(), blocks = Json::array();
  for (const auto& e : s.eigenvalues) eig.push_back({{"eigenvalue", eigenvalue(e.eigenvalue)}, {"multiplicity", e.multiplicity}});
  for (const auto& b : s.blocks) blocks.push_back({{"eigenvalue", eigenvalue(b.eigenvalue)}, {"size", b.size}});
  return {{"exact", s.exact},
          {"char_poly", gaussian_list(s.char_poly.coeffs())},
          {"eigenvalues", eig},
          {"blocks", blocks},
          {"semisimple", s.semisimple},
          {"all_integer", s.all_integer},
          {"indeterminate", s.indeterminate},
          {"note", s.note}};
}

inline SpectralData spectral_from(const Json& j) {
  SpectralData s;
  s.exact = j.at("exact").get<bool>();
  s.char_poly = UniPoly(gaussian_list_from(j.at("char_poly")));
  for (const auto& e : j.at("eigenvalues"))
    s.eigenvalues.push_back({eigenvalue_from(e.at("eigenvalue")), e.at("multiplicity").get<int>()});
  for (const auto& b : j.at("blocks")) s.blocks.push_back({eigenvalue_from(b.at("eigenvalue")), b.at("size").get<int>()});
  s.semisimple = j.at("semisimple").get<bool>();
  s.all_integer = j.at("all_integer").get<bool>();
  s.indeterminate = j.at("indeterminate").get<bool>();
  s.note = j.at("note").get<std::string>();
  return s;
}

inline Json verdict(const Verdict& v) {
  Json reasons = Json::array();
  for (const auto& r : v.reasons)
    reasons.push_back({{"kind", reason_name(r.kind)},
                       {"eigenvalue", eigenvalue(r.eigenvalue)},
                       {"block_size", r.block_size},
                       {"k", r.k},
                       {"matches", matches(r.matches)},
                       {"numeric", r.numeric},
                       {"note", r.note}});
  return {{"status", status_name(v.status)}, {"reasons", reasons}};
}

inline Verdict verdict_from(const Json& j) {
  Verdict v;
  v.status = status_from_name(j.at("status").get<std::string>());
  for (const auto& r : j.at("reasons")) {
    Reason x;
    x.kind = reason_from_name(r.at("kind").get<std::string>());
    x.eigenvalue = eigenvalue_from(r.at("eigenvalue"));
    x.block_size = r.at("block_size").get<int>();
    x.k = r.at("k").get<int>();
    x.matches = matches_from(r.at("matches"));
    x.numeric = r.at("numeric").get<bool>();
    x.note = r.at("note").get<std::string>();
    v.reasons.push_back(std::move(x));
  }
  return v;
}

inline Json point(const PointAnalysis& p) {
  Json j;
  if (p.projective)
    j["projective"] = {{"z_star", gaussian(p.projective->z_star)},
                       {"v1", gaussian(p.projective->v1)},
                       {"x_star_sq", gaussian(p.projective->x_star_sq)},
                       {"branch", p.projective->branch}};
  else
    j["projective"] = nullptr;
  Json coords = Json::array();
  for (const auto& c : p.point.coords) coords.push_back(complex(c));
  j["coords"] = coords;
  j["residual"] = decimal(p.point.residual);
  j["newton_iters"] = p.point.newton_iters;
  j["representative"] = p.representative;
  j["hessian"] = hessian(p.hessian);
  j["spectral"] = spectral(p.spectral);
  Json tm = Json::array();
  for (const auto& m : p.table_matches) tm.push_back(matches(m));
  j["table_matches"] = tm;
  j["verdict"] = verdict(p.verdict);
  return j;
}

inline PointAnalysis point_from(const Json& j) {
  PointAnalysis p;
  if (!j.at("projective").is_null()) {
    const auto& pr = j.at("projective");
    p.projective = ProjectiveDarboux{gaussian_from(pr.at("z_star")), gaussian_from(pr.at("v1")),
                                     gaussian_from(pr.at("x_star_sq")), pr.at("branch").get<int>()};
  }
  for (const auto& c : j.at("coords")) p.point.coords.push_back(complex_from(c));
  p.point.residual = parse_decimal(j.at("residual").get<std::string>());
  p.point.newton_iters = j.at("newton_iters").get<int>();
  p.representative = j.at("representative").get<bool>();
  p.hessian = hessian_from(j.at("hessian"));
  p.spectral = spectral_from(j.at("spectral"));
  for (const auto& m : j.at("table_matches")) p.table_matches.push_back(matches_from(m));
  p.verdict = verdict_from(j.at("verdict"));
  return p;
}

inline Json config(const ReportConfig& c) {
  Json j{{"numeric", c.numeric},
         {"mr_table", c.mr_table},
         {"seeds", c.seeds},
         {"tol", decimal(c.tol)},
         {"seed", std::to_string(c.seed)},
         {"epsilon", complex(c.epsilon)},
         {"certificates", c.certificates},
         {"numeric_checks", c.numeric_checks}};
  j["fi_pdeg"] = c.fi_pdeg ? Json(*c.fi_pdeg) : Json(nullptr);
  j["fi_box"] = c.fi_box ? Json(*c.fi_box) : Json(nullptr);
  return j;
}

inline ReportConfig config_from(const Json& j) {
  ReportConfig c;
  c.numeric = j.at("numeric").get<bool>();
  c.mr_table = j.at("mr_table").get<bool>();
  c.seeds = j.at("seeds").get<int>();
  c.tol = parse_decimal(j.at("tol").get<std::string>());
  c.seed = std::stoull(j.at("seed").get<std::string>());
  c.epsilon = complex_from(j.at("epsilon"));
  c.certificates = j.at("certificates").get<bool>();
  c.numeric_checks = j.at("numeric_checks").get<bool>();
  if (!j.at("fi_pdeg").is_null()) c.fi_pdeg = j.at("fi_pdeg").get<int>();
  if (!j.at("fi_box").is_null()) c.fi_box = j.at("fi_box").get<int>();
  return c;
}

inline Json certificate(const CertificateBundle& b) {
  Json j{{"lambda", gaussian(b.lambda)},
         {"epsilon", complex(b.curve.epsilon)},
         {"p_form", b.pform.str()},
         {"kummer", {{"a", gaussian(b.kummer.a)}, {"c", gaussian(b.kummer.c)}}},
         {"galois",
          {{"over_base", galois_name(b.galois.over_base)},
           {"virtually_abelian_over_qp", b.galois.virtually_abelian_over_qp},
           {"dimension_over_qp", b.galois.dimension_over_qp}}}};
  if (b.hermite)
    j["hermite"] = {{"lambda", b.hermite->lambda},
                    {"poly", gaussian_list(b.hermite->poly.coeffs())},
                    {"q_factor", b.hermite->q_factor},
                    {"rotated", b.hermite->rotated},
                    {"expression", b.hermite->str()},
                    {"verified", b.hermite_verified}};
  else
    j["hermite"] = nullptr;
  if (b.alpha1)
    j["alpha1"] = {{"lambda", b.alpha1->lambda},
                   {"moment_value", gaussian(b.alpha1->moment_value)},
                   {"expected", b.alpha1->expected.get_str()},
                   {"unknowns", b.alpha1->unknowns},
                   {"equations", b.alpha1->equations},
                   {"system_consistent", b.alpha1->system_consistent},
                   {"conclusion", b.alpha1->conclusion}};
  else
    j["alpha1"] = nullptr;
  if (b.numeric)
    j["numeric"] = {{"ve_deviation", decimal(b.numeric->ve_deviation)},
                    {"wronskian_deviation", decimal(b.numeric->wronskian_deviation)},
                    {"quadrature_deviation", decimal(b.numeric->quadrature_deviation)}};
  else
    j["numeric"] = nullptr;
  j["note"] = b.note;
  return j;
}

inline CertificateBundle certificate_from(const Json& j) {
  CertificateBundle b;
  b.lambda = gaussian_from(j.at("lambda"));
  b.curve.epsilon = complex_from(j.at("epsilon"));
  b.pform = p_form(b.lambda);
  b.kummer = {gaussian_from(j.at("kummer").at("a")), gaussian_from(j.at("kummer").at("c"))};
  const auto& g = j.at("galois");
  b.galois.over_base = g.at("over_base").get<std::string>() == galois_name(GaloisGroup::GL2) ? GaloisGroup::GL2
                                                                                              : GaloisGroup::AdditiveSemidirect;
  b.galois.virtually_abelian_over_qp = g.at("virtually_abelian_over_qp").get<bool>();
  b.galois.dimension_over_qp = g.at("dimension_over_qp").get<int>();
  if (!j.at("hermite").is_null()) {
    const auto& h = j.at("hermite");
    HermiteSolution s;
    s.lambda = h.at("lambda").get<long>();
    s.poly = UniPoly(gaussian_list_from(h.at("poly")));
    s.q_factor = h.at("q_factor").get<bool>();
    s.rotated = h.at("rotated").get<bool>();
    b.hermite = s;
    b.hermite_verified = h.at("verified").get<bool>();
  }
  if (!j.at("alpha1").is_null()) {
    const auto& a = j.at("alpha1");
    Alpha1Certificate c;
    c.lambda = a.at("lambda").get<long>();
    c.moment_value = gaussian_from(a.at("moment_value"));
    c.expected = Integer(a.at("expected").get<std::string>());
    c.unknowns = a.at("unknowns").get<std::size_t>();
    c.equations = a.at("equations").get<std::size_t>();
    c.system_consistent = a.at("system_consistent").get<bool>();
    c.conclusion = a.at("conclusion").get<std::string>();
    b.alpha1 = c;
  }
  if (!j.at("numeric").is_null()) {
    const auto& n = j.at("numeric");
    b.numeric = NumericChecks{parse_decimal(n.at("ve_deviation").get<std::string>()),
                              parse_decimal(n.at("wronskian_deviation").get<std::string>()),
                              parse_decimal(n.at("quadrature_deviation").get<std::string>())};
  }
  b.note = j.at("note").get<std::string>();
  return b;
}

inline Json fi(const FISummary& f) {
  Json blocks = Json::array();
  for (const auto& b : f.blocks)
    blocks.push_back({{"weight", b.weight},
                      {"parity", b.parity},
                      {"columns", b.columns},
                      {"equations", b.equations},
                      {"nullity", b.nullity}});
  Json indep = Json::array();
  for (const auto& e : f.independence)
    indep.push_back({{"function", e.function},
                     {"ranks", e.report.ranks},
                     {"singular_points", e.report.singular_points},
                     {"independent", e.report.independent}});
  return {{"ansatz", {{"pdeg", f.ansatz.pdeg}, {"a", f.ansatz.a}, {"b", f.ansatz.b}, {"cap", f.ansatz.cap}}},
          {"dimension", f.dimension},
          {"blocks", blocks},
          {"h_powers", f.h_powers},
          {"variables", f.variables},
          {"basis", f.basis},
          {"independent_of_H", f.independent_of_H},
          {"independence", indep},
          {"scope", f.scope}};
}

inline FISummary fi_from(const Json& j) {
  FISummary f;
  const auto& a = j.at("ansatz");
  f.ansatz.pdeg = a.at("pdeg").get<int>();
  f.ansatz.a = a.at("a").get<int>();
  f.ansatz.b = a.at("b").get<int>();
  f.ansatz.cap = a.at("cap").get<std::size_t>();
  f.dimension = j.at("dimension").get<std::size_t>();
  for (const auto& b : j.at("blocks"))
    f.blocks.push_back({b.at("weight").get<int>(), b.at("parity").get<int>(), b.at("columns").get<std::size_t>(),
                        b.at("equations").get<std::size_t>(), b.at("nullity").get<std::size_t>()});
  f.h_powers = j.at("h_powers").get<std::vector<int>>();
  f.variables = j.at("variables").get<std::vector<std::string>>();
  f.basis = j.at("basis").get<std::vector<std::string>>();
  f.independent_of_H = j.at("independent_of_H").get<std::vector<std::string>>();
  for (const auto& e : j.at("independence")) {
    IndependenceEntry x;
    x.function = e.at("function").get<std::string>();
    x.report.ranks = e.at("ranks").get<std::vector<std::size_t>>();
    x.report.singular_points = e.at("singular_points").get<std::size_t>();
    x.report.independent = e.at("independent").get<bool>();
    f.independence.push_back(std::move(x));
  }
  f.scope = j.at("scope").get<std::string>();
  return f;
}

}  // namespace json_io

/// 64-bit FNV-1a of the serialized configuration, as 16 hex digits.
inline std::string config_hash(const ReportConfig& c) {
  const std::string s = json_io::config(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Json to_json(const Report& r) {
  const Analysis& a = r.analysis;
  Json j;
  j["schema"] = kSchemaVersion;
  j["tool_version"] = r.tool_version;
  j["config"] = json_io::config(r.config);
  j["config_hash"] = config_hash(r.config);
  j["name"] = a.name;
  j["input"] = a.input;
  j["vars"] = a.vars;
  j["canonical"] = a.canonical;
  j["degree"] = a.degree;
  j["path"] = a.path;
  j["continuum"] = a.continuum;
  j["abandoned_seeds"] = a.abandoned_seeds;
  j["hypothesis"] = a.hypothesis;
  j["status"] = status_name(a.status);
  j["exit_code"] = exit_code(a.status);
  j["note"] = a.note;
  Json pts = Json::array();
  for (const auto& p : a.points) pts.push_back(json_io::point(p));
  j["points"] = pts;
  Json certs = Json::array();
  for (const auto& c : r.certificates) certs.push_back(json_io::certificate(c));
  j["certificates"] = certs;
  j["fi_search"] = r.fi ? json_io::fi(*r.fi) : Json(nullptr);
  return j;
}

inline Report report_from_json(const Json& j) {
  if (j.at("schema").get<std::string>() != kSchemaVersion) throw std::invalid_argument("unsupported report schema");
  Report r;
  r.tool_version = j.at("tool_version").get<std::string>();
  r.config = json_io::config_from(j.at("config"));
  Analysis& a = r.analysis;
  a.name = j.at("name").get<std::string>();
  a.input = j.at("input").get<std::string>();
  a.vars = j.at("vars").get<std::vector<std::string>>();
  a.canonical = j.at("canonical").get<std::string>();
  a.degree = j.at("degree").get<int>();
  a.path = j.at("path").get<std::string>();
  a.continuum = j.at("continuum").get<bool>();
  a.abandoned_seeds = j.at("abandoned_seeds").get<int>();
  a.hypothesis = j.at("hypothesis").get<std::string>();
  a.status = status_from_name(j.at("status").get<std::string>());
  a.note = j.at("note").get<std::string>();
  for (const auto& p : j.at("points")) a.points.push_back(json_io::point_from(p));
  for (const auto& c : j.at("certificates")) r.certificates.push_back(json_io::certificate_from(c));
  if (!j.at("fi_search").is_null()) r.fi = json_io::fi_from(j.at("fi_search"));
  return r;
}

/// Runs the analysis and the optional certificate and first-integral stages.
inline Report build_report(const std::string& name, const std::string& input, const Potential& v,
                           const ReportConfig& cfg) {
  Report r;
  r.config = cfg;
  r.analysis = analyze(v, cfg.analyze_options());
  r.analysis.name = name;
  r.analysis.input = input;
  if (cfg.certificates) {
    std::vector<GaussianRational> seen;
    for (const auto& p : r.analysis.points)
      for (const auto& e : p.spectral.eigenvalues) {
        auto value = table_value(e.eigenvalue);
        if (!value || std::find(seen.begin(), seen.end(), *value) != seen.end()) continue;
        seen.push_back(*value);
        r.certificates.push_back(make_certificates(*value, false, cfg.numeric_checks, PhaseCurve{cfg.epsilon}));
      }
  }
  if (cfg.fi_pdeg) {
    MomentumAnsatz m = default_ansatz(v, *cfg.fi_pdeg);
    if (cfg.fi_box) m.a = m.b = *cfg.fi_box;
    FIBasis b = fi_search(v, m);
    FISummary s;
    s.ansatz = m;
    s.dimension = b.dimension;
    s.blocks = b.blocks;
    s.h_powers = b.h_powers;
    s.variables = phase_space_names(v.varnames);
    for (const auto& f : b.basis) s.basis.push_back(f.str(s.variables));
    const RatFunc h = hamiltonian(v);
    for (const auto& f : b.independent_of_H) {
      s.independent_of_H.push_back(f.str(s.variables));
      s.independence.push_back({f.str(s.variables), independence_check(h, f, cfg.seed)});
    }
    s.scope = b.scope + "; polynomial-coefficient search only, a sub-verification of searches over wider coefficient "
                        "classes";
    r.fi = s;
  }
  return r;
}

/// Re-verifies every certificate of a serialized report from its own content.
/// Returns the failed checks; empty means the report is consistent.
inline std::vector<std::string> recheck(const Json& j) {
  std::vector<std::string> fails;
  auto fail = [&](const std::string& s) { fails.push_back(s); };
  Report r;
  try {
    r = report_from_json(j);
  } catch (const std::exception& e) {
    return {std::string("malformed report: ") + e.what()};
  }
  const Analysis& a = r.analysis;
  Potential v;
  try {
    v = parse_potential(a.input, a.vars);
  } catch (const std::exception& e) {
    return {std::string("input does not parse: ") + e.what()};
  }
  if (v.str() != a.canonical) fail("canonical form differs from the parsed input");
  if (v.degree != a.degree) fail("degree differs from the parsed input");
  const int k = v.degree;
  Status overall = Status::NotApplicable;

  for (std::size_t pi = 0; pi < a.points.size(); ++pi) {
    const PointAnalysis& p = a.points[pi];
    const std::string tag = "point " + std::to_string(pi) + ": ";
    // the point and its Hessian
    if (p.projective) {
      const auto& pd = *p.projective;
      if (pd.z_star * pd.z_star != GaussianRational(-1)) fail(tag + "z* is not +-i");
      const RatFunc vz = restrict_projective(v);
      const RatFunc d1 = vz.derivative(0);
      if (d1.evaluate({pd.z_star}) != pd.v1) fail(tag + "v'(z*) does not match");
      if (pd.x_star_sq != pd.v1 / pd.z_star) fail(tag + "x*^2 does not match");
      if (!p.hessian.exact || !(hessian_at_2d(pd, vz).exact_entries == p.hessian.exact_entries))
        fail(tag + "Hessian does not match V''(1, z*) / x*^2");
    } else if (p.representative) {
      if (!has_identity_gradient(v)) fail(tag + "representative point without identity gradient");
      std::vector<GaussianRational> e1(v.nvars(), GaussianRational(0));
      e1[0] = 1;
      if (!p.hessian.exact || !(hessian_exact_at(v, e1) == p.hessian.exact_entries)) fail(tag + "Hessian at e1 differs");
    } else {
      if (max_abs(darboux_residual_vector(gradient(v), p.point.coords)) > 1e-6) fail(tag + "V'(d) - d is not small");
      HessianAtPoint h = hessian_numeric(v, p.point.coords);
      double scale = 1 + h.numeric_entries.norm();
      if (p.hessian.exact || (h.numeric_entries - p.hessian.numeric_entries).norm() > 1e-8 * scale)
        fail(tag + "Hessian differs from V''(d)");
    }
    // spectral data
    const SpectralData& s = p.spectral;
    if (s.exact && !s.indeterminate) {
      if (!p.hessian.exact) fail(tag + "exact spectrum of a numeric Hessian");
      const QiMatrix& m = p.hessian.exact_entries;
      if (!(characteristic_polynomial(m) == s.char_poly)) fail(tag + "characteristic polynomial differs");
      int total = 0;
      for (const auto& e : s.eigenvalues) {
        total += e.multiplicity;
        if (!e.eigenvalue.exact) continue;
        UniPoly cp = s.char_poly;
        if (strip_root(cp, e.eigenvalue.value) != e.multiplicity)
          fail(tag + "multiplicity of " + e.eigenvalue.str() + " differs");
        // block structure: number of blocks = nullity, largest block = stabilization index
        QiMatrix shifted = m;
        for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= e.eigenvalue.value;
        int count = 0, largest = 0, sum = 0;
        for (const auto& b : s.blocks)
          if (b.eigenvalue.exact && b.eigenvalue.value == e.eigenvalue.value) {
            ++count;
            sum += b.size;
            largest = std::max(largest, b.size);
          }
        if (sum != e.multiplicity) fail(tag + "block sizes do not add up for " + e.eigenvalue.str());
        if (static_cast<int>(m.rows() - rank(shifted)) != count) fail(tag + "block count differs from the nullity");
        if (largest >= 1) {
          QiMatrix pw = shifted.pow(static_cast<unsigned>(largest));
          QiMatrix below = shifted.pow(static_cast<unsigned>(largest - 1));
          QiMatrix above = shifted.pow(static_cast<unsigned>(largest + 1));
          if (rank(pw) != rank(above) || (largest > 1 && rank(below) == rank(pw)))
            fail(tag + "largest block size of " + e.eigenvalue.str() + " differs");
        }
      }
      if (total != static_cast<int>(m.rows())) fail(tag + "eigenvalue multiplicities do not add up to n");
      bool semisimple = evaluate_at_matrix(squarefree_part(s.char_poly), m).is_zero();
      if (semisimple != s.semisimple) fail(tag + "semi-simplicity flag differs");
    } else if (!s.exact) {
      SpectralData again = eigen_structure_numeric(p.hessian.numeric_entries, r.config.analyze_options().thresholds);
      if (again.semisimple != s.semisimple || again.indeterminate != s.indeterminate ||
          again.all_integer != s.all_integer)
        fail(tag + "numeric spectral flags differ on recomputation");
    }
    // certificates
    for (const auto& reason : p.verdict.reasons) {
      switch (reason.kind) {
        case ReasonKind::NonIntegerEigenvalue:
          if (reason.eigenvalue.is_integer()) fail(tag + "NonIntegerEigenvalue names an integer");
          if (reason.eigenvalue.exact && !s.char_poly(reason.eigenvalue.value).is_zero())
            fail(tag + "NonIntegerEigenvalue is not a root of the characteristic polynomial");
          break;
        case ReasonKind::JordanBlock: {
          bool listed = false;
          for (const auto& b : s.blocks)
            if (b.size == reason.block_size && b.eigenvalue.str() == reason.eigenvalue.str()) listed = true;
          if (!listed || reason.block_size < 2) fail(tag + "JordanBlock certificate not backed by the block list");
          break;
        }
        case ReasonKind::TableMiss: {
          auto value = table_value(reason.eigenvalue);
          if (value && !mr_table_membership(reason.k, *value).empty()) fail(tag + "TableMiss value is in the table");
          break;
        }
        case ReasonKind::JordanRowRule: {
          auto value = table_value(reason.eigenvalue);
          if (value)
            for (const auto& m : mr_table_membership(reason.k, *value))
              if (m.row > 2) fail(tag + "JordanRowRule value sits in a row above two");
          for (const auto& m : reason.matches)
            if (!revalidate(reason.k, m)) fail(tag + "JordanRowRule match does not revalidate");
          break;
        }
        case ReasonKind::IndeterminateSpectrum:
          if (!s.indeterminate) fail(tag + "IndeterminateSpectrum without the flag");
          break;
      }
    }
    for (const auto& ms : p.table_matches)
      for (const auto& m : ms)
        if (!revalidate(k, m)) fail(tag + "table match does not revalidate");
    Verdict again = point_verdict(k, s);
    if (again.status != p.verdict.status) fail(tag + "verdict differs on recomputation");
    overall = combine(overall, p.verdict.status);
  }
  if (overall != a.status) fail("overall status is not the combination of the point verdicts");
  if (j.at("config_hash").get<std::string>() != config_hash(r.config)) fail("config hash mismatch");

  for (const auto& b : r.certificates) {
    const std::string tag = "lambda " + b.lambda.str() + ": ";
    KummerParams kp = kummer_params(b.lambda);
    if (kp.a != b.kummer.a || kp.c != b.kummer.c) fail(tag + "Kummer parameters differ");
    if (b.galois.virtually_abelian_over_qp != b.lambda.is_integer()) fail(tag + "Galois class inconsistent with lambda");
    if (b.hermite) {
      if (!verify_solution(*b.hermite).is_zero()) fail(tag + "Hermite solution has a nonzero residual");
      if (GaussianRational(b.hermite->lambda) != b.lambda) fail(tag + "Hermite solution for another lambda");
    }
    if (b.alpha1) {
      Alpha1Certificate c = alpha1_obstruction(b.alpha1->lambda);
      if (c.moment_value != b.alpha1->moment_value || c.system_consistent != b.alpha1->system_consistent)
        fail(tag + "alpha_1 certificate differs on recomputation");
    }
  }
  if (r.fi) {
    const RatFunc h = hamiltonian(v);
    const std::size_t n = v.nvars();
    for (const auto& text : r.fi->basis) {
      RatFunc f = parse_expression(text, r.fi->variables);
      if (!poisson_bracket(h, f, n).is_zero()) fail("first integral " + text + " does not commute with H");
    }
  }
  return fails;
}

/// Human-readable rendering carrying the same certificates as the JSON form.
inline std::string to_text(const Report& r) {
  const Analysis& a = r.analysis;
  std::ostringstream os;
  os << "potential " << (a.name.empty() ? "" : a.name + ": ") << a.input << "  [" << a.canonical << "]\n";
  os << "variables";
  for (const auto& x : a.vars) os << ' ' << x;
  os << "; degree " << a.degree << "; path " << a.path << "\n";
  os << "hypothesis: " << a.hypothesis << "\n";
  if (a.continuum) os << "continuum of Darboux points (V' is the identity); e1 represents all of them\n";
  if (a.abandoned_seeds) os << "abandoned Newton seeds: " << a.abandoned_seeds << "\n";
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const PointAnalysis& p = a.points[i];
    os << "point " << i << ":";
    if (p.projective)
      os << " z* = " << p.projective->z_star.str() << ", v'(z*) = " << p.projective->v1.str()
         << ", x*^2 = " << p.projective->x_star_sq.str();
    os << "\n  d =";
    for (const auto& c : p.point.coords) os << ' ' << json_io::decimal(c.real()) << (c.imag() < 0 ? "" : "+") << json_io::decimal(c.imag()) << 'i';
    os << "\n  hessian:";
    for (std::size_t r0 = 0; r0 < p.hessian.n(); ++r0) {
      os << "\n   ";
      for (std::size_t c0 = 0; c0 < p.hessian.n(); ++c0) {
        if (p.hessian.exact)
          os << " [" << p.hessian.exact_entries(r0, c0).str() << ']';
        else
          os << " [" << Eigenvalue::numeric(p.hessian.numeric_entries(static_cast<long>(r0), static_cast<long>(c0))).str() << ']';
      }
    }
    const SpectralData& s = p.spectral;
    if (s.exact) os << "\n  char poly: " << s.char_poly.str();
    os << "\n  eigenvalues:";
    for (const auto& e : s.eigenvalues) os << ' ' << e.eigenvalue.str() << " (x" << e.multiplicity << ')';
    os << "\n  blocks:";
    for (const auto& b : s.blocks) os << " B(" << b.eigenvalue.str() << ", " << b.size << ')';
    os << "\n  semisimple " << (s.semisimple ? "yes" : "no") << ", all integer " << (s.all_integer ? "yes" : "no");
    if (s.indeterminate) os << ", indeterminate";
    if (!s.note.empty()) os << " (" << s.note << ')';
    for (std::size_t e = 0; e < p.table_matches.size(); ++e) {
      os << "\n  table rows for " << s.eigenvalues[e].eigenvalue.str() << ':';
      if (p.table_matches[e].empty()) os << " none";
      for (const auto& m : p.table_matches[e])
        os << " row " << m.row << '.' << m.family << (m.p ? " p=" + m.p->get_str() : std::string());
    }
    os << "\n  verdict: " << status_name(p.verdict.status) << "\n";
    for (const auto& rs : p.verdict.reasons) {
      os << "    " << reason_name(rs.kind) << ": " << rs.eigenvalue.str();
      if (rs.kind == ReasonKind::JordanBlock || rs.kind == ReasonKind::JordanRowRule) os << ", block size " << rs.block_size;
      if (rs.kind == ReasonKind::TableMiss || rs.kind == ReasonKind::JordanRowRule) os << ", k = " << rs.k;
      if (rs.numeric) os << " (numeric)";
      if (!rs.note.empty()) os << " (" << rs.note << ')';
      os << "\n";
    }
  }
  for (const auto& b : r.certificates) {
    os << "lambda " << b.lambda.str() << ": " << b.pform.str() << "; Kummer a = " << b.kummer.a.str()
       << ", c = " << b.kummer.c.str() << "; Galois " << galois_name(b.galois.over_base) << ", identity component over C(q,p) "
       << (b.galois.virtually_abelian_over_qp ? "abelian" : "not abelian") << "\n";
    if (b.hermite) os << "  solution " << b.hermite->str() << (b.hermite_verified ? " (residual exactly 0)" : " (RESIDUAL NONZERO)") << "\n";
    if (b.alpha1)
      os << "  alpha_1 for lambda " << b.alpha1->lambda << ": Gaussian moment " << b.alpha1->moment_value.str()
         << " sqrt(2 pi), system " << (b.alpha1->system_consistent ? "consistent" : "infeasible") << "; "
         << b.alpha1->conclusion << "\n";
    if (b.numeric)
      os << "  numeric: VE deviation " << json_io::decimal(b.numeric->ve_deviation) << ", Wronskian deviation "
         << json_io::decimal(b.numeric->wronskian_deviation) << ", quadrature deviation "
         << json_io::decimal(b.numeric->quadrature_deviation) << "\n";
    if (!b.note.empty()) os << "  " << b.note << "\n";
  }
  if (r.fi) {
    const FISummary& f = *r.fi;
    os << "first integrals: " << f.scope << "\n  ansatz dimension " << f.dimension << " in " << f.blocks.size()
       << " blocks; basis " << f.basis.size() << ", independent of H " << f.independent_of_H.size() << "\n";
    for (const auto& b : f.basis) os << "    " << b << "\n";
    for (const auto& e : f.independence)
      os << "  independent of H: " << e.function << " (" << (e.report.independent ? "Jacobian rank 2" : "dependent")
         << ")\n";
  }
  os << "status: " << status_name(a.status);
  if (!a.note.empty()) os << " (" << a.note << ')';
  os << "\nconfig hash " << config_hash(r.config) << ", version " << r.tool_version << "\n";
  return os.str();
}

}  // namespace zerok

#endif
