// zerok: integrability obstructions for homogeneous potentials.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zerok/report.hpp"
#include "zerok/scan.hpp"

namespace {

using namespace zerok;

constexpr int kUsage = 1;
constexpr int kParse = 2;
constexpr int kRecheckFailed = 5;

/// Accepts "re", "re,im", "re+imi", "re-im*i", "imi" with decimal parts.
Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty complex number");
  auto comma = s.find(',');
  if (comma != std::string::npos) return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  if (s.back() != 'i') return {std::stod(s), 0.0};
  std::size_t split = 0;
  for (std::size_t k = 1; k < s.size(); ++k)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') split = k;
  std::string re = s.substr(0, split), im = s.substr(split, s.size() - split - 1);
  if (!im.empty() && im.back() == '*') im.pop_back();
  double imv = im.empty() || im == "+" ? 1.0 : im == "-" ? -1.0 : std::stod(im);
  return {re.empty() ? 0.0 : std::stod(re), imv};
}

std::vector<GaussianRational> parse_values(const std::string& text) {
  std::vector<GaussianRational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string t = trim(item);
    if (!t.empty()) out.push_back(parse_gaussian(t));
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot write " + out_path);
  f << text;
}

struct AnalyzeArgs {
  std::string potential, vars, name, corpus, format = "text", out, epsilon = "0";
  bool mr_table = false, numeric = false, certificates = false, numeric_checks = false;
  int seeds = 64;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::optional<int> fi_pdeg, fi_box;
};

int run_analyze(const AnalyzeArgs& a) {
  if (a.potential.empty() == a.corpus.empty()) {
    std::cerr << "analyze: give exactly one of --potential or --corpus\n";
    return kUsage;
  }
  if (!a.potential.empty() && a.vars.empty()) {
    std::cerr << "analyze: --potential needs --vars\n";
    return kUsage;
  }
  ReportConfig cfg;
  cfg.numeric = a.numeric;
  cfg.mr_table = a.mr_table;
  cfg.seeds = a.seeds;
  cfg.tol = a.tol;
  cfg.seed = a.seed;
  cfg.certificates = a.certificates || a.numeric_checks;
  cfg.numeric_checks = a.numeric_checks;
  cfg.fi_pdeg = a.fi_pdeg;
  cfg.fi_box = a.fi_box;
  try {
    cfg.epsilon = parse_complex(a.epsilon);
  } catch (const std::exception&) {
    std::cerr << "analyze: cannot parse --epsilon " << a.epsilon << "\n";
    return kUsage;
  }

  std::vector<CorpusEntry> entries;
  try {
    if (!a.corpus.empty())
      entries = read_corpus_file(a.corpus);
    else
      entries.push_back({a.name, split_vars(a.vars), a.potential, 0});
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::vector<Potential> potentials(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    try {
      potentials[i] = parse_potential(entries[i].expression, entries[i].vars);
    } catch (const std::exception& e) {
      std::cerr << "parse error";
      if (entries[i].line) std::cerr << " (line " << entries[i].line << ")";
      std::cerr << ": " << e.what() << "\n";
      return kParse;
    }
  }

  // analyzed in parallel, emitted in input order
  std::vector<Report> reports(entries.size());
  try {
    parallel_for(entries.size(), [&](std::size_t i) {
      reports[i] = build_report(entries[i].name, entries[i].expression, potentials[i], cfg);
    });
  } catch (const AnsatzTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  Status overall = Status::NotApplicable;
  for (const auto& r : reports) overall = combine(overall, r.analysis.status);
  std::string text;
  if (a.format == "json") {
    if (a.corpus.empty()) {
      text = to_json(reports[0]).dump(2) + "\n";
    } else {
      Json arr = Json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      text = arr.dump(2) + "\n";
    }
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) text += (i ? "\n" : "") + to_text(reports[i]);
  }
  emit(text, a.out);
  return exit_code(overall);
}

struct ScanArgs {
  std::string family, vars = "q1,q2", grid, format = "text", out;
  int degree = 0;
  bool solve = false;
  std::uint64_t seed = 1;
};

Json values_json(const Family& f, const std::vector<GaussianRational>& v) {
  Json j;
  for (std::size_t i = 0; i < v.size(); ++i) j[f.params[i]] = json_io::gaussian(v[i]);
  return j;
}

std::string values_text(const Family& f, const std::vector<GaussianRational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + f.params[i] + " = " + v[i].str();
  return s;
}

int run_scan(const ScanArgs& a) {
  if (a.solve == !a.grid.empty()) {
    std::cerr << "scan: give exactly one of --solve or --grid\n";
    return kUsage;
  }
  Family f;
  try {
    f = parse_family(a.family, split_vars(a.vars), a.degree);
  } catch (const std::exception& e) {
    std::cerr << "family error: " << e.what() << "\n";
    return kParse;
  }
  if (f.params.empty()) {
    std::cerr << "scan: the family has no $parameters\n";
    return kUsage;
  }
  AnalyzeOptions opt;
  opt.search.seed = a.seed;
  std::string text;
  if (a.solve) {
    ConstraintResult r;
    try {
      r = constraint_solve(f, opt);
    } catch (const FamilyError& e) {
      std::cerr << "scan --solve: " << e.what() << "; use --grid for this family\n";
      return kUsage;
    }
    if (a.format == "json") {
      Json j{{"schema", "scan_v1"}, {"family", f.text}, {"vars", f.vars}, {"degree", f.degree}, {"mode", "solve"},
             {"equations", r.equations}};
      Json sols = Json::array();
      for (const auto& s : r.solutions)
        sols.push_back({{"values", values_json(f, s.values)}, {"potential", s.potential}, {"status", status_name(s.status)}});
      j["solutions"] = sols;
      j["invariants"] = r.invariants;
      j["discarded"] = r.discarded;
      j["eliminant"] = r.eliminant ? Json(*r.eliminant) : Json(nullptr);
      j["positive_dimensional"] = r.positive_dimensional;
      j["note"] = r.note;
      text = j.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "family " << f.text << "\nsemi-simplicity conditions:\n";
      for (const auto& e : r.equations) os << "  " << e << "\n";
      if (r.positive_dimensional) os << "positive-dimensional solution set: " << r.note << "\n";
      os << "solutions:" << (r.solutions.empty() ? " none" : "") << "\n";
      for (const auto& s : r.solutions)
        os << "  " << values_text(f, s.values) << "  ->  " << s.potential << "  (" << status_name(s.status) << ")\n";
      for (const auto& d : r.discarded) os << "  discarded " << d << "\n";
      if (!r.invariants.empty()) {
        os << "invariants: {";
        for (std::size_t i = 0; i < r.invariants.size(); ++i) os << (i ? ", " : "") << r.invariants[i];
        os << "}\n";
      }
      if (r.eliminant) os << "further solutions outside Q(i): roots of " << *r.eliminant << "\n";
      if (!r.note.empty() && !r.positive_dimensional) os << "note: " << r.note << "\n";
      text = os.str();
    }
  } else {
    std::vector<GaussianRational> values;
    try {
      values = parse_values(a.grid);
    } catch (const std::exception& e) {
      std::cerr << "parse error in --grid: " << e.what() << "\n";
      return kParse;
    }
    auto entries = scan_grid(f, values, opt);
    if (a.format == "json") {
      Json arr = Json::array();
      for (const auto& g : entries)
        arr.push_back({{"values", values_json(f, g.values)},
                       {"rejected", g.rejected},
                       {"status", g.rejected ? Json(nullptr) : Json(status_name(g.status))},
                       {"note", g.note}});
      text = Json{{"schema", "scan_v1"}, {"family", f.text}, {"vars", f.vars}, {"degree", f.degree}, {"mode", "grid"},
                  {"entries", arr}}
                 .dump(2) +
             "\n";
    } else {
      std::ostringstream os;
      os << "family " << f.text << "\n";
      for (const auto& g : entries)
        os << "  " << values_text(f, g.values) << "  "
           << (g.rejected ? "rejected: " + g.note : std::string(status_name(g.status))) << "\n";
      text = os.str();
    }
  }
  emit(text, a.out);
  return 0;
}

struct VariationalArgs {
  std::string lambda, potential, vars, format = "text", out, epsilon = "0";
  bool hermite = false, numeric = false;
};

int run_variational(const VariationalArgs& a) {
  if (a.lambda.empty() == a.potential.empty()) {
    std::cerr << "variational: give exactly one of --lambda or --from-potential\n";
    return kUsage;
  }
  PhaseCurve pc;
  try {
    pc.epsilon = parse_complex(a.epsilon);
  } catch (const std::exception&) {
    std::cerr << "variational: cannot parse --epsilon " << a.epsilon << "\n";
    return kUsage;
  }
  std::vector<CertificateBundle> bundles;
  if (!a.lambda.empty()) {
    GaussianRational l;
    try {
      l = parse_gaussian(a.lambda);
    } catch (const std::exception& e) {
      std::cerr << "parse error in --lambda: " << e.what() << "\n";
      return kParse;
    }
    try {
      bundles.push_back(make_certificates(l, a.hermite, a.numeric, pc));
    } catch (const std::domain_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
  } else {
    if (a.vars.empty()) {
      std::cerr << "variational: --from-potential needs --vars\n";
      return kUsage;
    }
    Potential v;
    try {
      v = parse_potential(a.potential, split_vars(a.vars));
    } catch (const std::exception& e) {
      std::cerr << "parse error: " << e.what() << "\n";
      return kParse;
    }
    ReportConfig cfg;
    cfg.certificates = true;
    cfg.numeric_checks = a.numeric;
    cfg.epsilon = pc.epsilon;
    bundles = build_report("", a.potential, v, cfg).certificates;
  }
  std::string text;
  if (a.format == "json") {
    Json arr = Json::array();
    for (const auto& b : bundles) arr.push_back(json_io::certificate(b));
    text = Json{{"schema", "variational_v1"}, {"bundles", arr}}.dump(2) + "\n";
  } else {
    Report r;
    r.certificates = bundles;
    std::string full = to_text(r);
    // keep only the certificate lines
    std::istringstream is(full);
    std::string line;
    bool keep = false;
    while (std::getline(is, line)) {
      if (line.rfind("lambda ", 0) == 0) keep = true;
      if (line.rfind("status:", 0) == 0) keep = false;
      if (keep) text += line + "\n";
    }
  }
  emit(text, a.out);
  return 0;
}

int run_recheck(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "cannot open " << path << "\n";
    return kUsage;
  }
  Json j;
  try {
    j = Json::parse(f);
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  }
  std::vector<Json> reports;
  if (j.is_array())
    for (const auto& r : j) reports.push_back(r);
  else
    reports.push_back(j);
  int failures = 0;
  for (const auto& r : reports) {
    auto fails = recheck(r);
    std::string name = r.value("name", std::string());
    if (name.empty()) name = r.value("input", std::string("?"));
    std::cout << (fails.empty() ? "ok     " : "FAILED ") << name << "\n";
    for (const auto& s : fails) std::cout << "  " << s << "\n";
    failures += static_cast<int>(fails.size());
  }
  return failures ? kRecheckFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Necessary integrability conditions for homogeneous potentials"};
  app.require_subcommand(1);

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "Darboux points, spectra and verdicts");
  analyze_cmd->add_option("--potential", aa.potential, "Potential expression");
  analyze_cmd->add_option("--vars", aa.vars, "Comma-separated variables");
  analyze_cmd->add_option("--name", aa.name, "Name recorded in the report");
  analyze_cmd->add_option("--corpus", aa.corpus, "Corpus file: 'name ; vars ; expression' per line");
  analyze_cmd->add_flag("--mr-table", aa.mr_table, "Record table rows for every eigenvalue");
  analyze_cmd->add_flag("--numeric", aa.numeric, "Force the numeric Darboux and spectral path");
  analyze_cmd->add_option("--seeds", aa.seeds, "Newton seeds")->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--tol", aa.tol, "Newton tolerance")->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--seed", aa.seed, "Random seed");
  analyze_cmd->add_option("--epsilon", aa.epsilon, "Energy level of the phase curve, e.g. 0.5+1i");
  analyze_cmd->add_option("--format", aa.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  analyze_cmd->add_option("--out", aa.out, "Write the report to this file");
  analyze_cmd->add_flag("--certificates", aa.certificates, "Attach variational certificates per eigenvalue");
  analyze_cmd->add_flag("--numeric-checks", aa.numeric_checks, "Run numeric VE and Wronskian checks in certificates");
  analyze_cmd->add_option("--fi-pdeg", aa.fi_pdeg, "Search first integrals up to this momentum degree")
      ->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--fi-box", aa.fi_box, "Laurent box bound a = b for the search")->check(CLI::NonNegativeNumber);

  ScanArgs sa;
  auto* scan_cmd = app.add_subcommand("scan", "Verdicts over a parameter family");
  scan_cmd->add_option("--family", sa.family, "Expression with $a, $b parameters")->required();
  scan_cmd->add_option("--vars", sa.vars, "Comma-separated variables");
  scan_cmd->add_option("--degree", sa.degree, "Declared degree of homogeneity");
  scan_cmd->add_flag("--solve", sa.solve, "Solve the semi-simplicity conditions exactly");
  scan_cmd->add_option("--grid", sa.grid, "Comma-separated values for every parameter");
  scan_cmd->add_option("--seed", sa.seed, "Random seed");
  scan_cmd->add_option("--format", sa.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  scan_cmd->add_option("--out", sa.out, "Write the result to this file");

  VariationalArgs va;
  auto* var_cmd = app.add_subcommand("variational", "Certificates for the equation x'' + p x' + lambda x = 0");
  var_cmd->add_option("--lambda", va.lambda, "Eigenvalue, e.g. 3, 1/2, 1+2*i");
  var_cmd->add_option("--from-potential", va.potential, "Take the eigenvalues of a potential");
  var_cmd->add_option("--vars", va.vars, "Variables of --from-potential");
  var_cmd->add_flag("--hermite", va.hermite, "Require the closed-form Hermite solution");
  var_cmd->add_flag("--numeric", va.numeric, "Run the numeric VE and Wronskian checks");
  var_cmd->add_option("--epsilon", va.epsilon, "Energy level of the phase curve");
  var_cmd->add_option("--format", va.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  var_cmd->add_option("--out", va.out, "Write the result to this file");

  std::string report_path;
  auto* recheck_cmd = app.add_subcommand("recheck", "Re-verify the certificates of a JSON report");
  recheck_cmd->add_option("report", report_path, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  try {
    if (*analyze_cmd) return run_analyze(aa);
    if (*scan_cmd) return run_scan(sa);
    if (*var_cmd) return run_variational(va);
    if (*recheck_cmd) return run_recheck(report_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
