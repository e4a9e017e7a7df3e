#include "run.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "torsionlab/circle.hpp"
#include "torsionlab/frustum.hpp"
#include "torsionlab/io.hpp"
#include "torsionlab/spectral.hpp"

namespace torsionlab::cli {

namespace {

using io::Json;

constexpr double kPi = 3.14159265358979323846;

struct Checks {
  std::vector<VerificationEntry> entries;

  void add(std::string name, double lhs, double rhs, double tol, std::string notes = {}) {
    VerificationEntry e;
    e.check = std::move(name);
    e.lhs = lhs;
    e.rhs = rhs;
    e.abs_diff = std::fabs(lhs - rhs);
    e.tol = tol;
    e.pass = e.abs_diff <= tol;
    e.notes = std::move(notes);
    entries.push_back(std::move(e));
  }
  void add(VerificationEntry e) { entries.push_back(std::move(e)); }
  void add_flag(std::string name, bool ok, std::string notes = {}) {
    add(std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, std::move(notes));
  }
  bool pass() const {
    for (const auto& e : entries) {
      if (!e.pass) return false;
    }
    return true;
  }
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

CircleFrustum circle_of(const RunConfig& c) {
  CircleFrustum f{c.l1, c.l2, kPi / 6};
  if (c.alpha) f.alpha = *c.alpha;
  if (c.nu) {
    if (!(*c.nu > 1.0)) throw ConfigError("--nu must exceed 1");
    f.alpha = std::asin(1.0 / *c.nu);
  }
  f.validate();
  return f;
}

FrustumParams frustum_of(const RunConfig& c) {
  FrustumParams p{c.l1, c.l2, c.m, c.betti, 1};
  p.validate();
  return p;
}

bool is_circle(const RunConfig& c) { return c.m == 1 && c.betti == std::vector<int>{1, 1}; }

Json parameters(const RunConfig& c) {
  Json j;
  j["l1"] = c.l1;
  j["l2"] = c.l2;
  if (c.command != Command::rtorsion || is_circle(c)) {
    const auto f = circle_of(c);
    j["alpha"] = io::rounded(f.alpha, 17);
    j["nu"] = io::rounded(f.nu(), 17);
  }
  if (c.command == Command::rtorsion) {
    j["m"] = c.m;
    j["betti"] = c.betti;
  }
  if (c.command == Command::zeros) {
    j["kind"] = c.kind;
    j["nu_n"] = c.nu_n;
  }
  if (c.command == Command::zeros || c.command == Command::analytic || c.command == Command::report) {
    j["K"] = c.K;
    j["tol"] = c.tol;
  }
  return j;
}

Json rtorsion_section(const RunConfig& c, Checks& checks) {
  const int d = c.precision;
  Json j;
  if (!c.complex_path.empty()) {
    std::ifstream in(c.complex_path);
    if (!in) throw ConfigError("cannot read complex file '" + c.complex_path + "'");
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw ConfigError("complex file is not valid JSON: " + std::string(e.what()));
    }
    const auto parsed = io::complex_from_json(doc);
    const auto valid = validate_complex(parsed.complex);
    if (!valid) throw ConfigError("complex is invalid: " + valid.message);
    const HomologyBasisData h = parsed.homology ? *parsed.homology : empty_homology(parsed.complex);
    const auto hv = validate_homology(parsed.complex, h);
    if (!hv) throw ConfigError("homology basis is invalid: " + hv.message);
    const auto t = torsion_log(parsed.complex, h);
    Json cj;
    Json betti = Json::array();
    for (auto b : betti_ranks(parsed.complex)) betti.push_back(b);
    cj["betti"] = betti;
    cj["log_torsion"] = io::rounded(t.value(), d);
    cj["exact"] = t.magnitude.is_exact();
    if (t.magnitude.is_exact()) cj["torsion_squared"] = to_string(t.magnitude.square);
    j["complex"] = cj;
    return j;
  }

  const auto p = frustum_of(c);
  const CircleFrustum f = is_circle(c) ? circle_of(c) : CircleFrustum{};
  const double tau_w = c.tau_w ? *c.tau_w : std::log(2 * kPi * std::sin(f.alpha));
  if (!c.tau_w && !is_circle(c)) throw ConfigError("--tau-w is required for a non-circle section");
  const auto ft = frustum_rtorsion_log(p, tau_w);
  const auto rec = reconcile(p);
  Json fj;
  fj["tau_w_log"] = io::rounded(tau_w, d);
  fj["section_scaled_log"] = io::rounded(ft.section_scaled, d);
  fj["paper_mode_log"] = io::rounded(ft.paper, d);
  fj["derived_mode_log"] = io::rounded(ft.derived, d);
  fj["tau_T_paper_log"] = io::rounded(rec.paper, d);
  fj["tau_T_derived_log"] = io::rounded(rec.derived, d);
  fj["difference"] = io::rounded(rec.difference, d);
  fj["expected_l2_exponent"] = rec.expected_exponent;
  if (std::isfinite(rec.measured_exponent)) {
    fj["measured_l2_exponent"] = io::rounded(rec.measured_exponent, d);
    checks.add("reconciliation_exponent", rec.measured_exponent, rec.expected_exponent, 1e-12);
  } else {
    fj["measured_l2_exponent"] = nullptr;
  }
  if (p.l2 != 1.0) {
    std::vector<double> samples = {0.3, 0.5, 0.7};
    if (p.l2 <= 0.7) samples = {0.3 * p.l2, 0.5 * p.l2, 0.7 * p.l2};
    const auto fit = fit_reconciliation(p, samples);
    fj["fit_exponent"] = io::rounded(fit.exponent, d);
    fj["fit_max_residual"] = io::rounded(fit.max_residual, 3);
    checks.add("reconciliation_fit_residual", fit.max_residual, 0.0, 1e-12);
  }
  j["frustum"] = fj;

  if (is_circle(c)) {
    Json cj;
    for (auto v : {CircleVariant::abs, CircleVariant::rel, CircleVariant::pair_W2}) {
      const double chain = rtorsion_circle(f, v).value();
      const double closed = rtorsion_circle_closed_form(f, v);
      cj[to_string(v)] = {{"chain_level_log", io::rounded(chain, d)}, {"closed_form_log", io::rounded(closed, d)}};
      checks.add("rtorsion_" + to_string(v) + "_chain_vs_closed_form", chain, closed, 1e-12);
    }
    cj["sign_representation_log"] = io::rounded(rtorsion_circle_sign().value(), d);
    j["circle"] = cj;
  }
  return j;
}

Json analytic_section(const RunConfig& c, Checks& checks) {
  const int d = c.precision;
  const auto f = circle_of(c);
  const double nu = f.nu();
  Json j;
  const double closed = torsion_zeta_log(nu, f.l1, f.l2);
  const double display = torsion_zeta_display(nu, f.l1, f.l2);
  const double rel = torsion_zeta_log(nu, f.l1, f.l2, SpectralBC::relative);
  j["closed_form_log"] = io::rounded(closed, d);
  j["display_log"] = io::rounded(display, d);
  j["relative_log"] = io::rounded(rel, d);
  checks.add("closed_form_vs_display", closed, display, 1e-14 * std::max(1.0, std::fabs(display)));
  checks.add("abs_plus_rel", closed + rel, 0.0, 1e-14);

  const auto terms = double_series_terms(nu, f.l1, f.l2);
  j["double_series"] = {{"A00_0", io::rounded(terms.A00_0, d)},
                        {"A01_0", io::rounded(terms.A01_0, d)},
                        {"A01_prime_0", io::rounded(terms.A01_prime_0, d)},
                        {"difference", io::rounded(terms.difference, d)}};
  const auto axial = zprime0_axial(CrossProductKind::F, f.l1, f.l2);
  const auto axial_t = zprime0_axial(CrossProductKind::Ftilde, f.l1, f.l2);
  const auto semi = torsion_zeta_semi_numeric(nu, f.l1, f.l2, c.K, 1e-5, c.tol);
  j["axial"] = {{"S0", {{"closed_form", io::to_json(axial, d)}, {"oracle", io::to_json(semi.axial, d)}}},
                {"S0_tilde", {{"closed_form", io::to_json(axial_t, d)}, {"oracle", io::to_json(semi.axial_tilde, d)}}}};
  checks.add("axial_S0_oracle", semi.axial.value_at_0_derivative, axial.value_at_0_derivative, 1e-5);
  checks.add("axial_S0_tilde_oracle", semi.axial_tilde.value_at_0_derivative, axial_t.value_at_0_derivative, 1e-5);
  j["semi_numeric_log"] = io::rounded(semi.value, d);
  j["semi_numeric_error_estimate"] = io::rounded(semi.error_estimate, 3);
  checks.add("semi_numeric_vs_closed_form", semi.value, closed, 1e-4);
  return j;
}

Json limits_section(const RunConfig& c, Checks& checks) {
  const int d = c.precision;
  const auto f = circle_of(c);
  const auto cone = cone_sweep(f);
  const double b1 = f.l1 * std::sin(f.alpha);
  const double h = (f.l2 - f.l1) * std::cos(f.alpha);
  const auto cyl = cylinder_sweep(b1, h);
  VerificationEntry rate;
  rate.check = "cone_increment_rate";
  rate.lhs = cone.rate_exponent;
  rate.rhs = 1.5;
  rate.abs_diff = std::fabs(rate.lhs - rate.rhs);
  rate.pass = cone.increments_decreasing && cone.rate_exponent >= 1.5;
  rate.notes = "rate must be >= 1.5 with decreasing increments";
  checks.add(rate);
  checks.add("cone_limit_vs_printed", cone.fitted_limit, cone.printed_limit, 1e-9,
             "alternative intermediate gives " + std::to_string(cone.discrepancy_limit));
  checks.add("cone_limit_vs_derived", cone.fitted_limit, cone.derived_limit, 1e-9);
  checks.add("cylinder_limit", cyl.torsion.back(), cyl.target, 1e-4);
  checks.add_flag("cylinder_errors_decreasing", cyl.errors_decreasing);
  return {{"cone", io::to_json(cone, d)}, {"cylinder", io::to_json(cyl, d)}};
}

Json zeros_section(const RunConfig& c, Checks& checks, ZeroTable& table) {
  const auto kind = parse_cross_product_kind(c.kind);
  table = find_zeros(kind, c.nu_n, c.l1, c.l2, c.K, c.tol);
  const auto cert = certify(table);
  checks.add_flag("zeros_strictly_increasing", cert.strictly_increasing);
  checks.add("zeros_late_gap_deviation", cert.max_late_gap_deviation, 0.0, 0.25);
  Json j;
  j["kind"] = to_string(kind);
  j["nu_n"] = c.nu_n;
  j["count"] = table.zeros.size();
  j["max_late_gap_deviation"] = io::rounded(cert.max_late_gap_deviation, 3);
  return j;
}

Json checks_json(const Checks& checks, int digits) {
  VerificationReport r;
  r.entries = checks.entries;
  return io::to_json(r, digits);
}

std::string csv_checks(const std::vector<VerificationEntry>& entries, int digits) {
  std::ostringstream out;
  out.precision(digits);
  out << "check,lhs,rhs,abs_diff,tol,pass\n";
  for (const auto& e : entries) {
    out << e.check << ',' << e.lhs << ',' << e.rhs << ',' << e.abs_diff << ',' << e.tol << ','
        << (e.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string command_name(Command c) {
  switch (c) {
    case Command::rtorsion: return "rtorsion";
    case Command::analytic: return "analytic";
    case Command::zeros: return "zeros";
    case Command::verify: return "verify";
    case Command::limits: return "limits";
    case Command::report: return "report";
  }
  return "?";
}

std::string render(const RunConfig& c, Checks& checks) {
  const int d = c.precision;
  Json doc;
  doc["command"] = command_name(c.command);
  doc["parameters"] = parameters(c);
  switch (c.command) {
    case Command::rtorsion:
      doc["rtorsion"] = rtorsion_section(c, checks);
      break;
    case Command::analytic:
      doc["analytic"] = analytic_section(c, checks);
      break;
    case Command::zeros: {
      ZeroTable table;
      doc["zeros"] = zeros_section(c, checks, table);
      if (c.format == Format::csv) return io::zero_table_csv(table, d);
      Json zs = Json::array();
      for (double z : table.zeros) zs.push_back(z);
      doc["zeros"]["values"] = zs;
      break;
    }
    case Command::verify: {
      const auto report = verify_suite(circle_of(c));
      for (const auto& e : report.entries) checks.add(e);
      if (c.format == Format::csv) return csv_checks(report.entries, d);
      doc["verify"] = io::to_json(report, d);
      break;
    }
    case Command::limits:
      doc["limits"] = limits_section(c, checks);
      break;
    case Command::report: {
      RunConfig sub = c;
      doc["rtorsion"] = rtorsion_section(sub, checks);
      doc["analytic"] = analytic_section(sub, checks);
      sub.kind = "F";
      sub.nu_n = 0.0;
      ZeroTable table;
      doc["zeros"] = zeros_section(sub, checks, table);
      const auto report = verify_suite(circle_of(c));
      doc["verify"] = io::to_json(report, d);
      for (const auto& e : report.entries) checks.add(e);
      doc["limits"] = limits_section(sub, checks);
      break;
    }
  }
  if (c.format == Format::csv) throw ConfigError("--format csv is only available for zeros and verify");
  doc["checks"] = checks_json(checks, d);
  doc["pass"] = checks.pass();
  return doc.dump(2) + "\n";
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.precision < 1 || config.precision > 17) {
    err << "error: --precision must be between 1 and 17\n";
    return 2;
  }
  Checks checks;
  std::string text;
  try {
    text = render(config, checks);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "check failed: " << e.what() << '\n';
    return 1;
  }
  if (config.output.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << config.output << "'\n";
      return 2;
    }
    file << text;
  }
  for (const auto& e : checks.entries) {
    if (!e.pass) err << "FAIL " << e.check << ": |" << e.lhs << " - " << e.rhs << "| = " << e.abs_diff << " > " << e.tol
                     << (e.notes.empty() ? "" : " (" + e.notes + ")") << '\n';
  }
  return checks.pass() ? 0 : 1;
}

int main_with_args(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Torsion of conical frusta: chain-level, closed-form and spectral computations"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "json";
  std::string betti = "1,1";
  double alpha = 0.0, nu = 0.0, tau_w = 0.0;

  const std::vector<std::pair<std::string, Command>> commands = {
      {"rtorsion", Command::rtorsion}, {"analytic", Command::analytic}, {"zeros", Command::zeros},
      {"verify", Command::verify},     {"limits", Command::limits},     {"report", Command::report}};
  const std::vector<std::string> descriptions = {
      "R torsion: chain-level, closed-form and reconciliation",
      "analytic torsion t'(0) by closed form and semi-numerically",
      "zero table of a Bessel cross product (CSV)",
      "circle-frustum verification report",
      "cone and cylinder limit sweeps",
      "all of the above in one JSON document"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, descriptions[i]);
    sub->add_option("--l1", config.l1, "inner radius")->capture_default_str();
    sub->add_option("--l2", config.l2, "outer radius")->capture_default_str();
    auto* a = sub->add_option("--alpha", alpha, "cone angle in radians (default pi/6)");
    auto* n = sub->add_option("--nu", nu, "1/sin(alpha), alternative to --alpha");
    a->excludes(n);
    sub->add_option("--m", config.m, "section dimension")->capture_default_str();
    sub->add_option("--betti", betti, "comma-separated Betti numbers of the section")->capture_default_str();
    sub->add_option("--tau-w", tau_w, "log tau_R of the section at its metric g");
    sub->add_option("--kind", config.kind, "cross-product kind: F or Ftilde")->capture_default_str();
    sub->add_option("--nu-n", config.nu_n, "Bessel order")->capture_default_str();
    sub->add_option("--K", config.K, "number of zeros")->capture_default_str();
    sub->add_option("--tol", config.tol, "zero refinement tolerance")->capture_default_str();
    sub->add_option("--output", config.output, "output file (default: standard output)");
    sub->add_option("--format", format, "json or csv (zeros defaults to csv)")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--precision", config.precision, "significant digits in output")->capture_default_str();
    sub->add_option("--complex", config.complex_path, "chain complex JSON file (rtorsion)");
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    app.exit(e, o, er);
    err << er.str() << o.str();
    return 2;
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    config.command = commands[i].second;
    if (subs[i]->count("--alpha")) config.alpha = alpha;
    if (subs[i]->count("--nu")) config.nu = nu;
    if (subs[i]->count("--tau-w")) config.tau_w = tau_w;
  }
  config.format = format == "csv" ? Format::csv : Format::json;
  // The zero table is CSV unless JSON is requested explicitly.
  if (config.command == Command::zeros && !subs[2]->count("--format")) config.format = Format::csv;
  config.betti.clear();
  std::stringstream ss(betti);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      config.betti.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      err << "error: --betti expects comma-separated integers, got '" << betti << "'\n";
      return 2;
    }
  }
  return run(config, out, err);
}

}  // namespace torsionlab::cli
