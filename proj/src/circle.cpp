#include "torsionlab/circle.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "torsionlab/spectral.hpp"

namespace torsionlab {

namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;

long double log_ratio(const CircleFrustum& f) {
  return std::log1p((static_cast<long double>(f.l2) - f.l1) / f.l1);
}

long double log_volume(const CircleFrustum& f) {
  const long double a = f.l1, b = f.l2;
  return std::log(kPiL * std::sin(static_cast<long double>(f.alpha)) * (b - a) * (b + a));
}

LogMagnitude numeric_sqrt(long double log_square) {
  return LogMagnitude::from_log(0.5L * log_square, 4 * LDBL_EPSILON * std::max(1.0L, std::fabs(log_square)));
}

RationalMatrix column(std::initializer_list<long> entries) {
  std::vector<std::vector<Rational>> rows;
  for (long e : entries) rows.push_back({Rational(e)});
  return RationalMatrix::from_rows(rows, 1);
}

VerificationEntry entry(std::string check, double lhs, double rhs, double tol, std::string notes = {}) {
  VerificationEntry e;
  e.check = std::move(check);
  e.lhs = lhs;
  e.rhs = rhs;
  e.abs_diff = std::fabs(lhs - rhs);
  e.tol = tol;
  e.pass = e.abs_diff <= tol;
  e.notes = std::move(notes);
  return e;
}

}  // namespace

void CircleFrustum::validate() const {
  if (!(l1 > 0.0) || !(l2 > l1) || !std::isfinite(l2)) throw std::invalid_argument("need 0 < l1 < l2");
  if (!(alpha > 0.0) || !(alpha < 1.5707963267948966)) throw std::invalid_argument("alpha must lie in (0, pi/2)");
}

double CircleFrustum::nu() const { return 1.0 / std::sin(alpha); }

double CircleFrustum::volume() const { return static_cast<double>(std::exp(log_volume(*this))); }

CircleFrustum CircleFrustum::from_nu(double l1, double l2, double nu) {
  if (!(nu > 1.0)) throw std::invalid_argument("nu = 1/sin(alpha) must exceed 1");
  CircleFrustum f{l1, l2, std::asin(1.0 / nu)};
  f.validate();
  return f;
}

CircleFrustum CircleFrustum::from_cylinder(double b1, double h, double alpha) {
  if (!(b1 > 0.0) || !(h > 0.0)) throw std::invalid_argument("cylinder radius and height must be positive");
  const double l1 = b1 / std::sin(alpha);
  CircleFrustum f{l1, l1 + h / std::cos(alpha), alpha};
  f.validate();
  return f;
}

std::string to_string(Representation rep) { return rep == Representation::trivial ? "trivial" : "sign"; }

std::string to_string(CircleVariant variant) {
  switch (variant) {
    case CircleVariant::abs: return "abs";
    case CircleVariant::rel: return "rel";
    case CircleVariant::pair_W2: return "pair_W2";
  }
  return "?";
}

ChainComplexData build_complex(CirclePreset preset, Representation rep) {
  const long t = rep == Representation::trivial ? 1 : -1;
  ChainComplexData c;
  c.ranks = {2, 3, 1};
  // Rows c00, c01; columns c10, c11, c12.
  const RationalMatrix d1 = RationalMatrix::from_rows({{0, -1, t - 1}, {t - 1, 1, 0}});
  if (preset == CirclePreset::product_cw) {
    c.boundaries = {d1, column({1, 1 - t, -1})};
  } else {
    c.boundaries = {d1, column({1, -t, -1, 0, 1})};
  }
  return c;
}

CircleHarmonicData harmonic_data(const CircleFrustum& f) {
  f.validate();
  const long double s = std::sin(static_cast<long double>(f.alpha));
  const long double lr = log_ratio(f);
  CircleHarmonicData h;
  h.norm_one = static_cast<double>(std::exp(0.5L * log_volume(f)));
  h.norm_dtheta = static_cast<double>(std::sqrt(2.0L * kPiL / s * lr));
  h.kappa = static_cast<double>(std::sqrt(lr / (2.0L * kPiL * s)));
  h.z0 = column({1, 1});
  h.z1 = column({1, 0, 1});
  h.homology.cycles = {h.z0, h.z1, RationalMatrix(1, 0)};
  h.homology.scales = {{numeric_sqrt(log_volume(f))},
                       {numeric_sqrt(std::log(lr) - std::log(2.0L * kPiL * s))},
                       {}};
  return h;
}

LogTorsion rtorsion_circle(const CircleFrustum& f, CircleVariant variant) {
  const auto data = harmonic_data(f);
  const ChainComplexData c = build_complex(CirclePreset::product_cw, Representation::trivial);
  switch (variant) {
    case CircleVariant::abs:
      return torsion_log(c, data.homology);
    case CircleVariant::rel: {
      // Relative to both boundary circles {c00, c01, c10, c12}: cells c11 and c2 with zero boundary.
      const auto pair = pair_sequence(c, {{0, 1}, {0, 2}, {}});
      HomologyBasisData h;
      h.cycles = {RationalMatrix(0, 0), column({1}), column({1})};
      h.scales = {{}, {data.homology.scales[1][0].inverse()}, {data.homology.scales[0][0].inverse()}};
      return torsion_log(pair.quotient, h);
    }
    case CircleVariant::pair_W2: {
      const auto seq = circle_pair_W2(f);
      return torsion_log(seq.sequence.quotient, seq.h_quot);
    }
  }
  throw std::invalid_argument("unknown variant");
}

double rtorsion_circle_closed_form(const CircleFrustum& f, CircleVariant variant) {
  f.validate();
  if (variant == CircleVariant::pair_W2) return 0.0;
  const long double a = f.l1, b = f.l2;
  const long double abs = std::log(kPiL * std::sin(static_cast<long double>(f.alpha))) +
                          0.5L * std::log(2.0L * (b - a) * (b + a)) - 0.5L * std::log(log_ratio(f));
  return static_cast<double>(variant == CircleVariant::abs ? abs : -abs);
}

LogTorsion rtorsion_circle_sign() {
  const ChainComplexData c = build_complex(CirclePreset::product_cw, Representation::sign);
  return torsion_log(c, empty_homology(c));
}

CirclePairSequence circle_pair_W2(const CircleFrustum& f) {
  f.validate();
  const ChainComplexData c = build_complex(CirclePreset::product_cw, Representation::trivial);
  CirclePairSequence p;
  p.sequence = pair_sequence(c, {{1}, {0}, {}});
  const long double log_length = std::log(2.0L * kPiL * f.l2 * std::sin(static_cast<long double>(f.alpha)));
  const LogMagnitude root = numeric_sqrt(log_length);
  p.h_sub.cycles = {column({1}), column({1})};
  p.h_sub.scales = {{root}, {root.inverse()}};
  p.h_total = harmonic_data(f).homology;
  p.h_quot = empty_homology(p.sequence.quotient);
  return p;
}

double anomaly_circle(const CircleFrustum& f, int j, BoundaryCondition bc, int rk) {
  f.validate();
  if (j != 1 && j != 2) throw std::invalid_argument("boundary component must be 1 or 2");
  const double s = std::sin(f.alpha);
  switch (bc) {
    case BoundaryCondition::absolute: return (j == 2 ? 0.5 : -0.5) * rk * s;
    case BoundaryCondition::relative: return (j == 2 ? -0.5 : 0.5) * rk * s;
    case BoundaryCondition::mixed:
      return anomaly_circle(f, j, j == 1 ? BoundaryCondition::absolute : BoundaryCondition::relative, rk);
  }
  throw std::invalid_argument("unknown boundary condition");
}

double anomaly_circle_total(const CircleFrustum& f, BoundaryCondition bc, int rk) {
  return anomaly_circle(f, 1, bc, rk) + anomaly_circle(f, 2, bc, rk);
}

ConeSweep cone_sweep(const CircleFrustum& f, int J) {
  f.validate();
  if (J < 4) throw std::invalid_argument("cone sweep needs at least 4 points");
  const long double s = std::sin(static_cast<long double>(f.alpha));
  const double tau_w = static_cast<double>(std::log(2.0L * kPiL * s));
  const double tau_skeleton = static_cast<double>(0.5L * std::log(2.0L * kPiL * f.l2 * s));
  ConeSweep sweep;
  FrustumParams p = f.params();
  for (int j = 1; j <= J; ++j) {
    p.l1 = std::ldexp(f.l2, -j);
    sweep.l1_values.push_back(p.l1);
    sweep.upsilon.push_back(upsilon_log(p, tau_w, tau_skeleton));
  }
  sweep.increments_decreasing = true;
  for (int j = 1; j < J; ++j) {
    sweep.increments.push_back(std::fabs(sweep.upsilon[j] - sweep.upsilon[j - 1]));
    if (j > 1 && !(sweep.increments[j - 1] < sweep.increments[j - 2])) sweep.increments_decreasing = false;
  }
  // Least-squares slope of log(increment) against log(l1) over the early, roundoff-free part.
  const int fit_end = std::min<int>(12, static_cast<int>(sweep.increments.size()));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < fit_end; ++i) {
    const double x = std::log(sweep.l1_values[i + 1]);
    const double y = std::log(sweep.increments[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  sweep.rate_exponent = (fit_end * sxy - sx * sy) / (fit_end * sxx - sx * sx);
  // Richardson with ratio 2^p on the last two points.
  const double r = std::pow(2.0, sweep.rate_exponent);
  sweep.fitted_limit = sweep.upsilon[J - 1] + (sweep.upsilon[J - 1] - sweep.upsilon[J - 2]) / (r - 1.0);
  sweep.printed_limit = static_cast<double>(0.5L * std::log(kPiL * f.l2 * f.l2 * s));
  p.l1 = f.l1;
  sweep.derived_limit = limit_upsilon_log(p, tau_w);
  sweep.discrepancy_limit = static_cast<double>(0.5L * std::log(2.0L * kPiL * f.l2 * s));
  return sweep;
}

CylinderSweep cylinder_sweep(double b1, double h, int k_min, int k_max) {
  if (k_min < 1 || k_max < k_min) throw std::invalid_argument("bad cylinder schedule");
  CylinderSweep sweep;
  sweep.b1 = b1;
  sweep.h = h;
  sweep.target = 2.0 * static_cast<double>(kPiL) * b1;
  sweep.errors_decreasing = true;
  for (int k = k_min; k <= k_max; ++k) {
    const double alpha = std::pow(10.0, -k);
    const auto f = CircleFrustum::from_cylinder(b1, h, alpha);
    const double t = std::exp(torsion_zeta_log(f.nu(), f.l1, f.l2));
    sweep.alphas.push_back(alpha);
    sweep.torsion.push_back(t);
    sweep.errors.push_back(std::fabs(t - sweep.target));
    if (sweep.errors.size() > 1 && !(sweep.errors.back() < sweep.errors[sweep.errors.size() - 2])) {
      sweep.errors_decreasing = false;
    }
  }
  return sweep;
}

bool VerificationReport::all_pass() const {
  for (const auto& e : entries) {
    if (!e.pass) return false;
  }
  return true;
}

VerificationReport verify_suite(const CircleFrustum& f) {
  f.validate();
  VerificationReport report;
  auto& out = report.entries;

  const double chain_abs = rtorsion_circle(f, CircleVariant::abs).value();
  const double chain_rel = rtorsion_circle(f, CircleVariant::rel).value();
  out.push_back(entry("rtorsion_abs_chain_vs_closed_form", chain_abs,
                      rtorsion_circle_closed_form(f, CircleVariant::abs), 1e-12));
  out.push_back(entry("rtorsion_rel_chain_vs_closed_form", chain_rel,
                      rtorsion_circle_closed_form(f, CircleVariant::rel), 1e-12));
  out.push_back(entry("rtorsion_abs_plus_rel", chain_abs + chain_rel, 0.0, 1e-12));
  out.push_back(entry("rtorsion_pair_W2", rtorsion_circle(f, CircleVariant::pair_W2).value(), 0.0, 0.0));

  const auto pair = circle_pair_W2(f);
  const auto milnor = milnor_decomposition(pair.sequence, pair.h_sub, pair.h_total, pair.h_quot);
  out.push_back(entry("milnor_pair_W2_defect", static_cast<double>(milnor.defect.value()), 0.0, 1e-12));
  out.push_back(entry("milnor_pair_W2_sequence_vs_tau_T", static_cast<double>(milnor.sequence.value()),
                      tau_T_log_derived(f.params()), 1e-12, "derived-mode tau(T)"));

  const double abs_anomaly = anomaly_circle_total(f, BoundaryCondition::absolute, 1);
  const double rel_anomaly = anomaly_circle_total(f, BoundaryCondition::relative, 1);
  out.push_back(entry("anomaly_total_abs", abs_anomaly, 0.0, 1e-15));
  out.push_back(entry("anomaly_total_rel", rel_anomaly, 0.0, 1e-15));
  const int chi_boundary = 2 * euler_characteristic({1, 1});
  const double analytic = torsion_zeta_log(f.nu(), f.l1, f.l2);
  out.push_back(entry("cheeger_mueller", analytic, cm_assemble(chain_abs, chi_boundary, abs_anomaly, 1), 1e-10,
                      "chi(boundary) = " + std::to_string(chi_boundary)));
  out.push_back(entry("torsion_zeta_abs_plus_rel", analytic + torsion_zeta_log(f.nu(), f.l1, f.l2, SpectralBC::relative),
                      0.0, 1e-14));

  const double per_component = anomaly_circle_total(f, BoundaryCondition::mixed, 1);
  const double lemma = anomaly_sign(1, BoundaryCondition::mixed) * std::sin(f.alpha);
  out.push_back(entry("mixed_anomaly_magnitude", std::fabs(per_component), std::fabs(lemma), 1e-15,
                      "per-component sum " + std::to_string(per_component) + ", global lemma " +
                          std::to_string(lemma) + ": signs differ"));

  const auto fit = fit_reconciliation(f.params(), {0.3, 0.5, 0.7});
  const double expected = reconcile(f.params()).expected_exponent;
  out.push_back(entry("reconciliation_exponent", fit.exponent, expected, 1e-12,
                      "max fit residual " + std::to_string(fit.max_residual)));
  out.push_back(entry("reconciliation_fit_residual", fit.max_residual, 0.0, 1e-12));

  const auto cone = cone_sweep(f);
  out.push_back(entry("cone_limit_vs_printed", cone.fitted_limit, cone.printed_limit, 1e-9,
                      "alternative intermediate gives " + std::to_string(cone.discrepancy_limit)));
  out.push_back(entry("cone_limit_vs_derived", cone.fitted_limit, cone.derived_limit, 1e-9));
  VerificationEntry rate = entry("cone_increment_rate", cone.rate_exponent, 2.0, 0.5,
                                 cone.increments_decreasing ? "increments decreasing" : "increments not decreasing");
  rate.pass = rate.pass && cone.increments_decreasing && cone.rate_exponent >= 1.5;
  out.push_back(rate);

  const double b1 = f.l1 * std::sin(f.alpha);
  const double height = (f.l2 - f.l1) * std::cos(f.alpha);
  const auto cyl = cylinder_sweep(b1, height);
  VerificationEntry limit = entry("cylinder_limit", cyl.torsion.back(), cyl.target, 1e-4 * std::max(1.0, cyl.target),
                                  cyl.errors_decreasing ? "errors decreasing" : "errors not decreasing");
  limit.pass = limit.pass && cyl.errors_decreasing;
  out.push_back(limit);
  return report;
}

}  // namespace torsionlab
