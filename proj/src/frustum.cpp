#include "torsionlab/frustum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace torsionlab {

namespace {

int sign_pow(int q) { return q % 2 == 0 ? 1 : -1; }

void require_odd(const FrustumParams& p, const char* what) {
  if (!p.odd_section()) throw std::invalid_argument(std::string(what) + " needs an odd-dimensional section");
}

}  // namespace

void FrustumParams::validate() const {
  if (!(l1 > 0.0) || !(l2 > l1) || !std::isfinite(l2)) throw std::invalid_argument("frustum needs 0 < l1 < l2");
  if (m < 0) throw std::invalid_argument("section dimension must be non-negative");
  if (betti.size() != static_cast<std::size_t>(m + 1)) {
    throw std::invalid_argument("betti vector must have m + 1 = " + std::to_string(m + 1) + " entries");
  }
  for (int r : betti) {
    if (r < 0) throw std::invalid_argument("betti numbers must be non-negative");
  }
  if (rk_rho < 1) throw std::invalid_argument("representation rank must be positive");
}

HarmonicExponents harmonic_exponents(int q, int m, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("eigenvalue must be non-negative");
  const double alpha = 0.5 * (1 + 2 * q - m);
  const double mu = std::sqrt(lambda + alpha * alpha);
  return {alpha, mu, alpha + mu, alpha - mu};
}

bool absolute_bc_harmonic(int /*q*/, int /*m*/, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("eigenvalue must be non-negative");
  // q - sqrt(lambda + q^2) = 0 iff lambda = 0
  return lambda == 0.0;
}

long double log_gamma_coefficient(int q, int m, long double l1, long double l2) {
  if (!(l1 > 0.0L) || !(l2 > l1)) throw std::invalid_argument("gamma coefficient needs 0 < l1 < l2");
  if (q < 0 || q > m) throw std::invalid_argument("degree out of range");
  const int e = m + 1 - 2 * q;
  if (e == 0) return std::log(std::log1p((l2 - l1) / l1));
  // l2^e - l1^e = -l2^e expm1(e log(l1/l2)); the sign cancels against e.
  const long double t = std::expm1(static_cast<long double>(e) * std::log(l1 / l2));
  return e * std::log(l2) + std::log(std::fabs(t)) - std::log(static_cast<long double>(std::abs(e)));
}

double gamma_coefficient(int q, int m, double l1, double l2) {
  const double g = static_cast<double>(std::exp(log_gamma_coefficient(q, m, l1, l2)));
  if (!(g > 0.0)) throw std::range_error("gamma coefficient underflow");
  return g;
}

double tau_T_log(const FrustumParams& p) {
  p.validate();
  const long double l2 = p.l2;
  long double sum = 0.0L;
  if (!p.odd_section()) {
    for (int q = 0; q <= p.m; ++q) {
      const long double term = log_gamma_coefficient(q, p.m, p.l1, l2) - (p.m - 2 * q) * std::log(l2);
      sum += sign_pow(q) * 0.5L * p.betti[q] * term;
    }
    return static_cast<double>(sum);
  }
  const int half = p.half();
  for (int q = 0; q <= p.m; ++q) {
    if (q == half) continue;
    // (l2^(2p-2q) - l1^(2p-2q)) / ((2p-2q) l2^(2p-1-2q))
    const long double term = log_gamma_coefficient(q, p.m, p.l1, l2) - (2 * half - 1 - 2 * q) * std::log(l2);
    sum += sign_pow(q) * 0.5L * p.betti[q] * term;
  }
  sum += sign_pow(half) * 0.5L * p.betti[half] * log_gamma_coefficient(half, p.m, p.l1, l2);
  return static_cast<double>(sum);
}

double tau_T_log_derived(const FrustumParams& p) {
  p.validate();
  long double sum = 0.0L;
  for (int q = 0; q <= p.m; ++q) {
    const long double term =
        log_gamma_coefficient(q, p.m, p.l1, p.l2) - (p.m - 2 * q) * std::log(static_cast<long double>(p.l2));
    sum += sign_pow(q) * 0.5L * p.betti[q] * term;
  }
  return static_cast<double>(sum);
}

Reconciliation reconcile(const FrustumParams& p) {
  Reconciliation r{};
  r.paper = tau_T_log(p);
  r.derived = tau_T_log_derived(p);
  r.difference = r.paper - r.derived;
  r.expected_exponent = p.odd_section() ? sign_pow(p.half() + 1) * 0.5 * p.betti[p.half()] : 0.0;
  const double log_l2 = std::log(p.l2);
  r.measured_exponent = log_l2 == 0.0 ? std::numeric_limits<double>::quiet_NaN() : r.difference / log_l2;
  return r;
}

ReconciliationFit fit_reconciliation(FrustumParams p, const std::vector<double>& l1_values) {
  if (l1_values.empty()) throw std::invalid_argument("no l1 samples");
  const double log_l2 = std::log(p.l2);
  if (log_l2 == 0.0) throw std::invalid_argument("l2 = 1 cannot separate powers of l2");
  std::vector<double> diffs;
  for (double l1 : l1_values) {
    p.l1 = l1;
    diffs.push_back(reconcile(p).difference);
  }
  double mean = 0.0;
  for (double d : diffs) mean += d;
  mean /= static_cast<double>(diffs.size());
  ReconciliationFit fit{mean / log_l2, 0.0};
  for (double d : diffs) fit.max_residual = std::max(fit.max_residual, std::fabs(d - fit.exponent * log_l2));
  return fit;
}

double metric_scaling_log(int m, const std::vector<int>& betti, double l) {
  if (!(l > 0.0)) throw std::invalid_argument("scale must be positive");
  if (betti.size() != static_cast<std::size_t>(m + 1)) throw std::invalid_argument("betti vector must have m + 1 entries");
  long long s = 0;
  for (int q = 0; q <= m; ++q) s += sign_pow(q) * static_cast<long long>(betti[q]) * (m - 2 * q);
  return 0.5 * static_cast<double>(s) * std::log(l);
}

DualitySums duality_sums(int m, const std::vector<int>& betti) {
  if (m % 2 == 0) throw std::invalid_argument("duality sums need odd m");
  if (betti.size() != static_cast<std::size_t>(m + 1)) throw std::invalid_argument("betti vector must have m + 1 entries");
  const int p = (m + 1) / 2;
  DualitySums d{0, 0, 0, true};
  for (int q = 0; q <= m; ++q) {
    const long long term = sign_pow(q) * static_cast<long long>(betti[q]) * (2 * p - 1 - 2 * q);
    (q < p ? d.lower : d.upper) += term;
    d.total += sign_pow(q) * static_cast<long long>(betti[q]) * (m - 2 * q);
    if (betti[q] != betti[m - q]) d.symmetric_betti = false;
  }
  return d;
}

FrustumTorsion frustum_rtorsion_log(const FrustumParams& p, double tauW_log_at_g) {
  FrustumTorsion t{};
  t.section_scaled = tauW_log_at_g + metric_scaling_log(p.m, p.betti, p.l2);
  t.paper = t.section_scaled + tau_T_log(p);
  t.derived = t.section_scaled + tau_T_log_derived(p);
  t.difference = t.paper - t.derived;
  return t;
}

double upsilon_log(const FrustumParams& p, double tauW_log_at_g, double tau_skeleton_log) {
  require_odd(p, "regularized torsion");
  const FrustumTorsion t = frustum_rtorsion_log(p, tauW_log_at_g);
  long double divergent = 0.0L;
  for (int q = p.half(); q <= p.m; ++q) {
    const long double term =
        log_gamma_coefficient(q, p.m, p.l1, p.l2) - (p.m - 2 * q) * std::log(static_cast<long double>(p.l2));
    divergent += sign_pow(q) * 0.5L * p.betti[q] * term;
  }
  return static_cast<double>(t.derived - tau_skeleton_log - divergent);
}

double limit_upsilon_log(const FrustumParams& p, double tauW_log_at_g) {
  require_odd(p, "regularized limit");
  const int half = p.half();
  const long double log_l2 = std::log(static_cast<long double>(p.l2));
  long double s = 0.5L * tauW_log_at_g;
  for (int q = 0; q < half; ++q) {
    s += 0.5L * sign_pow(q) * p.betti[q] * (2 * half - 1 - 2 * q) * log_l2;
    s += 0.5L * sign_pow(q + 1) * p.betti[q] * (std::log(2.0L * (half - q)) - log_l2);
  }
  return static_cast<double>(s);
}

double cone_analytic_torsion_log(const FrustumParams& p, double tauW_log_at_g) {
  require_odd(p, "cone torsion");
  if (p.rk_rho != 1) throw std::invalid_argument("cone torsion formula assumes a rank one representation");
  const int half = p.half();
  const long double l2 = p.l2;
  long double scale = 0.0L, radial = 0.0L;
  for (int q = 0; q < half; ++q) {
    scale += sign_pow(q) * p.betti[q] * (2 * half - 1 - 2 * q);
    radial += sign_pow(q + 1) * p.betti[q] * std::log(2.0L * (half - q) / l2);
  }
  return static_cast<double>(0.5L * tauW_log_at_g + 0.5L * scale * std::log(l2) + 0.5L * radial);
}

double cone_analytic_torsion_theorem_log(const FrustumParams& p, double tauW_log_at_l2_scaled) {
  require_odd(p, "cone torsion");
  if (p.rk_rho != 1) throw std::invalid_argument("cone torsion formula assumes a rank one representation");
  const int half = p.half();
  long double s = 0.5L * tauW_log_at_l2_scaled;
  for (int q = 0; q < half; ++q) {
    s += 0.5L * sign_pow(q + 1) * p.betti[q] * std::log(2.0L * (half - q) / static_cast<long double>(p.l2));
  }
  return static_cast<double>(s);
}

double cm_assemble(double log_tau, int euler_boundary, double anomaly, int rk_rho) {
  return log_tau + 0.25 * rk_rho * euler_boundary * std::log(2.0) + rk_rho * anomaly;
}

int anomaly_sign(int m, BoundaryCondition bc) {
  if (m % 2 == 0) return 1;
  return bc == BoundaryCondition::mixed ? 1 : 0;
}

double frustum_analytic_torsion_log(const FrustumParams& p, double log_tau_R, double integral_B) {
  p.validate();
  const int chi_boundary = 2 * euler_characteristic(p.betti);
  return cm_assemble(log_tau_R, chi_boundary, anomaly_sign(p.m, BoundaryCondition::absolute) * integral_B, p.rk_rho);
}

double mixed_bc_torsion_log(int rk_rho, int euler_W, double integral_B) {
  return 0.5 * rk_rho * euler_W * std::log(2.0) + rk_rho * integral_B;
}

int euler_characteristic(const std::vector<int>& betti) {
  int chi = 0;
  for (std::size_t q = 0; q < betti.size(); ++q) chi += sign_pow(static_cast<int>(q)) * betti[q];
  return chi;
}

}  // namespace torsionlab
