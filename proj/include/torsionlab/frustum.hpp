#pragma once

#include <vector>

namespace torsionlab {

/// Conical frustum [l1, l2] x W over an m-dimensional section with Betti
/// numbers betti[q], q = 0..m.
struct FrustumParams {
  double l1 = 1.0;
  double l2 = 2.0;
  int m = 1;
  std::vector<int> betti{1, 1};
  int rk_rho = 1;

  /// Throws std::invalid_argument when the parameters are out of range.
  void validate() const;
  bool odd_section() const { return m % 2 == 1; }
  int half() const { return (m + 1) / 2; }  // p with m = 2p - 1 or m = 2p
};

struct HarmonicExponents {
  double alpha_q;
  double mu;
  double a_plus;
  double a_minus;
};

HarmonicExponents harmonic_exponents(int q, int m, double lambda);
/// Harmonic criterion for absolute boundary conditions: q - sqrt(lambda + q^2) = 0.
bool absolute_bc_harmonic(int q, int m, double lambda);

/// Integral of x^(m-2q) over [l1, l2].
double gamma_coefficient(int q, int m, double l1, double l2);
long double log_gamma_coefficient(int q, int m, long double l1, long double l2);

/// log tau(T) with the exponents exactly as in the closed-form proposition.
double tau_T_log(const FrustumParams& p);
/// sum_q (-1)^q (r_q / 2) log(Gamma_q / l2^(m-2q)).
double tau_T_log_derived(const FrustumParams& p);

struct Reconciliation {
  double paper;
  double derived;
  double difference;          // paper - derived
  double expected_exponent;   // predicted coefficient of log l2
  double measured_exponent;   // difference / log l2 (NaN when l2 = 1)
};

Reconciliation reconcile(const FrustumParams& p);

struct ReconciliationFit {
  double exponent;      // least-squares coefficient c in difference = c log l2
  double max_residual;  // over the sampled l1 values
};

ReconciliationFit fit_reconciliation(FrustumParams p, const std::vector<double>& l1_values);

/// Additive change of log tau_R(W) when the metric g is replaced by l^2 g.
double metric_scaling_log(int m, const std::vector<int>& betti, double l);

struct DualitySums {
  long long lower;       // sum_{q<p} (-1)^q r_q (2p-1-2q)
  long long upper;       // sum_{q>=p} (-1)^q r_q (2p-1-2q)
  long long total;       // sum_q (-1)^q r_q (m-2q)
  bool symmetric_betti;  // r_q = r_{m-q}
  bool holds() const { return upper == lower && 2 * lower == total; }
};

DualitySums duality_sums(int m, const std::vector<int>& betti);

struct FrustumTorsion {
  double section_scaled;  // log tau_R(W, l2^2 g)
  double paper;
  double derived;
  double difference;
};

FrustumTorsion frustum_rtorsion_log(const FrustumParams& p, double tauW_log_at_g);

/// Geometrically regularized torsion (derived mode); m must be odd.
double upsilon_log(const FrustumParams& p, double tauW_log_at_g, double tau_skeleton_log);
double limit_upsilon_log(const FrustumParams& p, double tauW_log_at_g);

/// Cone torsion without the boundary term, section torsion at the metric g.
double cone_analytic_torsion_log(const FrustumParams& p, double tauW_log_at_g);
/// Same quantity in the form half log tau_R(W, l2^2 g) + sum of log(2(p-q)/l2) terms.
double cone_analytic_torsion_theorem_log(const FrustumParams& p, double tauW_log_at_l2_scaled);

double cm_assemble(double log_tau, int euler_boundary, double anomaly, int rk_rho);

enum class BoundaryCondition { absolute, relative, mixed };

/// Coefficient of the integral of B in the frustum's total boundary anomaly.
int anomaly_sign(int m, BoundaryCondition bc);

/// log T_abs of the frustum from its R torsion and the anomaly integral.
double frustum_analytic_torsion_log(const FrustumParams& p, double log_tau_R, double integral_B);
/// log T with absolute conditions on W1 and relative on W2.
double mixed_bc_torsion_log(int rk_rho, int euler_W, double integral_B);

int euler_characteristic(const std::vector<int>& betti);

}  // namespace torsionlab
