#pragma once

#include <string>
#include <vector>

namespace torsionlab {

enum class CrossProductKind { F, Ftilde };

std::string to_string(CrossProductKind kind);
CrossProductKind parse_cross_product_kind(const std::string& text);

/// F_mu(z) = J_mu(l2 z) J_{-mu}(l1 z) - J_mu(l1 z) J_{-mu}(l2 z) and the
/// derivative version; J_{-mu} is replaced by Y_mu for integer mu.
double cross_product(CrossProductKind kind, double mu, double l1, double l2, double z);

/// F(iy) written with I and K: (2/pi) s(mu) D(y), s(mu) = sin(mu pi) for
/// non-integer mu and 1 for integer mu (where Y_mu stands for J_{-mu}).
double gee(CrossProductKind kind, double mu, double l1, double l2, double y);

/// The product prod_k (1 + y^2 / a_k^2) over the zeros, evaluated in closed
/// form from I and K (equals 1 at y = 0). Returned in log form.
double log_normalized_product(CrossProductKind kind, double mu, double l1, double l2, double y);

struct ZeroTable {
  CrossProductKind kind = CrossProductKind::F;
  double order = 0.0;
  double l1 = 1.0;
  double l2 = 2.0;
  double tol = 1e-12;
  std::vector<double> zeros;
};

/// First K positive zeros, bracketed on a grid of step pi / (8 (l2 - l1))
/// and refined to tol.
ZeroTable find_zeros(CrossProductKind kind, double mu, double l1, double l2, int K, double tol);

struct ZeroCertificate {
  bool strictly_increasing = true;
  double max_late_gap_deviation = 0.0;  // max |gap - pi/L| / (pi/L) over k > 20
  bool ok = true;
};

ZeroCertificate certify(const ZeroTable& table);

enum class ZetaMethod { closed_form, continuation_oracle };
std::string to_string(ZetaMethod method);

struct ZetaEvaluation {
  double value_at_0_derivative = 0.0;
  ZetaMethod method = ZetaMethod::closed_form;
  double error_estimate = 0.0;
  int zeros_used = 0;
  double tail_correction = 0.0;
  double richardson = 0.0;  // 2 S(K) - S(K/2) on the uncorrected sums
};

/// Z'(0) for S_0 (kind F) or S~_0 (kind Ftilde): closed forms.
ZetaEvaluation zprime0_axial(CrossProductKind kind, double l1, double l2);
/// Z'(0) = -log(2L) - 2 sum_k log(a_k / (k pi / L)), tail fitted as c/k^2.
/// Throws std::runtime_error if the error estimate exceeds max_error.
ZetaEvaluation zprime0_axial_oracle(CrossProductKind kind, double l1, double l2, int K, double max_error = 1e-5,
                                    double tol = 1e-13);
ZetaEvaluation zprime0_axial_oracle(const ZeroTable& table, double max_error = 1e-5);

double phi1(double l1, double l2, double lambda);
/// Phi_1(s) closed form; the removable point s = 0 returns 0.
double Phi1(double l1, double l2, double s);
/// Phi_1(s) from the cut integral of the contour representation (s > 0).
double Phi1_quadrature(double l1, double l2, double s);

struct PhiTerms {
  double phi1 = 0.0;
  double Phi1 = 0.0;
  double residue_at_0 = 0.0;
  double finite_part_at_0 = 0.0;
  double slope_at_0 = 0.0;       // exact d Phi_1 / ds at 0 = -2 log(l2/l1)
  double measured_plus = 0.0;    // Phi_1(1e-3) / 1e-3
  double measured_minus = 0.0;   // Phi_1(-1e-3) / (-1e-3)
};

PhiTerms phi_terms(double l1, double l2, double lambda, double s);

struct DoubleSeriesTerms {
  double A00_0 = 0.0;
  double A01_0 = 0.0;
  double A01_prime_0 = 0.0;
  double difference = 0.0;  // Z'(0, S~) - Z'(0, S)
};

DoubleSeriesTerms double_series_terms(double nu, double l1, double l2);

enum class SpectralBC { absolute, relative };

enum class SpectrumFamily { a_nu, atilde_nu, a_0, atilde_0 };
std::string to_string(SpectrumFamily family);

struct SpectrumComponent {
  int multiplicity;
  SpectrumFamily family;
};

/// Multiplicity-tagged families making up Sp Delta^(q).
std::vector<SpectrumComponent> spectrum_descriptor(int q, SpectralBC bc);

struct TorsionZetaCoefficients {
  double a_nu = 0.0, atilde_nu = 0.0, a_0 = 0.0, atilde_0 = 0.0;
};

/// Coefficients of each family's zeta function in t(s) = 1/2 sum (-1)^q q zeta(s, Delta^(q)).
TorsionZetaCoefficients torsion_zeta_coefficients(SpectralBC bc);

/// t'(0) assembled from the double-series difference and the axial closed forms.
double torsion_zeta_log(double nu, double l1, double l2, SpectralBC bc = SpectralBC::absolute);
/// log(pi sqrt(2(l2^2 - l1^2)) / (nu sqrt(log(l2/l1)))).
double torsion_zeta_display(double nu, double l1, double l2);

struct SemiNumericTorsion {
  double value = 0.0;
  double error_estimate = 0.0;
  ZetaEvaluation axial;
  ZetaEvaluation axial_tilde;
};

SemiNumericTorsion torsion_zeta_semi_numeric(double nu, double l1, double l2, int K, double max_error = 1e-5,
                                             double tol = 1e-13);

struct UniformResidual {
  double lhs = 0.0;      // log Gamma(S~_n) - log Gamma(S_n)
  double leading = 0.0;  // -1/2 log((1 - lambda l1^2)(1 - lambda l2^2))
  double phi_term = 0.0; // phi_1(lambda) / (nu n)
  double residual = 0.0;
};

UniformResidual uniform_expansion_residual(int n, double nu, double l1, double l2, double lambda);

namespace zeta_constants {
double zeta_at_0();        // -1/2
double zeta_prime_at_0();  // -1/2 log(2 pi)
}  // namespace zeta_constants

}  // namespace torsionlab
