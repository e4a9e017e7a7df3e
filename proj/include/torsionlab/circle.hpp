#pragma once

#include <string>
#include <vector>

#include "torsionlab/chain_complex.hpp"
#include "torsionlab/frustum.hpp"

namespace torsionlab {

/// Frustum over a circle: [l1, l2] x S^1 with metric dr^2 + sin^2(alpha) r^2 dtheta^2.
struct CircleFrustum {
  double l1 = 1.0;
  double l2 = 2.0;
  double alpha = 0.5235987755982988;

  void validate() const;
  double nu() const;
  double volume() const;  // pi sin(alpha) (l2^2 - l1^2)
  FrustumParams params() const { return {l1, l2, 1, {1, 1}, 1}; }

  static CircleFrustum from_nu(double l1, double l2, double nu);
  /// Radius b1 = l1 sin(alpha) and height h = (l2 - l1) cos(alpha) held fixed.
  static CircleFrustum from_cylinder(double b1, double h, double alpha);
};

enum class Representation { trivial, sign };
enum class CirclePreset { paper_figure_1, product_cw };
enum class CircleVariant { abs, rel, pair_W2 };

std::string to_string(Representation rep);
std::string to_string(CircleVariant variant);

/// Cells: C_0 = (c00, c01), C_1 = (c10, c11, c12), C_2 = (c2); t acts by +1 or -1.
/// paper_figure_1 keeps a boundary of c2 with a 0-cell term, a column over
/// (c10, c11, c12, c00, c01), so it fails validation.
ChainComplexData build_complex(CirclePreset preset, Representation rep);

struct CircleHarmonicData {
  double norm_one;     // sqrt(Vol)
  double norm_dtheta;  // sqrt((2 pi / sin alpha) log(l2/l1))
  double kappa;        // sqrt(log(l2/l1) / (2 pi sin alpha))
  RationalMatrix z0;   // c00 + c01, scaled by norm_one
  RationalMatrix z1;   // c10 + c12, scaled by kappa
  HomologyBasisData homology;
};

CircleHarmonicData harmonic_data(const CircleFrustum& f);

/// Chain-level R torsion on product_cw with the trivial representation.
LogTorsion rtorsion_circle(const CircleFrustum& f, CircleVariant variant);
/// The closed forms: abs log(pi sin(alpha) sqrt(2(l2^2 - l1^2)) / sqrt(log(l2/l1))), rel its negative, pair 0.
double rtorsion_circle_closed_form(const CircleFrustum& f, CircleVariant variant);
/// Torsion of the acyclic sign-representation complex in the cell basis.
LogTorsion rtorsion_circle_sign();

/// (F, W2) with W2 = {c01, c10} the outer circle, bases sqrt(l) c01 and c10 / sqrt(l), l = 2 pi l2 sin(alpha).
struct CirclePairSequence {
  ShortExactSequence sequence;
  HomologyBasisData h_sub;
  HomologyBasisData h_total;
  HomologyBasisData h_quot;
};

CirclePairSequence circle_pair_W2(const CircleFrustum& f);

/// Per-component anomaly A(W_j), j = 1 (inner) or 2 (outer).
double anomaly_circle(const CircleFrustum& f, int j, BoundaryCondition bc, int rk);
/// A(W1) + A(W2); mixed means absolute on W1 and relative on W2.
double anomaly_circle_total(const CircleFrustum& f, BoundaryCondition bc, int rk);

struct ConeSweep {
  std::vector<double> l1_values;      // l2 2^{-j}, j = 1..J
  std::vector<double> upsilon;
  std::vector<double> increments;     // |U(l1_j) - U(l1_{j-1})|, j = 2..J
  bool increments_decreasing = false;
  double rate_exponent = 0.0;         // fitted p in increment ~ l1^p
  double fitted_limit = 0.0;
  double printed_limit = 0.0;         // log sqrt(pi l2^2 sin(alpha))
  double derived_limit = 0.0;         // closed-form limit of the regularized torsion
  double discrepancy_limit = 0.0;     // log sqrt(2 pi l2 sin(alpha)) from the alternative intermediate
};

ConeSweep cone_sweep(const CircleFrustum& f, int J = 20);

struct CylinderSweep {
  double b1 = 1.0;
  double h = 1.0;
  std::vector<double> alphas;  // 10^{-k}
  std::vector<double> torsion; // T_abs
  std::vector<double> errors;  // |T_abs - 2 pi b1|
  bool errors_decreasing = false;
  double target = 0.0;         // 2 pi b1
};

CylinderSweep cylinder_sweep(double b1, double h, int k_min = 2, int k_max = 6);

struct VerificationEntry {
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_diff = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string notes;
};

struct VerificationReport {
  std::vector<VerificationEntry> entries;
  bool all_pass() const;
};

VerificationReport verify_suite(const CircleFrustum& f);

}  // namespace torsionlab
