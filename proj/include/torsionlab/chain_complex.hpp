#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "torsionlab/matrix.hpp"
#include "torsionlab/rational.hpp"

namespace torsionlab {

/// Positive real magnitude of the form sqrt(square) * exp(log_numeric).
/// The rational part is exact; log_numeric carries transcendental factors
/// (pi, sin alpha, ...) with an absolute error bound.
struct LogMagnitude {
  Rational square = 1;
  long double log_numeric = 0.0L;
  long double error = 0.0L;

  static LogMagnitude one() { return {}; }
  static LogMagnitude from_rational(const Rational& r);
  static LogMagnitude sqrt_of(const Rational& r);
  static LogMagnitude from_real(long double x);
  static LogMagnitude from_log(long double log_value, long double error = 0.0L);

  long double value() const;  // natural log of the magnitude
  bool is_exact() const { return log_numeric == 0.0L && error == 0.0L; }
  LogMagnitude inverse() const;
  LogMagnitude pow(int k) const;

  friend LogMagnitude operator*(const LogMagnitude& a, const LogMagnitude& b);
  friend LogMagnitude operator/(const LogMagnitude& a, const LogMagnitude& b);
};

/// Exact equality of magnitudes (rational parts and numeric logs).
bool same_magnitude(const LogMagnitude& a, const LogMagnitude& b);

struct LogTorsion {
  LogMagnitude magnitude;
  double value() const { return static_cast<double>(magnitude.value()); }
};

/// Graded vector spaces C_0..C_m in their standard bases with boundaries
/// boundaries[q-1] = ∂_q : C_q -> C_{q-1}, q = 1..m.
struct ChainComplexData {
  std::vector<std::size_t> ranks;
  std::vector<RationalMatrix> boundaries;

  int length() const { return static_cast<int>(ranks.size()) - 1; }
  std::size_t rank(int q) const;
  /// ∂_q with the zero-map convention outside 1..m.
  RationalMatrix boundary(int q) const;
};

/// Per degree: columns are cycles (lifts of homology classes), each scaled by
/// a magnitude. The represented cycle is scale[j] * cycles.column(j).
struct HomologyBasisData {
  std::vector<RationalMatrix> cycles;
  std::vector<std::vector<LogMagnitude>> scales;

  std::size_t rank(int q) const;
  LogMagnitude scale(int q, std::size_t j) const;
  /// Product of all column scales in degree q.
  LogMagnitude volume(int q) const;
};

/// Per degree q, columns in C_q whose images under ∂_q are independent.
using BSets = std::vector<RationalMatrix>;

struct ValidationResult {
  bool ok = true;
  int degree = -1;
  std::string message;
  explicit operator bool() const { return ok; }
};

ValidationResult validate_complex(const ChainComplexData& c);
ValidationResult validate_homology(const ChainComplexData& c, const HomologyBasisData& h);
std::vector<std::size_t> betti_ranks(const ChainComplexData& c);

/// Unscaled basis with the given cycles; scales all 1.
HomologyBasisData make_homology(std::vector<RationalMatrix> cycles);
/// Empty homology basis for an acyclic complex.
HomologyBasisData empty_homology(const ChainComplexData& c);
/// Cycles from kernel complements (deterministic, not normalized).
HomologyBasisData standard_homology(const ChainComplexData& c);

/// Unit vectors on the pivot columns of rref(∂_q), lowest indices first.
BSets default_b(const ChainComplexData& c);

/// |det(∂_{q+1} b_{q+1}, z_q, b_q / c_q)| for each q.
std::vector<LogMagnitude> degree_determinants(const ChainComplexData& c, const HomologyBasisData& h,
                                              const std::optional<BSets>& b = std::nullopt);
LogTorsion torsion_log(const ChainComplexData& c, const HomologyBasisData& h,
                       const std::optional<BSets>& b = std::nullopt);

/// Coordinates of the classes of `cycles` in the rational basis of h_q.
RationalMatrix homology_coordinates(const ChainComplexData& c, const HomologyBasisData& h, int q,
                                    const RationalMatrix& cycles);

struct MappingCylinder {
  ChainComplexData complex;
  std::vector<RationalMatrix> inclusion;  // i_q : C_q -> Cyl_q, first summand
};

MappingCylinder mapping_cylinder(const ChainComplexData& c);
/// Image of h under the inclusion into the cylinder (same scales).
HomologyBasisData push_forward(const MappingCylinder& cyl, const HomologyBasisData& h);
/// log|det i_*| = Σ(-1)^q log|det [i_*(h_q) / h_cyl_q]|.
LogMagnitude induced_determinant_log(const ChainComplexData& c, const HomologyBasisData& h,
                                     const MappingCylinder& cyl, const HomologyBasisData& h_cyl);

/// C†_j = C_{m-j}, ∂†_j = ∂_{m-j+1}^T.
ChainComplexData dual_complex(const ChainComplexData& c);

struct DualBases {
  HomologyBasisData homology;
  BSets b;
};

/// Dual bases from M_q^{-T}, M_q = (∂b_{q+1}, z_q, b_q): makes D†_{m-q} the
/// inverse of D_q.
DualBases transport_to_dual(const ChainComplexData& c, const HomologyBasisData& h,
                            const std::optional<BSets>& b = std::nullopt);

ChainComplexData direct_sum(const ChainComplexData& a, const ChainComplexData& b);
HomologyBasisData direct_sum(const ChainComplexData& a, const HomologyBasisData& ha,
                             const ChainComplexData& b, const HomologyBasisData& hb);

/// 0 -> sub --i--> total --p--> quotient -> 0.
struct ShortExactSequence {
  ChainComplexData sub;
  ChainComplexData total;
  ChainComplexData quotient;
  std::vector<RationalMatrix> inclusion;   // i_q : sub_q -> total_q
  std::vector<RationalMatrix> projection;  // p_q : total_q -> quotient_q
};

/// Subcomplex spanned by the listed cells of each degree; quotient on the rest.
ShortExactSequence pair_sequence(const ChainComplexData& c, const std::vector<std::vector<std::size_t>>& sub_cells);
ValidationResult validate_sequence(const ShortExactSequence& s);

/// The acyclic long exact homology sequence, T_{3q+2} = H_q(sub),
/// T_{3q+1} = H_q(total), T_{3q} = H_q(quotient), in the rational cycle bases.
struct LongExactSequence {
  ChainComplexData complex;
  std::vector<std::vector<LogMagnitude>> scales;  // per T degree
};

LongExactSequence long_exact_sequence(const ShortExactSequence& s, const HomologyBasisData& h_sub,
                                      const HomologyBasisData& h_total, const HomologyBasisData& h_quot);

LogTorsion pair_sequence_torsion_log(const ShortExactSequence& s, const HomologyBasisData& h_sub,
                                     const HomologyBasisData& h_total, const HomologyBasisData& h_quot);

struct MilnorDecomposition {
  LogMagnitude total;
  LogMagnitude sub;
  LogMagnitude quotient;
  LogMagnitude sequence;
  LogMagnitude compatibility;  // Σ(-1)^q log|det(i c', s c'' / c)|
  /// total / (sub * quotient * sequence * compatibility); exactly one when additive.
  LogMagnitude defect;
};

MilnorDecomposition milnor_decomposition(const ShortExactSequence& s, const HomologyBasisData& h_sub,
                                         const HomologyBasisData& h_total, const HomologyBasisData& h_quot);

}  // namespace torsionlab
