#include "torsionlab/chain_complex.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace torsionlab {

namespace {

std::string degree_message(int q, const std::string& what) { return "degree " + std::to_string(q) + ": " + what; }

Rational rational_pow(const Rational& base, int k) {
  Rational out = 1;
  const Rational factor = k >= 0 ? base : Rational(1 / base);
  for (int i = 0; i < std::abs(k); ++i) out *= factor;
  return out;
}

// Columns of the identity on the listed coordinates.
RationalMatrix unit_columns(std::size_t n, const std::vector<std::size_t>& indices) {
  RationalMatrix m(n, indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) m(indices[j], j) = 1;
  return m;
}

RationalMatrix select(const RationalMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  RationalMatrix out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = m(rows[r], cols[c]);
  return out;
}

RationalMatrix cycles_in(const ChainComplexData& c, const HomologyBasisData& h, int q) {
  if (q >= 0 && static_cast<std::size_t>(q) < h.cycles.size() && h.cycles[q].cols() > 0) return h.cycles[q];
  return RationalMatrix(c.rank(q), 0);
}

RationalMatrix b_in(const ChainComplexData& c, const BSets& b, int q) {
  if (q >= 0 && static_cast<std::size_t>(q) < b.size() && b[q].cols() > 0) return b[q];
  return RationalMatrix(c.rank(q), 0);
}

std::vector<LogMagnitude> scales_in(const HomologyBasisData& h, int q) {
  std::vector<LogMagnitude> out;
  for (std::size_t j = 0; j < h.rank(q); ++j) out.push_back(h.scale(q, j));
  return out;
}

LogMagnitude alternating_product(const std::vector<LogMagnitude>& factors) {
  LogMagnitude out;
  for (std::size_t q = 0; q < factors.size(); ++q) out = out * (q % 2 == 0 ? factors[q] : factors[q].inverse());
  return out;
}

}  // namespace

LogMagnitude LogMagnitude::from_rational(const Rational& r) {
  if (r == 0) throw std::domain_error("zero magnitude");
  LogMagnitude m;
  m.square = r * r;
  return m;
}

LogMagnitude LogMagnitude::sqrt_of(const Rational& r) {
  if (r <= 0) throw std::domain_error("square root of a non-positive rational");
  LogMagnitude m;
  m.square = r;
  return m;
}

LogMagnitude LogMagnitude::from_real(long double x) {
  if (!(x != 0.0L) || !std::isfinite(x)) throw std::domain_error("magnitude must be finite and nonzero");
  const long double l = std::log(std::fabs(x));
  return from_log(l, LDBL_EPSILON * std::max(1.0L, std::fabs(l)));
}

LogMagnitude LogMagnitude::from_log(long double log_value, long double error) {
  if (!std::isfinite(log_value)) throw std::domain_error("non-finite log magnitude");
  LogMagnitude m;
  m.log_numeric = log_value;
  m.error = error;
  return m;
}

long double LogMagnitude::value() const { return 0.5L * log_abs(square) + log_numeric; }

LogMagnitude LogMagnitude::inverse() const {
  LogMagnitude m;
  m.square = 1 / square;
  m.log_numeric = -log_numeric;
  m.error = error;
  return m;
}

LogMagnitude LogMagnitude::pow(int k) const {
  LogMagnitude m;
  m.square = rational_pow(square, k);
  m.log_numeric = log_numeric * k;
  m.error = error * std::abs(k);
  return m;
}

LogMagnitude operator*(const LogMagnitude& a, const LogMagnitude& b) {
  LogMagnitude m;
  m.square = a.square * b.square;
  m.log_numeric = a.log_numeric + b.log_numeric;
  m.error = a.error + b.error + LDBL_EPSILON * std::fabs(m.log_numeric);
  return m;
}

LogMagnitude operator/(const LogMagnitude& a, const LogMagnitude& b) { return a * b.inverse(); }

bool same_magnitude(const LogMagnitude& a, const LogMagnitude& b) {
  return a.square == b.square && a.log_numeric == b.log_numeric;
}

std::size_t ChainComplexData::rank(int q) const {
  if (q < 0 || q > length()) return 0;
  return ranks[q];
}

RationalMatrix ChainComplexData::boundary(int q) const {
  if (q >= 1 && q <= length()) return boundaries[q - 1];
  return RationalMatrix(rank(q - 1), rank(q));
}

std::size_t HomologyBasisData::rank(int q) const {
  if (q < 0 || static_cast<std::size_t>(q) >= cycles.size()) return 0;
  return cycles[q].cols();
}

LogMagnitude HomologyBasisData::scale(int q, std::size_t j) const {
  if (q < 0 || static_cast<std::size_t>(q) >= scales.size() || j >= scales[q].size()) return LogMagnitude::one();
  return scales[q][j];
}

LogMagnitude HomologyBasisData::volume(int q) const {
  LogMagnitude v;
  for (std::size_t j = 0; j < rank(q); ++j) v = v * scale(q, j);
  return v;
}

ValidationResult validate_complex(const ChainComplexData& c) {
  if (c.ranks.empty()) return {false, -1, "complex has no degrees"};
  const int m = c.length();
  if (c.boundaries.size() != static_cast<std::size_t>(m)) {
    return {false, -1, "expected " + std::to_string(m) + " boundary matrices, got " + std::to_string(c.boundaries.size())};
  }
  for (int q = 1; q <= m; ++q) {
    const auto& d = c.boundaries[q - 1];
    if (d.rows() != c.ranks[q - 1] || d.cols() != c.ranks[q]) {
      return {false, q,
              degree_message(q, "boundary is " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                                    ", expected " + std::to_string(c.ranks[q - 1]) + "x" + std::to_string(c.ranks[q]))};
    }
  }
  for (int q = 1; q < m; ++q) {
    if (!(c.boundaries[q - 1] * c.boundaries[q]).is_zero()) {
      return {false, q, degree_message(q, "boundary composite d_q d_{q+1} is nonzero")};
    }
  }
  return {};
}

ValidationResult validate_homology(const ChainComplexData& c, const HomologyBasisData& h) {
  const auto betti = betti_ranks(c);
  if (h.cycles.size() > betti.size()) return {false, static_cast<int>(betti.size()), "homology given beyond top degree"};
  for (int q = 0; q <= c.length(); ++q) {
    const RationalMatrix z = cycles_in(c, h, q);
    if (z.rows() != c.rank(q)) return {false, q, degree_message(q, "cycle vectors have wrong length")};
    if (z.cols() != betti[q]) {
      return {false, q, degree_message(q, "expected " + std::to_string(betti[q]) + " homology classes")};
    }
    if (!(c.boundary(q) * z).is_zero()) return {false, q, degree_message(q, "basis column is not a cycle")};
    const RationalMatrix d = c.boundary(q + 1);
    if (hconcat(d, z).rank() != d.rank() + z.cols()) {
      return {false, q, degree_message(q, "classes are dependent modulo boundaries")};
    }
    if (q < static_cast<int>(h.scales.size()) && !h.scales[q].empty() && h.scales[q].size() != z.cols()) {
      return {false, q, degree_message(q, "scale count does not match cycle count")};
    }
  }
  return {};
}

std::vector<std::size_t> betti_ranks(const ChainComplexData& c) {
  const int m = c.length();
  std::vector<std::size_t> out(m + 1);
  std::vector<std::size_t> boundary_rank(m + 2, 0);
  for (int q = 1; q <= m; ++q) boundary_rank[q] = c.boundaries[q - 1].rank();
  for (int q = 0; q <= m; ++q) out[q] = c.ranks[q] - boundary_rank[q] - boundary_rank[q + 1];
  return out;
}

HomologyBasisData make_homology(std::vector<RationalMatrix> cycles) {
  HomologyBasisData h;
  h.cycles = std::move(cycles);
  h.scales.resize(h.cycles.size());
  for (std::size_t q = 0; q < h.cycles.size(); ++q) h.scales[q].assign(h.cycles[q].cols(), LogMagnitude::one());
  return h;
}

HomologyBasisData empty_homology(const ChainComplexData& c) {
  std::vector<RationalMatrix> cycles;
  for (int q = 0; q <= c.length(); ++q) cycles.emplace_back(c.rank(q), 0);
  return make_homology(std::move(cycles));
}

HomologyBasisData standard_homology(const ChainComplexData& c) {
  std::vector<RationalMatrix> cycles;
  for (int q = 0; q <= c.length(); ++q) {
    const RationalMatrix kernel = c.boundary(q).kernel_basis();
    const RationalMatrix d = c.boundary(q + 1);
    // Kernel columns that are not pivots after the boundary image come first.
    const auto pivots = hconcat(d, kernel).pivot_columns();
    std::vector<std::size_t> chosen;
    for (auto p : pivots) {
      if (p >= d.cols()) chosen.push_back(p - d.cols());
    }
    cycles.push_back(kernel.columns(chosen));
  }
  return make_homology(std::move(cycles));
}

BSets default_b(const ChainComplexData& c) {
  BSets b;
  for (int q = 0; q <= c.length(); ++q) b.push_back(unit_columns(c.rank(q), c.boundary(q).pivot_columns()));
  return b;
}

std::vector<LogMagnitude> degree_determinants(const ChainComplexData& c, const HomologyBasisData& h,
                                              const std::optional<BSets>& b_opt) {
  const BSets b = b_opt ? *b_opt : default_b(c);
  const int m = c.length();
  std::vector<LogMagnitude> out;
  for (int q = 0; q <= m; ++q) {
    const RationalMatrix image = c.boundary(q + 1) * b_in(c, b, q + 1);
    const RationalMatrix basis = hconcat(hconcat(image, cycles_in(c, h, q)), b_in(c, b, q));
    if (basis.rows() != c.rank(q) || basis.cols() != c.rank(q)) {
      throw std::invalid_argument(degree_message(q, "combined set (db, z, b) has " + std::to_string(basis.cols()) +
                                                        " vectors in a space of rank " + std::to_string(c.rank(q))));
    }
    const Rational det = basis.determinant();
    if (det == 0) throw std::invalid_argument(degree_message(q, "combined set (db, z, b) is not a basis"));
    out.push_back(LogMagnitude::from_rational(det) * h.volume(q));
  }
  return out;
}

LogTorsion torsion_log(const ChainComplexData& c, const HomologyBasisData& h, const std::optional<BSets>& b) {
  return {alternating_product(degree_determinants(c, h, b))};
}

RationalMatrix homology_coordinates(const ChainComplexData& c, const HomologyBasisData& h, int q,
                                    const RationalMatrix& cycles) {
  const RationalMatrix z = cycles_in(c, h, q);
  const auto x = solve(hconcat(z, c.boundary(q + 1)), cycles);
  if (!x) throw std::invalid_argument(degree_message(q, "vector is not a cycle in the span of the homology basis"));
  return x->block(0, 0, z.cols(), cycles.cols());
}

MappingCylinder mapping_cylinder(const ChainComplexData& c) {
  const int m = c.length();
  MappingCylinder cyl;
  auto& out = cyl.complex;
  for (int q = 0; q <= m + 1; ++q) out.ranks.push_back(2 * c.rank(q) + c.rank(q - 1));
  for (int q = 1; q <= m + 1; ++q) {
    const std::size_t nq = c.rank(q), nq1 = c.rank(q - 1), nq2 = c.rank(q - 2);
    RationalMatrix d(out.ranks[q - 1], out.ranks[q]);
    const RationalMatrix dq = c.boundary(q);
    const RationalMatrix dq1 = c.boundary(q - 1);
    d.set_block(0, 0, dq);
    d.set_block(0, nq, RationalMatrix::identity(nq1));
    d.set_block(nq1, nq, Rational(-1) * dq1);
    d.set_block(nq1 + nq2, nq, Rational(-1) * RationalMatrix::identity(nq1));
    d.set_block(nq1 + nq2, nq + nq1, dq);
    out.boundaries.push_back(std::move(d));
  }
  for (int q = 0; q <= m + 1; ++q) {
    RationalMatrix i(out.ranks[q], c.rank(q));
    i.set_block(0, 0, RationalMatrix::identity(c.rank(q)));
    cyl.inclusion.push_back(std::move(i));
  }
  return cyl;
}

HomologyBasisData push_forward(const MappingCylinder& cyl, const HomologyBasisData& h) {
  HomologyBasisData out;
  for (std::size_t q = 0; q < cyl.inclusion.size(); ++q) {
    const std::size_t r = h.rank(static_cast<int>(q));
    out.cycles.push_back(r == 0 ? RationalMatrix(cyl.complex.rank(static_cast<int>(q)), 0)
                                : cyl.inclusion[q] * h.cycles[q]);
    out.scales.push_back(scales_in(h, static_cast<int>(q)));
  }
  return out;
}

LogMagnitude induced_determinant_log(const ChainComplexData& c, const HomologyBasisData& h,
                                     const MappingCylinder& cyl, const HomologyBasisData& h_cyl) {
  std::vector<LogMagnitude> factors;
  for (int q = 0; q <= cyl.complex.length(); ++q) {
    const RationalMatrix image = cyl.inclusion[q] * cycles_in(c, h, q);
    const RationalMatrix x = homology_coordinates(cyl.complex, h_cyl, q, image);
    if (x.rows() != x.cols()) throw std::invalid_argument(degree_message(q, "homology ranks differ across inclusion"));
    const Rational det = x.determinant();
    if (det == 0) throw std::invalid_argument(degree_message(q, "induced map is not an isomorphism"));
    factors.push_back(LogMagnitude::from_rational(det) * h.volume(q) / h_cyl.volume(q));
  }
  return alternating_product(factors);
}

ChainComplexData dual_complex(const ChainComplexData& c) {
  const int m = c.length();
  ChainComplexData out;
  out.ranks.assign(c.ranks.rbegin(), c.ranks.rend());
  for (int j = 1; j <= m; ++j) out.boundaries.push_back(c.boundary(m - j + 1).transpose());
  return out;
}

DualBases transport_to_dual(const ChainComplexData& c, const HomologyBasisData& h, const std::optional<BSets>& b_opt) {
  const BSets b = b_opt ? *b_opt : default_b(c);
  const int m = c.length();
  DualBases out;
  out.homology.cycles.resize(m + 1);
  out.homology.scales.resize(m + 1);
  out.b.resize(m + 1);
  for (int q = 0; q <= m; ++q) {
    const RationalMatrix bq1 = b_in(c, b, q + 1);
    const RationalMatrix z = cycles_in(c, h, q);
    const RationalMatrix basis = hconcat(hconcat(c.boundary(q + 1) * bq1, z), b_in(c, b, q));
    if (basis.rows() != basis.cols()) throw std::invalid_argument(degree_message(q, "combined set is not square"));
    const auto inv = basis.inverse();
    if (!inv) throw std::invalid_argument(degree_message(q, "combined set (db, z, b) is not a basis"));
    const RationalMatrix dual = inv->transpose();
    const std::size_t k = bq1.cols();
    const int j = m - q;
    out.b[j] = dual.block(0, 0, dual.rows(), k);
    out.homology.cycles[j] = dual.block(0, k, dual.rows(), z.cols());
    for (std::size_t i = 0; i < z.cols(); ++i) out.homology.scales[j].push_back(h.scale(q, i).inverse());
  }
  return out;
}

ChainComplexData direct_sum(const ChainComplexData& a, const ChainComplexData& b) {
  const int m = std::max(a.length(), b.length());
  ChainComplexData out;
  for (int q = 0; q <= m; ++q) out.ranks.push_back(a.rank(q) + b.rank(q));
  for (int q = 1; q <= m; ++q) out.boundaries.push_back(block_diagonal(a.boundary(q), b.boundary(q)));
  return out;
}

HomologyBasisData direct_sum(const ChainComplexData& a, const HomologyBasisData& ha, const ChainComplexData& b,
                             const HomologyBasisData& hb) {
  const int m = std::max(a.length(), b.length());
  HomologyBasisData out;
  for (int q = 0; q <= m; ++q) {
    out.cycles.push_back(block_diagonal(cycles_in(a, ha, q), cycles_in(b, hb, q)));
    auto s = scales_in(ha, q);
    for (const auto& v : scales_in(hb, q)) s.push_back(v);
    out.scales.push_back(std::move(s));
  }
  return out;
}

ShortExactSequence pair_sequence(const ChainComplexData& c, const std::vector<std::vector<std::size_t>>& sub_cells) {
  const int m = c.length();
  std::vector<std::vector<std::size_t>> sub(m + 1), rest(m + 1);
  for (int q = 0; q <= m; ++q) {
    std::vector<bool> in_sub(c.rank(q), false);
    if (static_cast<std::size_t>(q) < sub_cells.size()) {
      for (auto idx : sub_cells[q]) {
        if (idx >= c.rank(q)) throw std::out_of_range(degree_message(q, "subcomplex cell index out of range"));
        in_sub[idx] = true;
      }
    }
    for (std::size_t i = 0; i < c.rank(q); ++i) (in_sub[i] ? sub[q] : rest[q]).push_back(i);
  }
  ShortExactSequence s;
  s.total = c;
  for (int q = 0; q <= m; ++q) {
    s.sub.ranks.push_back(sub[q].size());
    s.quotient.ranks.push_back(rest[q].size());
    s.inclusion.push_back(unit_columns(c.rank(q), sub[q]));
    s.projection.push_back(unit_columns(c.rank(q), rest[q]).transpose());
  }
  for (int q = 1; q <= m; ++q) {
    const RationalMatrix& d = c.boundaries[q - 1];
    if (!select(d, rest[q - 1], sub[q]).is_zero()) {
      throw std::invalid_argument(degree_message(q, "listed cells do not span a subcomplex"));
    }
    s.sub.boundaries.push_back(select(d, sub[q - 1], sub[q]));
    s.quotient.boundaries.push_back(select(d, rest[q - 1], rest[q]));
  }
  return s;
}

ValidationResult validate_sequence(const ShortExactSequence& s) {
  for (const auto* c : {&s.sub, &s.total, &s.quotient}) {
    if (auto v = validate_complex(*c); !v) return v;
  }
  const int m = s.total.length();
  if (s.sub.length() > m || s.quotient.length() > m || s.inclusion.size() != static_cast<std::size_t>(m + 1) ||
      s.projection.size() != static_cast<std::size_t>(m + 1)) {
    return {false, -1, "sequence maps do not cover every degree"};
  }
  for (int q = 0; q <= m; ++q) {
    const RationalMatrix& i = s.inclusion[q];
    const RationalMatrix& p = s.projection[q];
    if (i.rows() != s.total.rank(q) || i.cols() != s.sub.rank(q) || p.rows() != s.quotient.rank(q) ||
        p.cols() != s.total.rank(q)) {
      return {false, q, degree_message(q, "sequence map has wrong dimensions")};
    }
    if (i.rank() != i.cols()) return {false, q, degree_message(q, "inclusion is not injective")};
    if (p.rank() != p.rows()) return {false, q, degree_message(q, "projection is not surjective")};
    if (!(p * i).is_zero()) return {false, q, degree_message(q, "projection does not kill the subcomplex")};
    if (i.cols() + p.rows() != i.rows()) return {false, q, degree_message(q, "sequence is not exact in the middle")};
    if (q >= 1) {
      if (s.total.boundary(q) * i != s.inclusion[q - 1] * s.sub.boundary(q)) {
        return {false, q, degree_message(q, "inclusion is not a chain map")};
      }
      if (s.quotient.boundary(q) * p != s.projection[q - 1] * s.total.boundary(q)) {
        return {false, q, degree_message(q, "projection is not a chain map")};
      }
    }
  }
  return {};
}

LongExactSequence long_exact_sequence(const ShortExactSequence& s, const HomologyBasisData& h_sub,
                                      const HomologyBasisData& h_total, const HomologyBasisData& h_quot) {
  if (auto v = validate_sequence(s); !v) throw std::invalid_argument("invalid short exact sequence: " + v.message);
  const int m = s.total.length();
  const int top = 3 * m + 2;
  LongExactSequence les;
  auto& t = les.complex;
  t.ranks.assign(top + 1, 0);
  les.scales.assign(top + 1, {});
  for (int q = 0; q <= m; ++q) {
    t.ranks[3 * q + 2] = h_sub.rank(q);
    t.ranks[3 * q + 1] = h_total.rank(q);
    t.ranks[3 * q] = h_quot.rank(q);
    les.scales[3 * q + 2] = scales_in(h_sub, q);
    les.scales[3 * q + 1] = scales_in(h_total, q);
    les.scales[3 * q] = scales_in(h_quot, q);
  }
  for (int j = 1; j <= top; ++j) {
    const int q = j / 3;
    RationalMatrix d;
    switch (j % 3) {
      case 2:  // i_* : H_q(sub) -> H_q(total)
        d = homology_coordinates(s.total, h_total, q, s.inclusion[q] * cycles_in(s.sub, h_sub, q));
        break;
      case 1:  // p_* : H_q(total) -> H_q(quotient)
        d = homology_coordinates(s.quotient, h_quot, q, s.projection[q] * cycles_in(s.total, h_total, q));
        break;
      default: {  // connecting map : H_q(quotient) -> H_{q-1}(sub)
        const RationalMatrix z = cycles_in(s.quotient, h_quot, q);
        const auto lift = solve(s.projection[q], z);
        const auto pulled = solve(s.inclusion[q - 1], s.total.boundary(q) * *lift);
        if (!pulled) throw std::invalid_argument(degree_message(q, "boundary of lift is not in the subcomplex"));
        d = homology_coordinates(s.sub, h_sub, q - 1, *pulled);
        break;
      }
    }
    t.boundaries.push_back(std::move(d));
  }
  const auto betti = betti_ranks(t);
  for (int j = 0; j <= top; ++j) {
    if (betti[j] != 0) throw std::invalid_argument("homology sequence is not exact at position " + std::to_string(j));
  }
  return les;
}

LogTorsion pair_sequence_torsion_log(const ShortExactSequence& s, const HomologyBasisData& h_sub,
                                     const HomologyBasisData& h_total, const HomologyBasisData& h_quot) {
  const LongExactSequence les = long_exact_sequence(s, h_sub, h_total, h_quot);
  std::vector<LogMagnitude> factors = degree_determinants(les.complex, empty_homology(les.complex));
  for (std::size_t j = 0; j < factors.size(); ++j) {
    for (const auto& v : les.scales[j]) factors[j] = factors[j] / v;
  }
  return {alternating_product(factors)};
}

MilnorDecomposition milnor_decomposition(const ShortExactSequence& s, const HomologyBasisData& h_sub,
                                         const HomologyBasisData& h_total, const HomologyBasisData& h_quot) {
  MilnorDecomposition out;
  out.total = torsion_log(s.total, h_total).magnitude;
  out.sub = torsion_log(s.sub, h_sub).magnitude;
  out.quotient = torsion_log(s.quotient, h_quot).magnitude;
  out.sequence = pair_sequence_torsion_log(s, h_sub, h_total, h_quot).magnitude;
  std::vector<LogMagnitude> factors;
  for (int q = 0; q <= s.total.length(); ++q) {
    const auto section = solve(s.projection[q], RationalMatrix::identity(s.quotient.rank(q)));
    const Rational det = hconcat(s.inclusion[q], *section).determinant();
    factors.push_back(LogMagnitude::from_rational(det));
  }
  out.compatibility = alternating_product(factors);
  out.defect = out.total / (out.sub * out.quotient * out.sequence * out.compatibility);
  return out;
}

}  // namespace torsionlab
