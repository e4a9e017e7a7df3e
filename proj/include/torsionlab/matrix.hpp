#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "torsionlab/rational.hpp"

namespace torsionlab {

/// Dense matrix over the rationals, row-major. Zero-sized dimensions are
/// allowed and follow the empty-matrix conventions (det of 0x0 is 1).
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols_if_empty = 0);
  static RationalMatrix column_vector(const std::vector<Rational>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix transpose() const;
  RationalMatrix column(std::size_t c) const;
  RationalMatrix columns(const std::vector<std::size_t>& indices) const;
  RationalMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const RationalMatrix& m);

  bool is_zero() const;
  std::size_t rank() const;
  Rational determinant() const;
  std::optional<RationalMatrix> inverse() const;

  /// Pivot column indices of the reduced row echelon form, ascending.
  std::vector<std::size_t> pivot_columns() const;
  RationalMatrix reduced_row_echelon() const;
  /// Columns form a basis of the kernel (cols() x nullity).
  RationalMatrix kernel_basis() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& s, const RationalMatrix& m);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// [a | b]; both must have the same row count (a zero-column operand may have
/// any row count when the other fixes it).
RationalMatrix hconcat(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix vconcat(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix block_diagonal(const RationalMatrix& a, const RationalMatrix& b);

/// Some X with a * X == b, or nullopt when the system is inconsistent.
std::optional<RationalMatrix> solve(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace torsionlab
