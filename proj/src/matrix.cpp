#include "torsionlab/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace torsionlab {

namespace {

struct Elimination {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;
};

// Gauss-Jordan to reduced row echelon form; first nonzero entry as pivot.
Elimination eliminate(RationalMatrix m) {
  Elimination out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

}  // namespace

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr == 0 ? 0 : rows.begin()->size();
  RationalMatrix m(nr, nc);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != nc) throw std::invalid_argument("ragged matrix literal");
    std::size_t c = 0;
    for (long v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows,
                                         std::size_t cols_if_empty) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr == 0 ? cols_if_empty : rows.front().size();
  RationalMatrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    if (rows[r].size() != nc) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RationalMatrix RationalMatrix::column_vector(const std::vector<Rational>& entries) {
  RationalMatrix m(entries.size(), 1);
  for (std::size_t r = 0; r < entries.size(); ++r) m(r, 0) = entries[r];
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalMatrix RationalMatrix::column(std::size_t c) const { return block(0, c, rows_, 1); }

RationalMatrix RationalMatrix::columns(const std::vector<std::size_t>& indices) const {
  RationalMatrix m(rows_, indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] >= cols_) throw std::out_of_range("column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) m(r, j) = (*this)(r, indices[j]);
  }
  return m;
}

RationalMatrix RationalMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block out of range");
  RationalMatrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
  return m;
}

void RationalMatrix::set_block(std::size_t r0, std::size_t c0, const RationalMatrix& m) {
  if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_) throw std::out_of_range("matrix block out of range");
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) (*this)(r0 + r, c0 + c) = m(r, c);
}

bool RationalMatrix::is_zero() const {
  for (const auto& v : data_) {
    if (v != 0) return false;
  }
  return true;
}

std::size_t RationalMatrix::rank() const { return eliminate(*this).pivots.size(); }

Rational RationalMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  RationalMatrix m = *this;
  Rational det = 1;
  for (std::size_t col = 0; col < cols_; ++col) {
    std::size_t pivot = col;
    while (pivot < rows_ && m(pivot, col) == 0) ++pivot;
    if (pivot == rows_) return Rational(0);
    if (pivot != col) {
      for (std::size_t c = 0; c < cols_; ++c) std::swap(m(pivot, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    const Rational inv = 1 / m(col, col);
    for (std::size_t r = col + 1; r < rows_; ++r) {
      if (m(r, col) == 0) continue;
      const Rational factor = m(r, col) * inv;
      for (std::size_t c = col; c < cols_; ++c) m(r, c) -= factor * m(col, c);
    }
  }
  return det;
}

std::optional<RationalMatrix> RationalMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
  auto x = solve(*this, identity(rows_));
  if (!x || (*this * *x) != identity(rows_)) return std::nullopt;
  return x;
}

std::vector<std::size_t> RationalMatrix::pivot_columns() const { return eliminate(*this).pivots; }

RationalMatrix RationalMatrix::reduced_row_echelon() const { return eliminate(*this).reduced; }

RationalMatrix RationalMatrix::kernel_basis() const {
  const Elimination e = eliminate(*this);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (!is_pivot[c]) free.push_back(c);
  }
  RationalMatrix basis(cols_, free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    basis(free[j], j) = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) basis(e.pivots[i], j) = -e.reduced(i, free[j]);
  }
  return basis;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& v = a(r, k);
      if (v == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += v * b(k, c);
    }
  return out;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum dimension mismatch");
  RationalMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference dimension mismatch");
  RationalMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

RationalMatrix operator*(const Rational& s, const RationalMatrix& m) {
  RationalMatrix out = m;
  for (auto& v : out.data_) v *= s;
  return out;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RationalMatrix hconcat(const RationalMatrix& a, const RationalMatrix& b) {
  std::size_t rows = a.rows();
  if (a.cols() == 0) rows = b.rows();
  else if (b.cols() != 0 && a.rows() != b.rows()) throw std::invalid_argument("hconcat row mismatch");
  RationalMatrix out(rows, a.cols() + b.cols());
  if (a.cols() != 0) out.set_block(0, 0, a);
  if (b.cols() != 0) out.set_block(0, a.cols(), b);
  return out;
}

RationalMatrix vconcat(const RationalMatrix& a, const RationalMatrix& b) {
  std::size_t cols = a.cols();
  if (a.rows() == 0) cols = b.cols();
  else if (b.rows() != 0 && a.cols() != b.cols()) throw std::invalid_argument("vconcat column mismatch");
  RationalMatrix out(a.rows() + b.rows(), cols);
  if (a.rows() != 0) out.set_block(0, 0, a);
  if (b.rows() != 0) out.set_block(a.rows(), 0, b);
  return out;
}

RationalMatrix block_diagonal(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

std::optional<RationalMatrix> solve(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  const Elimination e = eliminate(hconcat(a, b));
  const std::size_t n = a.cols();
  for (auto p : e.pivots) {
    if (p >= n) return std::nullopt;  // pivot in the augmented block: inconsistent
  }
  RationalMatrix x(n, b.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t c = 0; c < b.cols(); ++c) x(e.pivots[i], c) = e.reduced(i, n + c);
  return x;
}

}  // namespace torsionlab
