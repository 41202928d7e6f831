#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace hk {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
///
/// Any of the dimensions may be zero; a 0 x n matrix is a legitimate map
/// from Z^n to the trivial group.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  /// Single-column matrix.
  static IntMatrix column(std::span<const Integer> v);
  static IntMatrix diagonal(std::span<const Integer> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const Integer> entries() const noexcept { return data_; }

  IntVector col(std::size_t c) const;
  IntVector row(std::size_t r) const;
  bool is_zero() const;

  IntMatrix transpose() const;
  /// Copy of the sub-block [r0, r0+nr) x [c0, c0+nc).
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  /// Writes `m` into this matrix with its top-left corner at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& m);
  /// Adds `m` into this matrix with its top-left corner at (r0, c0).
  void add_block(std::size_t r0, std::size_t c0, const IntMatrix& m);

  /// [A | B]; row counts must agree.
  static IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix block_diagonal(std::span<const IntMatrix> blocks);

  /// Columns [c0, c0+n).
  IntMatrix cols_range(std::size_t c0, std::size_t n) const { return block(0, c0, rows_, n); }
  IntMatrix rows_range(std::size_t r0, std::size_t n) const { return block(r0, 0, n, cols_); }

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  IntMatrix operator-() const;
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& k, const IntMatrix& a);
  friend IntVector operator*(const IntMatrix& a, std::span<const Integer> v);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Exact determinant of a square matrix (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& a);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

}  // namespace hk
