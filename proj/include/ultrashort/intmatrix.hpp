#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ultrashort {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols = 0);
  static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<mpz_class> row(std::size_t r) const;
  void append_row(std::span<const mpz_class> values);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  IntMatrix transpose() const;
  /// Rows [begin, end) as a new matrix.
  IntMatrix row_slice(std::size_t begin, std::size_t end) const;
  std::vector<std::vector<long>> to_long() const;
  std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// Row-style Hermite normal form of the lattice spanned by the rows of a:
/// echelon, positive pivots, entries above each pivot reduced into [0, pivot).
/// Zero rows are dropped, so the result is a basis (unique per lattice).
IntMatrix hermite_normal_form(const IntMatrix& a);

/// U * A * V = S with U, V unimodular and S diagonal with s_1 | s_2 | ... | s_rank.
struct SnfDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  std::size_t rank = 0;
  std::vector<mpz_class> invariant_factors;
};

SnfDecomposition smith_normal_form(const IntMatrix& a);

/// Basis (as rows, in HNF) of {x in Z^cols : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a, std::size_t cols);

/// HNF basis of (Q-span of rows) intersected with Z^cols.
IntMatrix saturate(const IntMatrix& basis, std::size_t cols);

/// Intersection of saturated lattices given by HNF bases in Z^cols.
IntMatrix intersect_saturated(std::span<const IntMatrix> lattices, std::size_t cols);

/// Membership of v in the lattice with HNF basis hnf.
bool lattice_contains(const IntMatrix& hnf, std::span<const mpz_class> v);

/// Rank over Q.
std::size_t matrix_rank(const IntMatrix& a);

/// Exact integral LLL reduction of linearly independent rows, Lovasz
/// parameter delta = delta_num / delta_den.
IntMatrix lll_reduce(const IntMatrix& basis, long delta_num = 99, long delta_den = 100);

}  // namespace ultrashort
