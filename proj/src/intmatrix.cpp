#include "ultrashort/intmatrix.hpp"

#include <sstream>
#include <stdexcept>

namespace ultrashort {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<mpz_class>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<mpz_class> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

void IntMatrix::append_row(std::span<const mpz_class> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

IntMatrix IntMatrix::row_slice(std::size_t begin, std::size_t end) const {
  IntMatrix out(end - begin, cols_);
  for (std::size_t r = begin; r < end; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r - begin, c) = (*this)(r, c);
  }
  return out;
}

std::vector<std::vector<long>> IntMatrix::to_long() const {
  std::vector<std::vector<long>> out(rows_, std::vector<long>(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!(*this)(r, c).fits_slong_p()) throw std::overflow_error("matrix entry exceeds long");
      out[r][c] = (*this)(r, c).get_si();
    }
  }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

IntMatrix hermite_normal_form(const IntMatrix& a) {
  IntMatrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  mpz_class g, s, t, u, v;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m(i, c) == 0) continue;
      const mpz_class x = m(r, c), y = m(i, c);
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      u = -y / g;
      v = x / g;
      // [row_r; row_i] <- [[s, t], [u, v]] [row_r; row_i], determinant 1.
      for (std::size_t k = c; k < cols; ++k) {
        mpz_class nr = s * m(r, k) + t * m(i, k);
        mpz_class ni = u * m(r, k) + v * m(i, k);
        m(r, k) = std::move(nr);
        m(i, k) = std::move(ni);
      }
    }
    if (m(r, c) == 0) continue;
    if (m(r, c) < 0) m.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
      m.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  return m.row_slice(0, r);
}

SnfDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  SnfDecomposition out{IntMatrix::identity(rows), a, IntMatrix::identity(cols), 0, {}};
  IntMatrix& S = out.S;
  IntMatrix& U = out.U;
  IntMatrix& V = out.V;

  auto swap_rows = [&](std::size_t x, std::size_t y) {
    S.swap_rows(x, y);
    U.swap_rows(x, y);
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    S.swap_cols(x, y);
    V.swap_cols(x, y);
  };

  const std::size_t limit = std::min(rows, cols);
  for (std::size_t t = 0; t < limit; ++t) {
    // Smallest non-zero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pr = t, pc = t;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (S(i, j) == 0) continue;
        if (!found || abs(S(i, j)) < abs(S(pr, pc))) {
          pr = i;
          pc = j;
          found = true;
        }
      }
    }
    if (!found) break;
    swap_rows(t, pr);
    swap_cols(t, pc);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (S(i, t) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        S.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (S(t, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        S.add_col_multiple(j, t, -q);
        V.add_col_multiple(j, t, -q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot is left in row or column t.
        std::size_t br = t, bc = t;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (S(i, t) != 0 && abs(S(i, t)) < abs(S(br, bc))) {
            br = i;
            bc = t;
          }
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (S(t, j) != 0 && abs(S(t, j)) < abs(S(br, bc))) {
            br = t;
            bc = j;
          }
        }
        swap_rows(t, br);
        swap_cols(t, bc);
        continue;
      }
      // Divisibility: fold any offending row into row t and repeat.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < rows && divides_all; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            S.add_row_multiple(t, i, 1);
            U.add_row_multiple(t, i, 1);
            divides_all = false;
            break;
          }
        }
      }
      if (divides_all) break;
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
    out.invariant_factors.push_back(S(t, t));
    ++out.rank;
  }
  return out;
}

IntMatrix integer_kernel(const IntMatrix& a, std::size_t cols) {
  if (a.rows() == 0) return IntMatrix::identity(cols);
  if (a.cols() != cols) throw std::invalid_argument("integer_kernel: column count mismatch");
  const SnfDecomposition snf = smith_normal_form(a);
  // A x = 0  <=>  S (V^-1 x) = 0  <=>  x in span of columns rank.. of V.
  IntMatrix basis(0, cols);
  for (std::size_t j = snf.rank; j < cols; ++j) {
    std::vector<mpz_class> col(cols);
    for (std::size_t i = 0; i < cols; ++i) col[i] = snf.V(i, j);
    basis.append_row(col);
  }
  if (basis.rows() == 0) return IntMatrix(0, cols);
  return hermite_normal_form(basis);
}

IntMatrix saturate(const IntMatrix& basis, std::size_t cols) {
  if (basis.rows() == 0) return IntMatrix(0, cols);
  const IntMatrix perp = integer_kernel(basis, cols);
  if (perp.rows() == 0) return IntMatrix::identity(cols);
  return integer_kernel(perp, cols);
}

IntMatrix intersect_saturated(std::span<const IntMatrix> lattices, std::size_t cols) {
  IntMatrix stacked(0, cols);
  for (const auto& lattice : lattices) {
    const IntMatrix perp = lattice.rows() == 0 ? IntMatrix::identity(cols) : integer_kernel(lattice, cols);
    for (std::size_t r = 0; r < perp.rows(); ++r) stacked.append_row(perp.row(r));
  }
  if (stacked.rows() == 0) return IntMatrix::identity(cols);
  return integer_kernel(stacked, cols);
}

bool lattice_contains(const IntMatrix& hnf, std::span<const mpz_class> v) {
  std::vector<mpz_class> w(v.begin(), v.end());
  if (hnf.rows() > 0 && w.size() != hnf.cols()) throw std::invalid_argument("lattice_contains: length mismatch");
  for (std::size_t r = 0; r < hnf.rows(); ++r) {
    std::size_t p = 0;
    while (p < hnf.cols() && hnf(r, p) == 0) ++p;
    if (p == hnf.cols()) continue;
    if (!mpz_divisible_p(w[p].get_mpz_t(), hnf(r, p).get_mpz_t())) return false;
    const mpz_class q = w[p] / hnf(r, p);
    for (std::size_t c = p; c < hnf.cols(); ++c) w[c] -= q * hnf(r, c);
  }
  for (const auto& x : w) {
    if (x != 0) return false;
  }
  return true;
}

std::size_t matrix_rank(const IntMatrix& a) { return hermite_normal_form(a).rows(); }

IntMatrix lll_reduce(const IntMatrix& basis, long delta_num, long delta_den) {
  // Integral LLL (de Weger / Cohen): Gram-Schmidt data kept as integers
  // d_i = det of the leading Gram minor and lambda_ij = d_j mu_ij.
  IntMatrix b = basis;
  const std::size_t n = b.rows(), m = b.cols();
  if (n <= 1) return b;
  auto dot = [&](std::size_t i, std::size_t j) {
    mpz_class s = 0;
    for (std::size_t c = 0; c < m; ++c) s += b(i, c) * b(j, c);
    return s;
  };
  std::vector<mpz_class> d(n + 1, 0);  // d[0] = 1, d[i] for row i-1
  std::vector<std::vector<mpz_class>> lam(n, std::vector<mpz_class>(n, 0));
  d[0] = 1;
  d[1] = dot(0, 0);
  if (d[1] == 0) throw std::invalid_argument("lll_reduce: zero basis vector");

  auto reduce = [&](std::size_t k, std::size_t l) {
    // 0-based rows k > l; uses d[l+1].
    mpz_class twice = 2 * lam[k][l];
    if (abs(twice) <= d[l + 1]) return;
    mpz_class q;
    mpz_class num = 2 * lam[k][l] + d[l + 1];
    mpz_class den = 2 * d[l + 1];
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    b.add_row_multiple(k, l, -q);
    lam[k][l] -= q * d[l + 1];
    for (std::size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };

  std::size_t k = 1, kmax = 0;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 0; j <= k; ++j) {
        mpz_class u = dot(k, j);
        for (std::size_t i = 0; i < j; ++i) u = (d[i + 1] * u - lam[k][i] * lam[j][i]) / d[i];
        if (j < k) {
          lam[k][j] = u;
        } else {
          if (u == 0) throw std::invalid_argument("lll_reduce: rows are linearly dependent");
          d[k + 1] = u;
        }
      }
    }
    reduce(k, k - 1);
    // Lovasz: delta d_k^2 > d_{k+1} d_{k-1} + lambda^2, in integer form.
    const mpz_class lhs = delta_den * d[k + 1] * d[k - 1];
    const mpz_class rhs = delta_num * d[k] * d[k] - delta_den * lam[k][k - 1] * lam[k][k - 1];
    if (lhs < rhs) {
      b.swap_rows(k, k - 1);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
      const mpz_class lambda = lam[k][k - 1];
      const mpz_class B = (d[k - 1] * d[k + 1] + lambda * lambda) / d[k];
      for (std::size_t i = k + 1; i <= kmax; ++i) {
        const mpz_class t = lam[i][k];
        lam[i][k] = (d[k + 1] * lam[i][k - 1] - lambda * t) / d[k];
        lam[i][k - 1] = (B * t + lambda * lam[i][k]) / d[k + 1];
      }
      d[k] = B;
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
      ++k;
    }
  }
  return b;
}

}  // namespace ultrashort
