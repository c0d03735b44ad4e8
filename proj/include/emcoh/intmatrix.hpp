#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <utility>
#include <vector>

#include "emcoh/core.hpp"

namespace emcoh {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const {
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const BigInt& x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
      }
    return r;
  }

  std::vector<BigInt> apply(const std::vector<BigInt>& v) const {
    std::vector<BigInt> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  bool operator==(const IntMatrix&) const = default;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  // row_i += f * row_j
  void add_row(std::size_t i, std::size_t j, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(j, c) != 0) (*this)(i, c) += f * (*this)(j, c);
  }
  // col_i += f * col_j
  void add_col(std::size_t i, std::size_t j, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t r = 0; r < rows_; ++r)
      if ((*this)(r, j) != 0) (*this)(r, i) += f * (*this)(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> a_;
};

// u * m * v == d with d diagonal, nonnegative, d_i | d_{i+1}.
struct SmithForm {
  IntMatrix u, u_inv, d, v, v_inv;
  std::size_t rank = 0;
  BigInt diag(std::size_t i) const { return i < d.rows() && i < d.cols() ? d(i, i) : BigInt(0); }
};

inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  SmithForm s{IntMatrix::identity(R), IntMatrix::identity(R), m, IntMatrix::identity(C),
              IntMatrix::identity(C), 0};
  IntMatrix& a = s.d;

  auto row_op = [&](std::size_t i, std::size_t j, const BigInt& f) {  // row_i += f row_j
    a.add_row(i, j, f);
    s.u.add_row(i, j, f);
    s.u_inv.add_col(j, i, -f);
  };
  auto col_op = [&](std::size_t i, std::size_t j, const BigInt& f) {  // col_i += f col_j
    a.add_col(i, j, f);
    s.v.add_col(i, j, f);
    s.v_inv.add_row(j, i, -f);
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    s.u.swap_rows(i, j);
    s.u_inv.swap_cols(i, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    s.v.swap_cols(i, j);
    s.v_inv.swap_rows(i, j);
  };

  std::size_t t = 0;
  for (; t < std::min(R, C); ++t) {
    // smallest nonzero |entry| in the trailing block
    std::size_t pi = R, pj = C;
    BigInt best;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (a(i, j) != 0 && (pi == R || abs(a(i, j)) < best)) {
          best = abs(a(i, j));
          pi = i;
          pj = j;
        }
    if (pi == R) break;
    row_swap(t, pi);
    col_swap(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a(i, t) == 0) continue;
        BigInt q = a(i, t) / a(t, t);
        row_op(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a(t, j) == 0) continue;
        BigInt q = a(t, j) / a(t, t);
        col_op(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        std::size_t bi = t, bj = t;
        BigInt b = abs(a(t, t));
        for (std::size_t i = t + 1; i < R; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < b) b = abs(a(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < C; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < b) b = abs(a(t, j)), bi = t, bj = j;
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      std::size_t bad = R;
      for (std::size_t i = t + 1; i < R && bad == R; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == R) break;
      row_op(t, bad, 1);
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      s.u.negate_row(t);
      for (std::size_t r = 0; r < R; ++r) s.u_inv(r, t) = -s.u_inv(r, t);
    }
  }
  s.rank = t;
  return s;
}

// Some integer x with m x = b, if one exists.
inline std::optional<std::vector<BigInt>> solve_integer(const SmithForm& s,
                                                        const std::vector<BigInt>& b) {
  std::vector<BigInt> y = s.u.apply(b);
  std::vector<BigInt> z(s.v.rows());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < s.rank) {
      if (y[i] % s.d(i, i) != 0) return std::nullopt;
      z[i] = y[i] / s.d(i, i);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return s.v.apply(z);
}

inline BigInt floor_mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace emcoh
