#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "emcoh/core.hpp"

namespace emcoh {

// Integer matrix stored as per-row (col, value) lists.
class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  void add(std::size_t r, std::size_t c, Int v) {
    if (v == 0) return;
    auto& row = rows_[r];
    for (auto& e : row)
      if (e.first == c) {
        e.second += v;
        return;
      }
    row.emplace_back(c, v);
  }
  const std::vector<std::pair<std::size_t, Int>>& row(std::size_t r) const { return rows_[r]; }

  // y = M x mod m
  std::vector<Int> apply_mod(const std::vector<Int>& x, Int m) const {
    std::vector<Int> y(rows());
    for (std::size_t r = 0; r < rows(); ++r) {
      __int128 acc = 0;
      for (auto [c, v] : rows_[r]) acc += static_cast<__int128>(v) * x[c];
      y[r] = mod(static_cast<Int>(acc % m), m);
    }
    return y;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<std::vector<std::pair<std::size_t, Int>>> rows_;
};

class DenseMod {
 public:
  DenseMod() = default;
  DenseMod(std::size_t rows, std::size_t cols, Int q) : rows_(rows), cols_(cols), q_(q) {
    if (static_cast<Int>(rows) * static_cast<Int>(cols) > dense_guard())
      throw SizeGuardError("dense matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                           " exceeds size guard");
    a_.assign(rows * cols, 0);
  }
  static DenseMod identity(std::size_t n, Int q) {
    DenseMod m(n, n, q);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % q;
    return m;
  }
  static DenseMod from_sparse(const SparseIntMatrix& s, Int q) {
    DenseMod m(s.rows(), s.cols(), q);
    for (std::size_t r = 0; r < s.rows(); ++r)
      for (auto [c, v] : s.row(r)) m(r, c) = mod(m(r, c) + v, q);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int modulus() const { return q_; }
  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<Int> apply(const std::vector<Int>& x) const {
    std::vector<Int> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      __int128 acc = 0;
      const Int* r = &a_[i * cols_];
      for (std::size_t j = 0; j < cols_; ++j)
        if (r[j]) acc += static_cast<__int128>(r[j]) * x[j];
      y[i] = mod(static_cast<Int>(acc % q_), q_);
    }
    return y;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i != j) std::swap_ranges(&a_[i * cols_], &a_[i * cols_] + cols_, &a_[j * cols_]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap(a_[r * cols_ + i], a_[r * cols_ + j]);
  }
  // row_i += f row_j
  void add_row(std::size_t i, std::size_t j, Int f) {
    f = mod(f, q_);
    if (!f) return;
    Int* ri = &a_[i * cols_];
    const Int* rj = &a_[j * cols_];
    for (std::size_t c = 0; c < cols_; ++c)
      if (rj[c]) ri[c] = (ri[c] + mulmod(f, rj[c], q_)) % q_;
  }
  void add_col(std::size_t i, std::size_t j, Int f) {
    f = mod(f, q_);
    if (!f) return;
    for (std::size_t r = 0; r < rows_; ++r) {
      Int v = a_[r * cols_ + j];
      if (v) a_[r * cols_ + i] = (a_[r * cols_ + i] + mulmod(f, v, q_)) % q_;
    }
  }
  void scale_row(std::size_t i, Int f) {
    for (std::size_t c = 0; c < cols_; ++c) a_[i * cols_ + c] = mulmod(a_[i * cols_ + c], f, q_);
  }
  void scale_col(std::size_t j, Int f) {
    for (std::size_t r = 0; r < rows_; ++r) a_[r * cols_ + j] = mulmod(a_[r * cols_ + j], f, q_);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  Int q_ = 1;
  std::vector<Int> a_;
};

// Smith form over the chain ring Z/p^k: u a v = diag(p^{v_0}, ..., p^{v_{r-1}}, 0, ...).
// Pivot choice is the first entry of minimal valuation in row-major order.
class LocalSnf {
 public:
  struct Options {
    bool track_u = false;
    bool track_v = true;
    bool track_v_inv = false;
  };

  LocalSnf(DenseMod a, PrimePower pk, Options opt) : pk_(pk), opt_(opt) { run(std::move(a)); }

  const PrimePower& prime_power() const { return pk_; }
  std::size_t rank() const { return val_.size(); }
  int valuation(std::size_t i) const { return val_[i]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const DenseMod& u() const { return u_; }
  const DenseMod& u_inv() const { return u_inv_; }
  const DenseMod& v() const { return v_; }
  const DenseMod& v_inv() const { return v_inv_; }

  // Some x with a x = b mod p^k; requires track_u and track_v.
  std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const {
    std::vector<Int> y = u_.apply(b);
    std::vector<Int> z(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i < rank()) {
        Int pv = ipow(pk_.p, val_[i]);
        if (y[i] % pv) return std::nullopt;
        z[i] = y[i] / pv;
      } else if (y[i]) {
        return std::nullopt;
      }
    }
    return v_.apply(z);
  }

  int val_of(Int x) const {
    if (x == 0) return pk_.k;
    int v = 0;
    while (x % pk_.p == 0) {
      x /= pk_.p;
      ++v;
    }
    return v;
  }

 private:
  void run(DenseMod a) {
    const Int q = pk_.q;
    rows_ = a.rows();
    cols_ = a.cols();
    if (opt_.track_u) {
      u_ = DenseMod::identity(rows_, q);
      u_inv_ = DenseMod::identity(rows_, q);
    }
    if (opt_.track_v) v_ = DenseMod::identity(cols_, q);
    if (opt_.track_v_inv) v_inv_ = DenseMod::identity(cols_, q);

    std::vector<std::size_t> nz;
    for (std::size_t t = 0; t < std::min(rows_, cols_); ++t) {
      std::size_t pi = rows_, pj = cols_;
      int best = pk_.k;
      for (std::size_t i = t; i < rows_ && best > 0; ++i)
        for (std::size_t j = t; j < cols_; ++j) {
          Int x = a(i, j);
          if (!x) continue;
          int v = val_of(x);
          if (v < best) {
            best = v;
            pi = i;
            pj = j;
            if (v == 0) break;
          }
        }
      if (pi == rows_) break;
      if (pi != t) {
        a.swap_rows(t, pi);
        if (opt_.track_u) {
          u_.swap_rows(t, pi);
          u_inv_.swap_cols(t, pi);
        }
      }
      if (pj != t) {
        a.swap_cols(t, pj);
        if (opt_.track_v) v_.swap_cols(t, pj);
        if (opt_.track_v_inv) v_inv_.swap_rows(t, pj);
      }
      const Int pv = ipow(pk_.p, best);
      const Int unit = a(t, t) / pv;
      const Int uinv = inv_mod(unit, q);
      // normalize pivot to p^v
      if (unit != 1) {
        a.scale_row(t, uinv);
        if (opt_.track_u) {
          u_.scale_row(t, uinv);
          u_inv_.scale_col(t, unit);
        }
      }
      nz.clear();
      for (std::size_t j = t + 1; j < cols_; ++j)
        if (a(t, j)) nz.push_back(j);
      for (std::size_t i = t + 1; i < rows_; ++i) {
        Int b = a(i, t);
        if (!b) continue;
        const Int f = mod(-(b / pv), q);
        a(i, t) = 0;
        for (std::size_t j : nz) a(i, j) = (a(i, j) + mulmod(f, a(t, j), q)) % q;
        if (opt_.track_u) {
          u_.add_row(i, t, f);
          u_inv_.add_col(t, i, -f);
        }
      }
      for (std::size_t j : nz) {
        const Int g = mod(-(a(t, j) / pv), q);
        a(t, j) = 0;
        if (opt_.track_v) v_.add_col(j, t, g);
        if (opt_.track_v_inv) v_inv_.add_row(t, j, -g);
      }
      val_.push_back(best);
    }
  }

  PrimePower pk_;
  Options opt_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<int> val_;
  DenseMod u_, u_inv_, v_, v_inv_;
};

}  // namespace emcoh
