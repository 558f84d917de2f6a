#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "polarize/errors.hpp"
#include "polarize/scalar.hpp"

namespace polarize {

/// Dense matrix over a scalar backend. Rank and solve use exact Gaussian
/// elimination on rationals and partial pivoting with threshold
/// eps * max|entry| on floats.
template <typename S>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, scalar_traits<S>::zero()) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = scalar_traits<S>::one();
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<S>>& rows) {
    if (rows.empty()) throw StructuralError("matrix from empty row list");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw StructuralError("ragged row list");
      for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const S& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw StructuralError("matrix shape mismatch in product");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const S& aik = at(i, k);
        if (scalar_traits<S>::strictly_zero(aik)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
      }
    return r;
  }

  std::vector<S> operator*(const std::vector<S>& v) const {
    if (cols_ != v.size()) throw StructuralError("matrix/vector shape mismatch");
    std::vector<S> r(rows_, scalar_traits<S>::zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw StructuralError("matrix shape mismatch");
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }

  Matrix& scale(const S& c) {
    for (auto& v : a_) v = v * c;
    return *this;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) {
      const double x = std::fabs(to_double(v));
      if (x > m) m = x;
    }
    return m;
  }

  bool approx_equal(const Matrix& o, double eps) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!scalar_traits<S>::eq(a_[i], o.a_[i], eps)) return false;
    return true;
  }

  std::size_t rank(double eps) const {
    Matrix w = *this;
    return eliminate(w, eps);
  }

  /// Solves A x = b for square A. Returns nullopt when A is singular under
  /// the backend's pivot rule.
  std::optional<std::vector<S>> solve(const std::vector<S>& b, double eps) const {
    if (rows_ != cols_ || b.size() != rows_) throw StructuralError("solve needs square system");
    const std::size_t n = rows_;
    Matrix w = *this;
    std::vector<S> rhs = b;
    const double threshold = pivot_threshold(w, eps);
    for (std::size_t col = 0; col < n; ++col) {
      const auto piv = pick_pivot(w, col, col, threshold);
      if (!piv) return std::nullopt;
      swap_rows(w, rhs, col, *piv);
      const S inv_p = scalar_traits<S>::one() / w.at(col, col);
      for (std::size_t j = col; j < n; ++j) w.at(col, j) = w.at(col, j) * inv_p;
      rhs[col] = rhs[col] * inv_p;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col) continue;
        const S f = w.at(r, col);
        if (scalar_traits<S>::strictly_zero(f)) continue;
        for (std::size_t j = col; j < n; ++j) w.at(r, j) -= f * w.at(col, j);
        rhs[r] -= f * rhs[col];
      }
    }
    return rhs;
  }

  /// Positive definiteness of a symmetric matrix: exact leading principal
  /// minors on rationals, Cholesky with scale-aware tolerance on floats.
  bool is_positive_definite(double eps) const {
    if (rows_ != cols_) return false;
    const std::size_t n = rows_;
    if constexpr (scalar_traits<S>::exact) {
      for (std::size_t k = 1; k <= n; ++k) {
        if (leading_minor(k) <= scalar_traits<S>::zero()) return false;
      }
      return true;
    } else {
      Matrix l(n, n);
      const double scale = max_abs() > 0 ? max_abs() : 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          double sum = to_double(at(i, j));
          for (std::size_t k = 0; k < j; ++k) sum -= to_double(l.at(i, k)) * to_double(l.at(j, k));
          if (i == j) {
            if (sum <= eps * scale) return false;
            l.at(i, i) = std::sqrt(sum);
          } else {
            l.at(i, j) = sum / to_double(l.at(j, j));
          }
        }
      }
      return true;
    }
  }

 private:
  static double pivot_threshold(const Matrix& w, double eps) {
    if constexpr (scalar_traits<S>::exact) return 0.0;
    const double scale = w.max_abs();
    return eps * (scale > 0 ? scale : 1.0);
  }

  // Row with usable pivot in `col` at or below `from`; exact backend takes
  // the first nonzero, float backend the largest entry above threshold.
  static std::optional<std::size_t> pick_pivot(const Matrix& w, std::size_t from, std::size_t col,
                                               double threshold) {
    if constexpr (scalar_traits<S>::exact) {
      for (std::size_t r = from; r < w.rows_; ++r)
        if (!w.at(r, col).is_zero()) return r;
      return std::nullopt;
    } else {
      std::size_t best = from;
      double best_abs = -1.0;
      for (std::size_t r = from; r < w.rows_; ++r) {
        const double x = std::fabs(to_double(w.at(r, col)));
        if (x > best_abs) {
          best_abs = x;
          best = r;
        }
      }
      if (best_abs <= threshold) return std::nullopt;
      return best;
    }
  }

  static void swap_rows(Matrix& w, std::vector<S>& rhs, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < w.cols_; ++j) std::swap(w.at(a, j), w.at(b, j));
    std::swap(rhs[a], rhs[b]);
  }

  static std::size_t eliminate(Matrix& w, double eps) {
    const double threshold = pivot_threshold(w, eps);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < w.cols_ && rank < w.rows_; ++col) {
      std::optional<std::size_t> piv = pick_pivot(w, rank, col, threshold);
      if (!piv) continue;
      std::vector<S> dummy(w.rows_, scalar_traits<S>::zero());
      swap_rows(w, dummy, rank, *piv);
      const S inv_p = scalar_traits<S>::one() / w.at(rank, col);
      for (std::size_t r = rank + 1; r < w.rows_; ++r) {
        const S f = w.at(r, col) * inv_p;
        if (scalar_traits<S>::strictly_zero(f)) continue;
        for (std::size_t j = col; j < w.cols_; ++j) w.at(r, j) -= f * w.at(rank, j);
      }
      ++rank;
    }
    return rank;
  }

  S leading_minor(std::size_t k) const {
    // Exact determinant of the leading k x k block by Gaussian elimination.
    Matrix w(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) w.at(i, j) = at(i, j);
    S det = scalar_traits<S>::one();
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t piv = col;
      while (piv < k && w.at(piv, col).is_zero()) ++piv;
      if (piv == k) return scalar_traits<S>::zero();
      if (piv != col) {
        for (std::size_t j = 0; j < k; ++j) std::swap(w.at(piv, j), w.at(col, j));
        det = -det;
      }
      det = det * w.at(col, col);
      const S inv_p = scalar_traits<S>::one() / w.at(col, col);
      for (std::size_t r = col + 1; r < k; ++r) {
        const S f = w.at(r, col) * inv_p;
        if (f.is_zero()) continue;
        for (std::size_t j = col; j < k; ++j) w.at(r, j) -= f * w.at(col, j);
      }
    }
    return det;
  }

  std::size_t rows_, cols_;
  std::vector<S> a_;
};

}  // namespace polarize
