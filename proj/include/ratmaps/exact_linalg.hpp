#pragma once

// Dense linear algebra over exact fields (Q, Q(i), F_p). Element types need
// +, -, *, /, == and a free is_zero().

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ratmaps/field.hpp"
#include "ratmaps/gaussian_rational.hpp"

namespace ratmaps {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  /// Appends a row; the first row fixes the column count.
  void push_row(const std::vector<T>& row) {
    if (rows_ == 0 && data_.empty()) cols_ = row.size();
    if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Row echelon form in place; returns pivot columns. Stops as soon as every
/// row holds a pivot.
template <class T>
std::vector<std::size_t> row_echelon(Matrix<T>& a, bool reduced = false) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && is_zero(a(pivot, col))) ++pivot;
    if (pivot == a.rows()) continue;
    a.swap_rows(row, pivot);
    const T inv = T(1) / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = reduced ? 0 : row + 1; r < a.rows(); ++r) {
      if (r == row || is_zero(a(r, col))) continue;
      const T factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) {
        if (!is_zero(a(row, c))) a(r, c) -= factor * a(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> a) {
  return row_echelon(a).size();
}

/// Rank of the affine span of the given points (dimension of the affine hull).
template <class T>
std::size_t affine_rank(const std::vector<std::vector<T>>& points) {
  if (points.size() <= 1) return 0;
  Matrix<T> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<T> row(points[i].size(), T(0));
    for (std::size_t c = 0; c < row.size(); ++c) row[c] = points[i][c] - points[0][c];
    diffs.push_row(row);
  }
  return rank(std::move(diffs));
}

template <class T>
T determinant(Matrix<T> a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  T det(1);
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && is_zero(a(pivot, col))) ++pivot;
    if (pivot == n) return T(0);
    if (pivot != col) {
      a.swap_rows(pivot, col);
      det = -det;
    }
    det *= a(col, col);
    const T inv = T(1) / a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a(r, col))) continue;
      const T factor = a(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

template <class T>
struct AffineSolution {
  bool consistent = false;
  std::size_t rank = 0;     // rank of the coefficient matrix
  std::size_t nullity = 0;  // cols - rank, meaningful only when consistent
  std::vector<T> particular;
};

/// Solves a x = b exactly. An inconsistent system yields consistent == false.
template <class T>
AffineSolution<T> solve_affine(const Matrix<T>& a, const std::vector<T>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto pivots = row_echelon(aug, true);
  AffineSolution<T> out;
  out.rank = pivots.size();
  if (!pivots.empty() && pivots.back() == a.cols()) {
    out.rank -= 1;
    return out;
  }
  out.consistent = true;
  out.nullity = a.cols() - out.rank;
  out.particular.assign(a.cols(), T(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) out.particular[pivots[i]] = aug(i, a.cols());
  return out;
}

/// Basis of the right kernel {x : a x = 0}.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> a) {
  auto pivots = row_echelon(a, true);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(a.cols(), T(0));
    v[free] = T(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  mpq_class value;
  std::vector<mpq_class> x;
};

/// maximize c.x subject to a x = b, x >= 0, in exact rational arithmetic
/// (two-phase simplex, Bland's rule).
LpResult lp_maximize(const Matrix<mpq_class>& a, const std::vector<mpq_class>& b,
                     const std::vector<mpq_class>& c);

}  // namespace ratmaps
