#pragma once

#include <vector>

#include "repvar/scalar.hpp"

namespace repvar {

// Dense Gaussian elimination over either scalar backend.  Pivot choice: the
// exact backend takes any nonzero pivot, the float backend the largest
// modulus.  Small systems only (theta is 4x4, intertwiners 4x4).

template <class S>
class DenseMatrix {
 public:
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * cols, S(0)) {}

  S& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const S& at(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_, cols_;
  std::vector<S> data_;
};

namespace detail {
template <class S>
double pivot_weight(const S& v) {
  if constexpr (is_exact_v<S>) {
    return is_zero(v) ? 0.0 : 1.0;
  } else {
    return std::abs(v);
  }
}
}  // namespace detail

// Row-reduces [A | B] in place; returns the rank of A.  Rows are considered
// zero when every pivot weight is <= zero_tol (float backend only).
template <class S>
int row_reduce(DenseMatrix<S>& a, DenseMatrix<S>* rhs, double zero_tol) {
  int rank = 0;
  for (int col = 0; col < a.cols() && rank < a.rows(); ++col) {
    int pivot = -1;
    double best = zero_tol;
    for (int r = rank; r < a.rows(); ++r) {
      double w = detail::pivot_weight(a.at(r, col));
      if (w > best) {
        best = w;
        pivot = r;
        if constexpr (is_exact_v<S>) break;
      }
    }
    if (pivot < 0) continue;
    for (int j = 0; j < a.cols(); ++j) std::swap(a.at(pivot, j), a.at(rank, j));
    if (rhs)
      for (int j = 0; j < rhs->cols(); ++j)
        std::swap(rhs->at(pivot, j), rhs->at(rank, j));
    S inv = S(1) / a.at(rank, col);
    for (int j = 0; j < a.cols(); ++j) a.at(rank, j) = a.at(rank, j) * inv;
    if (rhs)
      for (int j = 0; j < rhs->cols(); ++j)
        rhs->at(rank, j) = rhs->at(rank, j) * inv;
    for (int r = 0; r < a.rows(); ++r) {
      if (r == rank) continue;
      S f = a.at(r, col);
      if (is_zero(f)) continue;
      for (int j = 0; j < a.cols(); ++j)
        a.at(r, j) = a.at(r, j) - f * a.at(rank, j);
      if (rhs)
        for (int j = 0; j < rhs->cols(); ++j)
          rhs->at(r, j) = rhs->at(r, j) - f * rhs->at(rank, j);
    }
    ++rank;
  }
  return rank;
}

// Solves the square system A x = b; throws NumericError when A is singular
// (exact) or numerically rank-deficient (float).
template <class S>
std::vector<S> solve_linear(DenseMatrix<S> a, std::vector<S> b,
                            double zero_tol = 1e-12) {
  if (a.rows() != a.cols() || static_cast<int>(b.size()) != a.rows())
    throw DomainError("solve_linear: shape mismatch");
  DenseMatrix<S> rhs(a.rows(), 1);
  for (int i = 0; i < a.rows(); ++i) rhs.at(i, 0) = b[i];
  int rank = row_reduce(a, &rhs, zero_tol);
  if (rank < a.rows()) throw NumericError("solve_linear: singular system");
  std::vector<S> x(a.rows());
  for (int i = 0; i < a.rows(); ++i) x[i] = rhs.at(i, 0);
  return x;
}

// Basis of the kernel of A (columns indexed 0..cols-1).
template <class S>
std::vector<std::vector<S>> kernel_basis(DenseMatrix<S> a,
                                         double zero_tol = 1e-12) {
  const int n = a.cols();
  DenseMatrix<S> work = a;
  row_reduce(work, static_cast<DenseMatrix<S>*>(nullptr), zero_tol);
  // Identify pivot columns.
  std::vector<int> pivot_col;
  std::vector<bool> is_pivot(n, false);
  int r = 0;
  for (int c = 0; c < n && r < work.rows(); ++c) {
    if (detail::pivot_weight(work.at(r, c)) > zero_tol) {
      pivot_col.push_back(c);
      is_pivot[c] = true;
      ++r;
    }
  }
  std::vector<std::vector<S>> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<S> v(n, S(0));
    v[free] = S(1);
    for (std::size_t pr = 0; pr < pivot_col.size(); ++pr)
      v[pivot_col[pr]] = -work.at(static_cast<int>(pr), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace repvar
