#pragma once

// Dense linear algebra on the small matrices this library needs (dim <= 16).
// Gaussian elimination is templated so the rational backend stays exact;
// singular values for the float-mode invertibility test come from Eigen.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <optional>
#include <utility>
#include <vector>

#include "qsa/scalar.hpp"

namespace qsa {

template <class T>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, T(0)) {}

  T& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const T& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

namespace detail {

// Row-reduces m in place; returns pivot column per pivot row.  Pivoting is
// restricted to the first col_limit columns so augmented systems never
// pivot on their right-hand side.
template <class T>
std::vector<int> row_reduce(Matrix<T>& m, int col_limit = -1) {
  std::vector<int> pivots;
  if (col_limit < 0) col_limit = m.cols;
  int row = 0;
  for (int col = 0; col < col_limit && row < m.rows; ++col) {
    int best = -1;
    double best_mag = 0.0;
    for (int r = row; r < m.rows; ++r) {
      double mag = std::abs(to_double(m.at(r, col)));
      if (mag > best_mag) {
        best_mag = mag;
        best = r;
      }
    }
    if constexpr (!is_exact_v<T>) {
      if (best_mag < 1e-12) continue;
    }
    if (best < 0) continue;
    if (best != row)
      for (int c = 0; c < m.cols; ++c) std::swap(m.at(best, c), m.at(row, c));
    T inv = T(1) / m.at(row, col);
    for (int c = col; c < m.cols; ++c) m.at(row, c) *= inv;
    for (int r = 0; r < m.rows; ++r) {
      if (r == row) continue;
      T f = m.at(r, col);
      if (f == T(0)) continue;
      for (int c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

template <class T>
int rank_of(Matrix<T> m) {
  return static_cast<int>(detail::row_reduce(m).size());
}

// Solves the square system A x = b; empty when A is singular.
template <class T>
std::optional<std::vector<T>> solve_square(const Matrix<T>& A, const std::vector<T>& b) {
  Matrix<T> m(A.rows, A.cols + 1);
  for (int r = 0; r < A.rows; ++r) {
    for (int c = 0; c < A.cols; ++c) m.at(r, c) = A.at(r, c);
    m.at(r, A.cols) = b[r];
  }
  auto pivots = detail::row_reduce(m, A.cols);
  if (static_cast<int>(pivots.size()) != A.cols) return std::nullopt;
  std::vector<T> x(A.cols, T(0));
  for (int r = 0; r < A.cols; ++r) x[pivots[r]] = m.at(r, A.cols);
  return x;
}

// Basis of the right kernel {x : A x = 0}.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
  int cols = m.cols;
  auto pivots = detail::row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(cols, T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
T dot(const std::vector<T>& x, const std::vector<T>& y) {
  T acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

// Gram-Schmidt. The rational backend orthogonalizes without normalizing
// (unit lengths would need square roots); the float backend orthonormalizes.
template <class T>
std::vector<std::vector<T>> orthogonalize(const std::vector<std::vector<T>>& vecs) {
  std::vector<std::vector<T>> out;
  for (auto v : vecs) {
    for (const auto& u : out) {
      T nn = dot(u, u);
      if (nn == T(0)) continue;
      T f = dot(v, u) / nn;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * u[i];
    }
    bool zero = true;
    for (const auto& c : v)
      if (!(c == T(0))) zero = false;
    if constexpr (!is_exact_v<T>) {
      double nn = to_double(dot(v, v));
      zero = nn < 1e-20;
      if (!zero) {
        double inv = 1.0 / std::sqrt(nn);
        for (auto& c : v) c *= inv;
      }
    }
    if (!zero) out.push_back(std::move(v));
  }
  return out;
}

// (smallest, largest) singular value.
inline std::pair<double, double> singular_value_extremes(const Matrix<double>& m) {
  Eigen::MatrixXd em(m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) em(r, c) = m.at(r, c);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(em);
  const auto& sv = svd.singularValues();
  return {sv(sv.size() - 1), sv(0)};
}

}  // namespace qsa
