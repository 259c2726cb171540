#pragma once

// Shared fixtures plus independent oracle implementations the tests compare
// against: direct summation for apply/quad_form, central differences for the
// Jacobian, and the plain matrix (order-2) definitions of every predicate.

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "tenkit/rng.hpp"
#include "tenkit/tensor.hpp"

namespace helpers {

using tenkit::Matrix;
using tenkit::MultiIndex;
using tenkit::Tensor;
using tenkit::Vector;

// The order-4 dimension-4 fixture used throughout: rows 1 and 4 carry weight
// -1/-3 blocks, row 2 fails plain dominance but not the recursive bound.
inline Tensor example_tensor() {
  using E = std::pair<MultiIndex, double>;
  const std::vector<E> entries = {
      {{0, 0, 0, 0}, 8.0},  {{1, 1, 1, 1}, 3.8},  {{2, 2, 2, 2}, 3.0},  {{3, 3, 3, 3}, 10.0},
      {{0, 0, 0, 1}, -1.0}, {{1, 0, 0, 0}, -1.0}, {{0, 1, 0, 0}, -1.0}, {{0, 0, 1, 0}, -1.0},
      {{2, 1, 1, 1}, -1.0}, {{1, 2, 1, 1}, -1.0}, {{1, 1, 2, 1}, -1.0}, {{1, 1, 1, 2}, -1.0},
      {{3, 3, 3, 0}, -3.0}, {{3, 3, 0, 3}, -3.0}, {{3, 0, 3, 3}, -3.0}, {{0, 3, 3, 3}, -3.0},
  };
  return Tensor::from_entries(4, 4, entries);
}

inline Tensor all_ones(int order, int dim) {
  Tensor t(order, dim);
  for (auto& v : t.mutable_values()) v = 1.0;
  return t;
}

inline Tensor random_tensor(tenkit::Rng& rng, int order, int dim, double lo, double hi,
                            double density = 1.0) {
  Tensor t(order, dim);
  for (auto& v : t.mutable_values()) {
    if (rng.uniform01() < density) v = rng.uniform(lo, hi);
  }
  return t;
}

inline bool advance(std::vector<int>& idx, int dim) {
  for (int k = static_cast<int>(idx.size()) - 1; k >= 0; --k) {
    if (++idx[static_cast<std::size_t>(k)] < dim) return true;
    idx[static_cast<std::size_t>(k)] = 0;
  }
  return false;
}

// Oracle: the displayed sum, one term per full multi-index, plain doubles.
inline Vector direct_apply(const Tensor& t, const Vector& x) {
  Vector out = Vector::Zero(t.dim());
  std::vector<int> idx(static_cast<std::size_t>(t.order()), 0);
  do {
    double term = t.at(idx);
    for (int k = 1; k < t.order(); ++k) term *= x[idx[static_cast<std::size_t>(k)]];
    out[idx[0]] += term;
  } while (advance(idx, t.dim()));
  return out;
}

inline double direct_quad(const Tensor& t, const Vector& x) {
  const Vector ax = direct_apply(t, x);
  double acc = 0.0;
  for (int i = 0; i < x.size(); ++i) acc += x[i] * ax[i];
  return acc;
}

inline Matrix fd_jacobian(const Tensor& t, const Vector& x, double h = 1e-5) {
  const int n = t.dim();
  Matrix j(n, n);
  for (int c = 0; c < n; ++c) {
    Vector xp = x;
    Vector xm = x;
    xp[c] += h;
    xm[c] -= h;
    j.col(c) = (tenkit::apply(t, xp) - tenkit::apply(t, xm)) / (2.0 * h);
  }
  return j;
}

inline Matrix to_matrix(const Tensor& t) {
  Matrix a(t.dim(), t.dim());
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j) a(i, j) = t.at({i, j});
  return a;
}

inline Tensor matrix_tensor(const Matrix& a) {
  Tensor t(2, static_cast<int>(a.rows()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t.set({static_cast<int>(i), static_cast<int>(j)}, a(i, j));
  return t;
}

inline Vector matrix_row_excess(const Matrix& a) {
  Vector r(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (int j = 0; j < a.cols(); ++j)
      if (j != i) acc += std::abs(a(i, j));
    r[i] = acc;
  }
  return r;
}

// The matrix recursion: lambda_i = sum_{j<i} |a_ij| lambda_j / |a_jj|
//                                + sum_{j>i} |a_ij|.
inline Vector matrix_lambda(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  Vector lam(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < i; ++j) acc += std::abs(a(i, j)) * lam[j] / std::abs(a(j, j));
    for (int j = i + 1; j < n; ++j) acc += std::abs(a(i, j));
    lam[i] = acc;
  }
  return lam;
}

inline bool matrix_is_z(const Matrix& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) > 0.0) return false;
  return true;
}

inline bool matrix_dd(const Matrix& a, bool strict) {
  const Vector r = matrix_row_excess(a);
  for (int i = 0; i < a.rows(); ++i) {
    const double d = std::abs(a(i, i));
    if (strict ? !(d > r[i]) : !(d >= r[i])) return false;
  }
  return true;
}

inline double matrix_rho(const Matrix& a) {
  return Eigen::EigenSolver<Matrix>(a, false).eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace helpers
