#include "tenkit/transform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tenkit/classify.hpp"

namespace tenkit {

Vector nekrasov_scaling(const Tensor& t) {
  const int n = t.dim();
  for (int i = 0; i < n; ++i) {
    if (t.diagonal(i) <= 0.0) {
      throw std::invalid_argument("scaling needs a positive diagonal; row " +
                                  std::to_string(i + 1) + " has " + std::to_string(t.diagonal(i)));
    }
  }
  const NekrasovProfile p = nekrasov_profile(t);
  const double inv = 1.0 / static_cast<double>(t.order() - 1);
  Vector w(n);
  for (int i = 0; i < n; ++i) w[i] = std::pow(p.lambda[i] / p.diag[i], inv);
  return w;
}

std::optional<Vector> strict_scaling(const Tensor& t, double tol, int max_iter) {
  const Tensor comp = comparison_tensor(t);
  const MTensorVerdict m = is_nonsingular_m(comp, tol, max_iter);
  if (m.verdict != Tristate::yes) return std::nullopt;
  // The approximate Perron vector u of B = s*I - comp satisfies
  // comp u^{m-1} = s u^{[m-1]} - B u^{m-1}, which is entrywise positive once
  // the iteration tightens enough; each positive component is literally the
  // strict dominance margin of row i of T diag(u).
  const Vector u = m.rho.eigenvector;
  if (u.minCoeff() <= 0.0) return std::nullopt;  // support got pruned; no full certificate
  const Vector margin = apply(comp, u);
  if (margin.minCoeff() <= 0.0) return std::nullopt;
  return u;
}

Decomposition decompose_plus(const Tensor& t) {
  const int n = t.dim();
  const int m = t.order();
  const std::size_t row_len = t.size() / static_cast<std::size_t>(n);
  const auto vals = t.values();

  Vector r_plus(n);
  for (int i = 0; i < n; ++i) {
    std::size_t diag_in_row = 0;
    for (int k = 0; k < m - 1; ++k)
      diag_in_row = diag_in_row * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
    double r = 0.0;
    const std::size_t base = row_len * static_cast<std::size_t>(i);
    for (std::size_t o = 0; o < row_len; ++o) {
      if (o != diag_in_row) r = std::max(r, vals[base + o]);
    }
    r_plus[i] = r;
  }

  Decomposition d{Tensor(m, n, t.size()), Tensor(m, n, t.size()), r_plus};
  auto b = d.b_plus.mutable_values();
  auto c = d.c.mutable_values();
  for (int i = 0; i < n; ++i) {
    const std::size_t base = row_len * static_cast<std::size_t>(i);
    for (std::size_t o = 0; o < row_len; ++o) {
      b[base + o] = vals[base + o] - r_plus[i];
      c[base + o] = r_plus[i];
    }
  }
  return d;
}

bool verify_decomposition(const Decomposition& d, const Tensor& t) {
  if (d.b_plus.order() != t.order() || d.b_plus.dim() != t.dim() ||
      d.c.order() != t.order() || d.c.dim() != t.dim()) {
    throw std::invalid_argument("decomposition shape does not match the tensor");
  }
  if (d.r_plus.size() != t.dim()) {
    throw std::invalid_argument("r_plus length does not match the tensor dimension");
  }
  const int n = t.dim();
  const std::size_t row_len = t.size() / static_cast<std::size_t>(n);
  const auto b = d.b_plus.values();
  const auto c = d.c.values();
  const auto orig = t.values();
  for (int i = 0; i < n; ++i) {
    if (d.r_plus[i] < 0.0) return false;
    const std::size_t base = row_len * static_cast<std::size_t>(i);
    for (std::size_t o = 0; o < row_len; ++o) {
      if (c[base + o] != d.r_plus[i]) return false;      // row-constant, nonnegative
      if (b[base + o] + c[base + o] != orig[base + o]) return false;  // exact reconstruction
    }
  }
  return is_z(d.b_plus);
}

}  // namespace tenkit
