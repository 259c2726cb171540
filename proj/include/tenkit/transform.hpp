#pragma once

#include <optional>

#include "tenkit/tensor.hpp"

namespace tenkit {

struct Decomposition {
  Tensor b_plus;
  Tensor c;
  Vector r_plus;
};

// w_i = (Lambda_i / t_{i..i})^{1/(m-1)}. Requires a strictly positive diagonal.
// For an even-order Nekrasov Z tensor, scale_columns(t, w) is a diagonally
// dominant Z tensor with diagonal Lambda(t); outside those hypotheses the
// vector is still well defined but carries no dominance guarantee.
Vector nekrasov_scaling(const Tensor& t);

// Strict variant: a positive w with scale_columns(t, w) strictly diagonally
// dominant, built from an approximate Perron vector u of B = s*I - M(t) where
// M is the comparison tensor and s = max diagonal. Whenever the certified
// upper bracket on rho(B) stays below s, M(t) u^{m-1} >= (s - upper) u^{[m-1]}
// entrywise, which is exactly row-wise strict dominance of the scaled tensor.
// Returns nullopt when no such certificate is reached (not nonsingular-H, or
// the power iteration pruned indices / hit the iteration cap).
std::optional<Vector> strict_scaling(const Tensor& t, double tol = 1e-10,
                                     int max_iter = 100000);

// r_plus_i = max(0, largest off-diagonal entry of row i); b_plus = t - r_plus_i
// on every slot of row i (diagonal included); c is row-constant r_plus_i.
Decomposition decompose_plus(const Tensor& t);

bool verify_decomposition(const Decomposition& d, const Tensor& t);

}  // namespace tenkit
