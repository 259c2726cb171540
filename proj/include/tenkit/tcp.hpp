#pragma once

#include <optional>
#include <string>

#include "tenkit/tensor.hpp"

namespace tenkit {

// Find x >= 0 with w = T x^{m-1} + q >= 0 and x' w = 0. The min-map residual
// ||min(x, w)||_inf is the single source of truth: it is zero exactly at
// solutions, and residual <= tol already forces x >= -tol and w >= -tol.
struct TcpInstance {
  Tensor tensor;
  Vector q;
};

enum class TcpStatus { solved, max_iter, diverged };

struct TcpSolution {
  Vector x;
  Vector w;
  double residual = 0.0;
  double complementarity_gap = 0.0;
  int iterations = 0;
  TcpStatus status = TcpStatus::max_iter;
};

std::string to_string(TcpStatus s);

double residual(const TcpInstance& inst, const Vector& x);

// Projected step x <- max(0, x - alpha*(T x^{m-1} + q)); alpha halved within a
// sweep until the Fischer-Burmeister merit drops, with one exact-gradient
// rescue step on the same merit before a run gives up. An unsolved run is
// retried from a short deterministic ladder of starts (the given x0 or
// all-ones/n, then a per-row diagonal estimate, then all-ones); each run gets
// the full max_iter budget and iterations reports the total across runs.
TcpSolution solve_fixed_point(const TcpInstance& inst, double step = 1.0, double tol = 1e-8,
                              int max_iter = 10000, std::optional<Vector> x0 = std::nullopt);

// Semismooth Newton on F(x) = min(x, w(x)): rows of the generalized Jacobian
// are identity where x_i <= w_i and rows of d(T x^{m-1})/dx elsewhere. Trial
// points are projected onto x >= 0 and accepted by Armijo decrease of the
// Fischer-Burmeister merit; a singular or rejected system falls back to one
// exact-gradient descent step on that merit. Unsolved runs restart, as in
// solve_fixed_point, plus one final start produced by a bounded
// projected-descent pass; iterations reports the total across runs.
TcpSolution solve_newton(const TcpInstance& inst, double tol = 1e-8, int max_iter = 200,
                         std::optional<Vector> x0 = std::nullopt);

// Desk-scale oracle. m=2: enumerate complementary supports and solve the
// linear system per support (needs 2^n <= 4096). m>2: refine a grid over
// [0, X_max]^n (needs n <= 3), shrinking until the residual target is met or
// the resolution bottoms out.
std::optional<Vector> brute_force_supports(const TcpInstance& inst, int grid = 20);

}  // namespace tenkit
