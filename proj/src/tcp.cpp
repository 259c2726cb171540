#include "tenkit/tcp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tenkit {

std::string to_string(TcpStatus s) {
  switch (s) {
    case TcpStatus::solved: return "solved";
    case TcpStatus::max_iter: return "max_iter";
    case TcpStatus::diverged: return "diverged";
  }
  return "unknown";
}

namespace {

void check_instance(const TcpInstance& inst) {
  if (inst.q.size() != inst.tensor.dim()) {
    throw std::invalid_argument("q has dimension " + std::to_string(inst.q.size()) +
                                ", tensor expects " + std::to_string(inst.tensor.dim()));
  }
}

double min_map_residual(const Vector& x, const Vector& w) {
  return x.cwiseMin(w).cwiseAbs().maxCoeff();
}

TcpSolution finish(const TcpInstance& inst, Vector x, int iterations, TcpStatus status,
                   double tol) {
  TcpSolution sol;
  sol.x = std::move(x);
  sol.w = apply(inst.tensor, sol.x) + inst.q;
  sol.residual = min_map_residual(sol.x, sol.w);
  sol.complementarity_gap = sol.x.dot(sol.w);
  sol.iterations = iterations;
  sol.status = std::isfinite(sol.residual) && sol.residual <= tol ? TcpStatus::solved : status;
  return sol;
}

// x = 0 solves any instance with q >= 0; probing it first keeps those cases
// exact instead of asymptotic.
std::optional<TcpSolution> trivial_solution(const TcpInstance& inst, double tol) {
  TcpSolution zero = finish(inst, Vector::Zero(inst.tensor.dim()), 0, TcpStatus::max_iter, tol);
  if (zero.status == TcpStatus::solved) return zero;
  return std::nullopt;
}

// Fischer-Burmeister function phi(a, b) = sqrt(a^2 + b^2) - a - b: zero exactly
// when a >= 0, b >= 0, ab = 0. Half its squared norm is the line-search merit.
// Unlike the min-map it is continuously differentiable, and descent on it does
// not wedge into the kinks of min(x, w), which is where plain residual
// backtracking stalls on kinked instances.
Vector fb_values(const Vector& x, const Vector& w) {
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out[i] = std::sqrt(x[i] * x[i] + w[i] * w[i]) - x[i] - w[i];
  return out;
}

double fb_merit(const Vector& x, const Vector& w) { return 0.5 * fb_values(x, w).squaredNorm(); }

// Exact gradient of fb_merit: each term is smooth away from (x_i, w_i) = (0, 0)
// and carries the factor phi_i, which vanishes at that origin, so any bounded
// choice there (we use -1) gives the true gradient.
Vector fb_gradient(const Vector& x, const Vector& w, const Matrix& jac, const Vector& phi) {
  const Eigen::Index n = x.size();
  Vector da(n), db(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = std::sqrt(x[i] * x[i] + w[i] * w[i]);
    if (r > 0.0) {
      da[i] = x[i] / r - 1.0;
      db[i] = w[i] / r - 1.0;
    } else {
      da[i] = -1.0;
      db[i] = -1.0;
    }
  }
  return da.cwiseProduct(phi) + jac.transpose() * db.cwiseProduct(phi);
}

struct CoreResult {
  Vector x;
  double res = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool solved = false;
  bool nonfinite = false;
};

// One semismooth Newton run from a fixed start. The Newton system comes from
// the generalized Jacobian of min(x, w); trial points are projected onto the
// nonnegative orthant and accepted by Armijo decrease of the
// Fischer-Burmeister merit. When the system is singular or its step is
// rejected, one exact-gradient descent step on the same merit substitutes;
// only when that also finds no decrease repeatedly does the run give up.
CoreResult newton_core(const TcpInstance& inst, double tol, int max_iter, Vector x) {
  const int n = inst.tensor.dim();
  auto eval = [&inst](const Vector& v, Vector& w, Vector& f) {
    w = apply(inst.tensor, v) + inst.q;
    f = v.cwiseMin(w);
    return f.cwiseAbs().maxCoeff();
  };
  int stalls_in_a_row = 0;
  for (int it = 0; it < max_iter; ++it) {
    Vector w, f;
    const double res = eval(x, w, f);
    if (!std::isfinite(res)) return {std::move(x), res, it, false, true};
    if (res <= tol) return {std::move(x), res, it, true, false};
    const Vector phi = fb_values(x, w);
    const double psi = 0.5 * phi.squaredNorm();

    // Generalized Jacobian of min(x, w): identity rows on the active set
    // (x_i <= w_i), rows of d(Tx^{m-1})/dx elsewhere.
    const Matrix jac = jacobian(inst.tensor, x);
    Matrix gj = Matrix::Identity(n, n);
    for (int i = 0; i < n; ++i) {
      if (x[i] > w[i]) gj.row(i) = jac.row(i);
    }
    const Vector d = Eigen::PartialPivLU<Matrix>(gj).solve(-f);
    const bool usable =
        d.allFinite() && (gj * d + f).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, res);

    bool stepped = false;
    if (usable) {
      double t = 1.0;
      for (int ls = 0; ls < 40; ++ls) {
        const Vector xn = (x + t * d).cwiseMax(0.0);
        Vector wn, fn;
        const double resn = eval(xn, wn, fn);
        if (std::isfinite(resn)) {
          if (resn <= tol) return {xn, resn, it + 1, true, false};
          if (fb_merit(xn, wn) <= (1.0 - 1e-4 * t) * psi) {
            x = xn;
            stepped = true;
            break;
          }
        }
        t *= 0.5;
      }
    }
    if (stepped) {
      stalls_in_a_row = 0;
      continue;
    }

    // Singular or rejected system: descend along the exact merit gradient.
    const Vector g = fb_gradient(x, w, jac, phi);
    const double gg = g.squaredNorm();
    bool accepted = false;
    if (gg > 0.0) {
      double beta = 1.0;
      for (int ls = 0; ls < 64; ++ls) {
        const Vector xn = (x - beta * g).cwiseMax(0.0);
        Vector wn, fn;
        const double resn = eval(xn, wn, fn);
        if (std::isfinite(resn)) {
          if (resn <= tol) return {xn, resn, it + 1, true, false};
          if (fb_merit(xn, wn) <= psi - 1e-4 * beta * gg) {
            x = xn;
            accepted = true;
            break;
          }
        }
        beta *= 0.5;
      }
    }
    if (accepted) {
      stalls_in_a_row = 0;
    } else {
      ++stalls_in_a_row;
      if (stalls_in_a_row > n) return {std::move(x), res, it + 1, false, false};
    }
  }
  Vector w, f;
  const double res = eval(x, w, f);
  return {std::move(x), res, max_iter, std::isfinite(res) && res <= tol, !std::isfinite(res)};
}

// One projected-descent run from a fixed start: x <- max(0, x - alpha w),
// alpha halved until the Fischer-Burmeister merit drops and carried over,
// doubled, so a stiff instance does not rediscover its step length every
// sweep. A sweep with no workable alpha gets one exact-gradient rescue step
// before the run gives up.
CoreResult fixed_core(const TcpInstance& inst, double step, double tol, int max_iter, Vector x) {
  auto eval = [&inst](const Vector& v, Vector& w, Vector& f) {
    w = apply(inst.tensor, v) + inst.q;
    f = v.cwiseMin(w);
    return f.cwiseAbs().maxCoeff();
  };
  double alpha = step;
  for (int it = 0; it < max_iter; ++it) {
    Vector w, f;
    const double res = eval(x, w, f);
    if (!std::isfinite(res)) return {std::move(x), res, it, false, true};
    if (res <= tol) return {std::move(x), res, it, true, false};
    const double psi = fb_merit(x, w);

    alpha = std::min(alpha * 2.0, step);
    bool accepted = false;
    for (int bt = 0; bt < 64; ++bt) {
      const Vector xn = (x - alpha * w).cwiseMax(0.0);
      Vector wn, fn;
      const double resn = eval(xn, wn, fn);
      if (std::isfinite(resn)) {
        if (resn <= tol) return {xn, resn, it + 1, true, false};
        if (fb_merit(xn, wn) < psi) {
          x = xn;
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (accepted) continue;

    const Vector phi = fb_values(x, w);
    const Vector g = fb_gradient(x, w, jacobian(inst.tensor, x), phi);
    const double gg = g.squaredNorm();
    bool rescued = false;
    if (gg > 0.0) {
      double beta = 1.0;
      for (int bt = 0; bt < 64; ++bt) {
        const Vector xn = (x - beta * g).cwiseMax(0.0);
        Vector wn, fn;
        const double resn = eval(xn, wn, fn);
        if (std::isfinite(resn)) {
          if (resn <= tol) return {xn, resn, it + 1, true, false};
          if (fb_merit(xn, wn) <= psi - 1e-4 * beta * gg) {
            x = xn;
            rescued = true;
            break;
          }
        }
        beta *= 0.5;
      }
    }
    if (!rescued) return {std::move(x), res, it, false, false};
    alpha = step;
  }
  Vector w, f;
  const double res = eval(x, w, f);
  return {std::move(x), res, max_iter, std::isfinite(res) && res <= tol, !std::isfinite(res)};
}

// Positive-diagonal rows suggest x_i = (max(0, -q_i) / t_{i..i})^{1/(m-1)}: it
// solves outright every instance whose solution-support rows do not couple
// inside the support, and lands near the solution for many that do.
Vector diagonal_start(const TcpInstance& inst) {
  const int n = inst.tensor.dim();
  const double inv = 1.0 / static_cast<double>(inst.tensor.order() - 1);
  Vector x = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    const double d = inst.tensor.diagonal(i);
    if (d > 0.0 && inst.q[i] < 0.0) x[i] = std::pow(-inst.q[i] / d, inv);
  }
  return x;
}

// Bounded projected-descent pass used purely as a basin finder once the direct
// starts have failed; its endpoint seeds one more Newton run.
Vector descent_prepass(const TcpInstance& inst, Vector x, int sweeps) {
  Vector w = apply(inst.tensor, x) + inst.q;
  double psi = fb_merit(x, w);
  double alpha = 1.0;
  for (int it = 0; it < sweeps; ++it) {
    alpha = std::min(alpha * 2.0, 1.0);
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      const Vector xn = (x - alpha * w).cwiseMax(0.0);
      const Vector wn = apply(inst.tensor, xn) + inst.q;
      const double psin = fb_merit(xn, wn);
      if (std::isfinite(psin) && psin < psi) {
        x = xn;
        w = wn;
        psi = psin;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
  }
  return x;
}

// The merit landscape of a kinked complementarity map can hold a local
// minimum that is not a solution; a single descent run can end wedged there.
// Both solvers therefore retry from a short deterministic ladder of starts,
// each run getting the full iteration budget. The reported iterations are the
// total across runs, and the reported point is the best endpoint seen. A run
// that never improved the min-map residual of its first start at all is
// reported as diverged rather than max_iter.
template <typename RunCore>
TcpSolution run_with_restarts(const TcpInstance& inst, double tol, std::vector<Vector> starts,
                              bool final_prepass, const RunCore& run) {
  int total_iterations = 0;
  CoreResult best;
  bool nonfinite = false;
  const double res0 = residual(inst, starts.front());
  std::vector<Vector> tried;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const Vector start = starts[i];
    bool seen = false;
    for (const Vector& t : tried)
      if (t == start) seen = true;
    if (seen) continue;
    tried.push_back(start);
    CoreResult r = run(start);
    total_iterations += r.iterations;
    nonfinite = nonfinite || r.nonfinite;
    if (r.solved) return finish(inst, std::move(r.x), total_iterations, TcpStatus::solved, tol);
    if (std::isfinite(r.res) && r.res < best.res) best = std::move(r);
    // Last direct start exhausted: only now pay for the basin-finding pass.
    if (final_prepass && i + 1 == starts.size())
      starts.push_back(descent_prepass(inst, starts.front(), 100));
  }
  TcpStatus status = TcpStatus::max_iter;
  if (nonfinite || !(best.res < res0 * (1.0 - 1e-12))) status = TcpStatus::diverged;
  if (best.x.size() == 0) best.x = starts.front();
  return finish(inst, std::move(best.x), total_iterations, status, tol);
}

}  // namespace

double residual(const TcpInstance& inst, const Vector& x) {
  check_instance(inst);
  if (x.size() != inst.tensor.dim()) {
    throw std::invalid_argument("x has dimension " + std::to_string(x.size()) +
                                ", tensor expects " + std::to_string(inst.tensor.dim()));
  }
  const Vector w = apply(inst.tensor, x) + inst.q;
  return min_map_residual(x, w);
}

TcpSolution solve_fixed_point(const TcpInstance& inst, double step, double tol, int max_iter,
                              std::optional<Vector> x0) {
  check_instance(inst);
  if (step <= 0.0 || tol <= 0.0) throw std::invalid_argument("step and tol must be positive");
  const int n = inst.tensor.dim();
  if (auto zero = trivial_solution(inst, tol)) return *zero;

  Vector x = x0 ? *x0 : Vector::Constant(n, 1.0 / n);
  if (x.size() != n) throw std::invalid_argument("x0 has the wrong dimension");

  std::vector<Vector> starts{std::move(x), diagonal_start(inst), Vector::Ones(n)};
  return run_with_restarts(inst, tol, std::move(starts), false, [&](const Vector& start) {
    return fixed_core(inst, step, tol, max_iter, start);
  });
}

TcpSolution solve_newton(const TcpInstance& inst, double tol, int max_iter,
                         std::optional<Vector> x0) {
  check_instance(inst);
  if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
  const int n = inst.tensor.dim();
  if (auto zero = trivial_solution(inst, tol)) return *zero;

  Vector x = x0 ? *x0 : Vector::Constant(n, 1.0 / n);
  if (x.size() != n) throw std::invalid_argument("x0 has the wrong dimension");

  std::vector<Vector> starts{std::move(x), diagonal_start(inst), Vector::Ones(n)};
  return run_with_restarts(inst, tol, std::move(starts), true, [&](const Vector& start) {
    return newton_core(inst, tol, max_iter, start);
  });
}

namespace {

std::optional<Vector> brute_force_matrix(const TcpInstance& inst) {
  const int n = inst.tensor.dim();
  if ((1LL << n) > 4096) {
    throw std::invalid_argument("support enumeration handles at most 2^n = 4096 supports");
  }
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = inst.tensor.at({i, j});

  double best_res = std::numeric_limits<double>::infinity();
  Vector best;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> support;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) support.push_back(i);
    Vector x = Vector::Zero(n);
    if (!support.empty()) {
      const int k = static_cast<int>(support.size());
      Matrix sub(k, k);
      Vector rhs(k);
      for (int r = 0; r < k; ++r) {
        rhs[r] = -inst.q[support[static_cast<std::size_t>(r)]];
        for (int c = 0; c < k; ++c)
          sub(r, c) = a(support[static_cast<std::size_t>(r)], support[static_cast<std::size_t>(c)]);
      }
      const Vector xs = Eigen::PartialPivLU<Matrix>(sub).solve(rhs);
      if (!xs.allFinite() || (sub * xs - rhs).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, rhs.cwiseAbs().maxCoeff()))
        continue;
      if (xs.minCoeff() < -1e-12) continue;
      for (int r = 0; r < k; ++r) x[support[static_cast<std::size_t>(r)]] = std::max(0.0, xs[r]);
    }
    const double res = residual(inst, x);
    if (res < best_res) {
      best_res = res;
      best = x;
    }
  }
  if (best_res <= 1e-6) return best;
  return std::nullopt;
}

std::optional<Vector> brute_force_grid(const TcpInstance& inst, int grid) {
  const int n = inst.tensor.dim();
  if (n > 3) throw std::invalid_argument("grid search handles dimension at most 3");
  if (grid < 2) throw std::invalid_argument("grid needs at least 2 subdivisions");
  const double inv = 1.0 / static_cast<double>(inst.tensor.order() - 1);
  double x_max = 0.0;
  for (int i = 0; i < n; ++i) x_max = std::max(x_max, std::pow(std::abs(inst.q[i]), inv));
  x_max = 1.0 + x_max * n;

  Vector lo = Vector::Zero(n);
  Vector hi = Vector::Constant(n, x_max);
  Vector best = Vector::Zero(n);
  double best_res = residual(inst, best);

  for (int level = 0; level < 16 && best_res > 1e-6; ++level) {
    const Vector width = hi - lo;
    MultiIndex cell(static_cast<std::size_t>(n), 0);
    do {
      Vector x(n);
      for (int i = 0; i < n; ++i)
        x[i] = lo[i] + width[i] * static_cast<double>(cell[static_cast<std::size_t>(i)]) /
                           static_cast<double>(grid);
      const double res = residual(inst, x);
      if (res < best_res) {
        best_res = res;
        best = x;
      }
    } while (detail::advance_index(cell, grid + 1));
    // shrink the box around the best cell, two cells of slack per side
    for (int i = 0; i < n; ++i) {
      const double h = 2.0 * width[i] / static_cast<double>(grid);
      lo[i] = std::max(0.0, best[i] - h);
      hi[i] = best[i] + h;
    }
    if ((hi - lo).maxCoeff() < 1e-12) break;
  }
  if (best_res <= 1e-6) return best;
  return std::nullopt;
}

}  // namespace

std::optional<Vector> brute_force_supports(const TcpInstance& inst, int grid) {
  check_instance(inst);
  if (inst.tensor.order() == 2) return brute_force_matrix(inst);
  return brute_force_grid(inst, grid);
}

}  // namespace tenkit
