#include "tenkit/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tenkit/rng.hpp"

namespace tenkit {

Vector row_excess(const Tensor& t) {
  const int n = t.dim();
  const int m = t.order();
  const std::size_t row_len = t.size() / static_cast<std::size_t>(n);
  const auto vals = t.values();
  Vector r(n);
  for (int i = 0; i < n; ++i) {
    std::size_t diag_in_row = 0;
    for (int k = 0; k < m - 1; ++k)
      diag_in_row = diag_in_row * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
    long double acc = 0.0L;
    const std::size_t base = row_len * static_cast<std::size_t>(i);
    for (std::size_t o = 0; o < row_len; ++o) {
      if (o != diag_in_row) acc += std::abs(vals[base + o]);
    }
    r[i] = static_cast<double>(acc);
  }
  return r;
}

namespace detail {

double row_lambda(const Tensor& t, int i, const Vector& ratio) {
  const int n = t.dim();
  const int m = t.order();
  const std::size_t row_len = t.size() / static_cast<std::size_t>(n);
  const auto vals = t.values();
  long double weighted = 0.0L;  // tails entirely inside {1..i-1}
  long double plain = 0.0L;     // every other off-diagonal tail
  MultiIndex tail(static_cast<std::size_t>(m - 1), 0);
  std::size_t off = row_len * static_cast<std::size_t>(i);
  do {
    const double v = vals[off++];
    if (v != 0.0) {
      bool all_below = true;
      bool all_i = true;
      for (const int c : tail) {
        all_below = all_below && c < i;
        all_i = all_i && c == i;
      }
      if (all_below) {
        long double term = std::abs(v);
        for (const int c : tail) term *= ratio[c];
        weighted += term;
      } else if (!all_i) {
        plain += std::abs(v);
      }
    }
  } while (advance_index(tail, n));
  return static_cast<double>(weighted + plain);
}

}  // namespace detail

namespace {

NekrasovProfile profile_impl(const Tensor& t, bool throw_on_zero) {
  const int n = t.dim();
  const int m = t.order();
  NekrasovProfile p;
  p.row_excess = row_excess(t);
  p.diag = Vector(n);
  for (int i = 0; i < n; ++i) {
    p.diag[i] = t.diagonal(i);
    if (p.diag[i] == 0.0) {
      if (throw_on_zero) {
        throw std::invalid_argument("zero diagonal entry in row " + std::to_string(i + 1) +
                                    ": the Lambda recursion divides by |t_{i...i}|");
      }
      p.zero_diagonal_row = i;
      return p;
    }
  }

  p.lambda = Vector(n);
  p.per_row_strict.assign(static_cast<std::size_t>(n), false);
  const double inv = 1.0 / static_cast<double>(m - 1);
  Vector ratio = Vector::Zero(n);  // (lambda_j / |t_{j..j}|)^{1/(m-1)}, rows already done
  for (int i = 0; i < n; ++i) {
    p.lambda[i] = detail::row_lambda(t, i, ratio);
    p.per_row_strict[static_cast<std::size_t>(i)] = std::abs(p.diag[i]) > p.lambda[i];
    ratio[i] = std::pow(p.lambda[i] / std::abs(p.diag[i]), inv);
  }
  return p;
}

}  // namespace

NekrasovProfile nekrasov_profile(const Tensor& t) { return profile_impl(t, true); }

bool is_z(const Tensor& t, std::vector<int>* witness) {
  const int n = t.dim();
  const int m = t.order();
  const auto vals = t.values();
  MultiIndex idx(static_cast<std::size_t>(m), 0);
  std::size_t off = 0;
  do {
    if (vals[off] > 0.0) {
      bool diagonal = true;
      for (const int c : idx) diagonal = diagonal && c == idx[0];
      if (!diagonal) {
        if (witness) *witness = idx;
        return false;
      }
    }
    ++off;
  } while (detail::advance_index(idx, n));
  return true;
}

bool is_diag_dominant(const Tensor& t, bool strict, int* witness_row, double slack) {
  const Vector r = row_excess(t);
  for (int i = 0; i < t.dim(); ++i) {
    const double d = std::abs(t.diagonal(i));
    const bool ok = strict ? d > r[i] : d >= r[i] - slack * std::max({d, r[i], 1.0});
    if (!ok) {
      if (witness_row) *witness_row = i;
      return false;
    }
  }
  return true;
}

bool is_nekrasov(const Tensor& t) {
  const NekrasovProfile p = nekrasov_profile(t);
  return std::all_of(p.per_row_strict.begin(), p.per_row_strict.end(), [](bool b) { return b; });
}

ClassReport classify(const Tensor& t) {
  ClassReport r;
  std::vector<int> z_witness;
  r.is_z = is_z(t, &z_witness);
  int dd_row = -1;
  int sdd_row = -1;
  r.is_dd = is_diag_dominant(t, false, &dd_row);
  r.is_sdd = is_diag_dominant(t, true, &sdd_row);
  r.profile = profile_impl(t, false);
  r.zero_diagonal = r.profile.zero_diagonal_row >= 0;
  r.is_nekrasov = !r.zero_diagonal &&
                  std::all_of(r.profile.per_row_strict.begin(), r.profile.per_row_strict.end(),
                              [](bool b) { return b; });
  r.is_nekrasov_z = r.is_nekrasov && r.is_z;
  r.positive_diagonal = true;
  for (int i = 0; i < t.dim(); ++i) r.positive_diagonal = r.positive_diagonal && t.diagonal(i) > 0.0;
  r.even_order = t.order() % 2 == 0;
  r.predicted_p = r.is_nekrasov_z && r.positive_diagonal && r.even_order;

  if (!r.is_z) {
    r.witness = ClassWitness{"z", z_witness};
  } else if (!r.is_dd) {
    r.witness = ClassWitness{"dd", {dd_row}};
  } else if (!r.is_sdd) {
    r.witness = ClassWitness{"sdd", {sdd_row}};
  } else if (r.zero_diagonal) {
    r.witness = ClassWitness{"zero_diagonal", {r.profile.zero_diagonal_row}};
  } else if (!r.is_nekrasov) {
    int row = -1;
    for (int i = 0; i < t.dim(); ++i) {
      if (!r.profile.per_row_strict[static_cast<std::size_t>(i)]) {
        row = i;
        break;
      }
    }
    r.witness = ClassWitness{"nekrasov", {row}};
  }
  return r;
}

namespace {

Tensor principal_subtensor(const Tensor& t, const std::vector<int>& support) {
  const int m = t.order();
  const int k = static_cast<int>(support.size());
  Tensor sub(m, k, t.size());
  MultiIndex idx(static_cast<std::size_t>(m), 0);
  MultiIndex mapped(static_cast<std::size_t>(m));
  do {
    for (int p = 0; p < m; ++p)
      mapped[static_cast<std::size_t>(p)] = support[static_cast<std::size_t>(idx[static_cast<std::size_t>(p)])];
    sub.set(idx, t.at(mapped));
  } while (detail::advance_index(idx, k));
  return sub;
}

Tensor add_identity(const Tensor& t) {
  Tensor s = t;
  MultiIndex idx(static_cast<std::size_t>(t.order()));
  for (int i = 0; i < t.dim(); ++i) {
    for (auto& c : idx) c = i;
    s.set(idx, s.at(idx) + 1.0);
  }
  return s;
}

}  // namespace

SpectralEstimate spectral_radius_nonneg(const Tensor& t, double tol, int max_iter,
                                        bool track_trace) {
  const int n = t.dim();
  const int m = t.order();
  {
    const auto vals = t.values();
    MultiIndex idx(static_cast<std::size_t>(m), 0);
    std::size_t off = 0;
    do {
      if (vals[off] < 0.0) {
        std::string where;
        for (const int c : idx) where += std::to_string(c + 1) + " ";
        throw std::invalid_argument("spectral radius iteration needs a nonnegative tensor; entry at " +
                                    where + "is " + std::to_string(vals[off]));
      }
      ++off;
    } while (detail::advance_index(idx, n));
  }

  // Iterate on T + I so the diagonal is positive (every eigenvalue shifts by
  // exactly one: (T+I)x^{m-1} = Tx^{m-1} + x^{[m-1]}). Components that decay
  // below the shrink threshold are pruned and the iteration restarts on the
  // principal subtensor of the surviving support; the bracket then certifies
  // the dominant surviving block.
  constexpr double kShrink = 1e-13;
  const double inv = 1.0 / static_cast<double>(m - 1);

  std::vector<int> support(static_cast<std::size_t>(n));
  std::iota(support.begin(), support.end(), 0);
  Tensor shifted = add_identity(t);
  Tensor working = shifted;
  Vector x = Vector::Ones(n);

  SpectralEstimate est;
  while (est.iterations < max_iter) {
    const int k = static_cast<int>(support.size());
    const Vector y = apply(working, x);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < k; ++i) {
      const double ratio = y[i] / std::pow(x[i], static_cast<double>(m - 1));
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    ++est.iterations;
    est.lower = lo - 1.0;
    est.upper = hi - 1.0;
    est.value = 0.5 * (est.lower + est.upper);
    if (track_trace) est.trace.emplace_back(est.lower, est.upper);
    if (hi - lo <= tol * std::max(1.0, std::abs(est.upper))) {
      est.converged = true;
      break;
    }

    Vector next(k);
    for (int i = 0; i < k; ++i) next[i] = std::pow(y[i], inv);
    next /= next.maxCoeff();

    std::vector<int> keep;
    keep.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      if (next[i] >= kShrink) keep.push_back(support[static_cast<std::size_t>(i)]);
    }
    if (static_cast<int>(keep.size()) < k) {
      support = keep;
      working = principal_subtensor(shifted, support);
      x = Vector::Ones(static_cast<int>(support.size()));
    } else {
      x = next;
    }
  }

  est.eigenvector = Vector::Zero(n);
  for (std::size_t i = 0; i < support.size(); ++i) est.eigenvector[support[i]] = x[static_cast<int>(i)];
  return est;
}

MTensorVerdict is_nonsingular_m(const Tensor& t, double tol, int max_iter) {
  MTensorVerdict v;
  if (!is_z(t)) {
    v.z_failed = true;
    v.verdict = Tristate::no;
    return v;
  }
  double s = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < t.dim(); ++i) s = std::max(s, t.diagonal(i));
  s = std::max(s, 0.0);  // keep B = s*I - T nonnegative even for negative diagonals
  v.shift = s;
  const Tensor b = s * identity_tensor(t.order(), t.dim(), t.size()) - t;
  v.rho = spectral_radius_nonneg(b, tol, max_iter);
  if (!v.rho.converged) {
    v.verdict = Tristate::unknown;
    return v;
  }
  v.verdict = s > v.rho.value + tol ? Tristate::yes : Tristate::no;
  return v;
}

MTensorVerdict is_nonsingular_h(const Tensor& t, double tol, int max_iter) {
  return is_nonsingular_m(comparison_tensor(t), tol, max_iter);
}

namespace {

std::optional<PWitness> p_check(const Tensor& t, const Vector& x) {
  const Vector w = apply(t, x);
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (int j = 0; j < x.size(); ++j) {
    if (x[j] != 0.0) {
      any = true;
      best = std::max(best, x[j] * w[j]);
    }
  }
  if (any && best <= 0.0) {
    PWitness wit;
    wit.x = x;
    wit.products = x.cwiseProduct(w);
    return wit;
  }
  return std::nullopt;
}

}  // namespace

std::optional<PWitness> p_falsify(const Tensor& t, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("p_falsify needs at least one sample");
  const int n = t.dim();

  long long used = 0;
  long long patterns = 1;
  for (int i = 0; i < n && patterns <= samples; ++i) patterns *= 3;
  if (patterns - 1 <= samples) {
    // Exhaust the sign patterns {-1,0,1}^n \ {0} first; they catch axis and
    // orthant violations that random directions hit only by luck.
    MultiIndex digits(static_cast<std::size_t>(n), 0);
    do {
      Vector x(n);
      bool zero = true;
      for (int i = 0; i < n; ++i) {
        x[i] = static_cast<double>(digits[static_cast<std::size_t>(i)] - 1);
        zero = zero && x[i] == 0.0;
      }
      if (zero) continue;
      ++used;
      if (auto wit = p_check(t, x)) return wit;
    } while (detail::advance_index(digits, 3));
  }

  Rng rng(seed);
  while (used < samples) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.normal();
    const double norm = x.norm();
    if (norm == 0.0) continue;
    x /= norm;
    ++used;
    if (auto wit = p_check(t, x)) return wit;
  }
  return std::nullopt;
}

}  // namespace tenkit
