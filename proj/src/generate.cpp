#include "tenkit/generate.hpp"

#include <cmath>
#include <stdexcept>

#include "tenkit/classify.hpp"
#include "tenkit/rng.hpp"

namespace tenkit {

std::string to_string(TensorClass c) {
  switch (c) {
    case TensorClass::nekrasov_z: return "nekrasov_z";
    case TensorClass::sdd_z: return "sdd_z";
    case TensorClass::z_only: return "z_only";
    case TensorClass::nonnegative: return "nonnegative";
    case TensorClass::arbitrary: return "arbitrary";
  }
  return "unknown";
}

TensorClass parse_tensor_class(const std::string& name) {
  if (name == "nekrasov_z") return TensorClass::nekrasov_z;
  if (name == "sdd_z") return TensorClass::sdd_z;
  if (name == "z_only") return TensorClass::z_only;
  if (name == "nonnegative") return TensorClass::nonnegative;
  if (name == "arbitrary") return TensorClass::arbitrary;
  throw std::invalid_argument("unknown tensor class '" + name +
                              "' (expected nekrasov_z, sdd_z, z_only, nonnegative or arbitrary)");
}

namespace {

// Snap to the dyadic grid k/4096 so entry arithmetic (in particular the
// decomposition's per-row subtraction) is exact in double precision.
double grid(double v) { return std::round(v * 4096.0) / 4096.0; }

void fill_everywhere(Tensor& t, Rng& rng, double density, double lo, double hi) {
  auto vals = t.mutable_values();
  for (auto& v : vals) {
    const bool hit = rng.uniform01() < density;
    if (hit) v = grid(rng.uniform(lo, hi));
  }
}

// Nonpositive off-diagonals for one row; diagonal slot left at zero.
void fill_row_offdiag(Tensor& t, int i, Rng& rng, double density) {
  const int n = t.dim();
  const int m = t.order();
  const std::size_t row_len = t.size() / static_cast<std::size_t>(n);
  std::size_t diag_in_row = 0;
  for (int k = 0; k < m - 1; ++k)
    diag_in_row = diag_in_row * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
  auto vals = t.mutable_values();
  const std::size_t base = row_len * static_cast<std::size_t>(i);
  for (std::size_t o = 0; o < row_len; ++o) {
    if (o == diag_in_row) continue;
    const bool hit = rng.uniform01() < density;
    if (hit) vals[base + o] = -grid(rng.uniform(0.05, 1.5));
  }
}

void set_diagonal(Tensor& t, int i, double value) {
  MultiIndex idx(static_cast<std::size_t>(t.order()), i);
  t.set(idx, value);
}

bool matches_target(const Tensor& t, TensorClass target) {
  switch (target) {
    case TensorClass::nekrasov_z: {
      const ClassReport r = classify(t);
      return r.is_nekrasov_z && r.positive_diagonal;
    }
    case TensorClass::sdd_z: {
      const ClassReport r = classify(t);
      return r.is_sdd && r.is_z;
    }
    case TensorClass::z_only:
      return is_z(t);
    case TensorClass::nonnegative: {
      for (const double v : t.values())
        if (v < 0.0) return false;
      return true;
    }
    case TensorClass::arbitrary:
      return true;
  }
  return false;
}

}  // namespace

Tensor generate(const GeneratorSpec& spec) {
  if (spec.order < 2) throw std::invalid_argument("generator order must be at least 2");
  if (spec.dim < 1) throw std::invalid_argument("generator dimension must be at least 1");
  if (!(spec.density > 0.0 && spec.density <= 1.0)) {
    throw std::invalid_argument("generator density must lie in (0, 1]");
  }

  Rng rng(spec.seed);
  const int n = spec.dim;
  const int m = spec.order;
  Tensor t(m, n);

  switch (spec.target) {
    case TensorClass::nonnegative:
      fill_everywhere(t, rng, spec.density, 0.0, 1.0);
      break;
    case TensorClass::arbitrary:
      fill_everywhere(t, rng, spec.density, -1.0, 1.0);
      break;
    case TensorClass::z_only:
      for (int i = 0; i < n; ++i) {
        fill_row_offdiag(t, i, rng, spec.density);
        set_diagonal(t, i, grid(rng.uniform(-1.0, 1.0)));
      }
      break;
    case TensorClass::sdd_z:
      for (int i = 0; i < n; ++i) {
        fill_row_offdiag(t, i, rng, spec.density);
        const double u = rng.uniform(1.05, 2.0);
        const double r = row_excess(t)[i];  // only row i is filled beyond the ones before it
        set_diagonal(t, i, r > 0.0 ? r * u : 1.0);
      }
      break;
    case TensorClass::nekrasov_z: {
      const double inv = 1.0 / static_cast<double>(m - 1);
      Vector ratio = Vector::Zero(n);
      for (int i = 0; i < n; ++i) {
        fill_row_offdiag(t, i, rng, spec.density);
        const double u = rng.uniform(1.05, 2.0);
        const double lambda = detail::row_lambda(t, i, ratio);
        const double diag = lambda > 0.0 ? lambda * u : 1.0;
        set_diagonal(t, i, diag);
        ratio[i] = std::pow(lambda / diag, inv);
      }
      break;
    }
  }

  if (!matches_target(t, spec.target)) {
    throw std::logic_error("generated tensor missed its target class " + to_string(spec.target) +
                           " (order " + std::to_string(m) + ", dim " + std::to_string(n) +
                           ", seed " + std::to_string(spec.seed) + ")");
  }
  return t;
}

}  // namespace tenkit
