#include "tenkit/tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace tenkit {

namespace {

std::size_t checked_element_count(int order, int dim, std::size_t cap) {
  if (order < 2) throw std::invalid_argument("tensor order must be at least 2");
  if (dim < 1) throw std::invalid_argument("tensor dimension must be at least 1");
  std::size_t count = 1;
  for (int k = 0; k < order; ++k) {
    count *= static_cast<std::size_t>(dim);
    if (count > cap) {
      throw std::invalid_argument("tensor would hold more than " + std::to_string(cap) +
                                  " elements (order " + std::to_string(order) + ", dim " +
                                  std::to_string(dim) + ")");
    }
  }
  return count;
}

void check_finite(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("tensor entries must be finite");
  }
}

}  // namespace

Tensor::Tensor(int order, int dim, std::size_t element_cap)
    : order_(order), dim_(dim), values_(checked_element_count(order, dim, element_cap), 0.0) {}

Tensor Tensor::from_entries(int order, int dim,
                            const std::vector<std::pair<MultiIndex, double>>& entries,
                            std::size_t element_cap) {
  Tensor t(order, dim, element_cap);
  std::unordered_set<std::size_t> seen;
  seen.reserve(entries.size());
  for (const auto& [idx, value] : entries) {
    const std::size_t off = t.offset(idx);
    if (!seen.insert(off).second) {
      throw std::invalid_argument("duplicate tensor entry at offset " + std::to_string(off));
    }
    check_finite(value);
    t.values_[off] = value;
  }
  return t;
}

std::size_t Tensor::offset(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != order_) {
    throw std::invalid_argument("multi-index has " + std::to_string(idx.size()) +
                                " components, expected " + std::to_string(order_));
  }
  std::size_t off = 0;
  for (int k = 0; k < order_; ++k) {
    const int c = idx[static_cast<std::size_t>(k)];
    if (c < 0 || c >= dim_) {
      throw std::invalid_argument("index component " + std::to_string(k + 1) + " is " +
                                  std::to_string(c + 1) + ", outside [1, " +
                                  std::to_string(dim_) + "]");
    }
    off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(c);
  }
  return off;
}

double Tensor::at(std::span<const int> idx) const { return values_[offset(idx)]; }

double Tensor::at(std::initializer_list<int> idx) const {
  return at(std::span<const int>(idx.begin(), idx.size()));
}

void Tensor::set(std::span<const int> idx, double value) {
  check_finite(value);
  values_[offset(idx)] = value;
}

void Tensor::set(std::initializer_list<int> idx, double value) {
  set(std::span<const int>(idx.begin(), idx.size()), value);
}

double Tensor::diagonal(int i) const {
  if (i < 0 || i >= dim_) {
    throw std::invalid_argument("diagonal row " + std::to_string(i + 1) + " outside [1, " +
                                std::to_string(dim_) + "]");
  }
  std::size_t off = 0;
  for (int k = 0; k < order_; ++k) off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  return values_[off];
}

namespace detail {

bool advance_index(std::span<int> idx, int dim) {
  for (int k = static_cast<int>(idx.size()) - 1; k >= 0; --k) {
    auto& c = idx[static_cast<std::size_t>(k)];
    if (++c < dim) return true;
    c = 0;
  }
  return false;
}

}  // namespace detail

double RowSubtensor::at(std::span<const int> tail) const {
  if (static_cast<int>(tail.size()) != order) {
    throw std::invalid_argument("row subtensor index has wrong arity");
  }
  std::size_t off = 0;
  for (int k = 0; k < order; ++k) {
    const int c = tail[static_cast<std::size_t>(k)];
    if (c < 0 || c >= dim) throw std::invalid_argument("row subtensor index out of range");
    off = off * static_cast<std::size_t>(dim) + static_cast<std::size_t>(c);
  }
  return values[off];
}

double RowSubtensor::at(std::initializer_list<int> tail) const {
  return at(std::span<const int>(tail.begin(), tail.size()));
}

RowSubtensor row_subtensor(const Tensor& t, int i) {
  if (i < 0 || i >= t.dim()) {
    throw std::invalid_argument("row index " + std::to_string(i + 1) + " outside [1, " +
                                std::to_string(t.dim()) + "]");
  }
  const std::size_t row_len = t.size() / static_cast<std::size_t>(t.dim());
  RowSubtensor row;
  row.owner_index = i;
  row.order = t.order() - 1;
  row.dim = t.dim();
  const auto vals = t.values();
  row.values.assign(vals.begin() + static_cast<std::ptrdiff_t>(row_len * static_cast<std::size_t>(i)),
                    vals.begin() + static_cast<std::ptrdiff_t>(row_len * static_cast<std::size_t>(i + 1)));
  return row;
}

Tensor identity_tensor(int order, int dim, std::size_t element_cap) {
  Tensor t(order, dim, element_cap);
  MultiIndex idx(static_cast<std::size_t>(order));
  for (int i = 0; i < dim; ++i) {
    for (auto& c : idx) c = i;
    t.set(idx, 1.0);
  }
  return t;
}

Tensor comparison_tensor(const Tensor& t) {
  Tensor out = t;
  const int n = t.dim();
  const int m = t.order();
  const std::size_t row_len = t.size() / static_cast<std::size_t>(n);
  auto vals = out.mutable_values();
  for (int i = 0; i < n; ++i) {
    std::size_t diag_off = 0;
    for (int k = 0; k < m; ++k) diag_off = diag_off * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
    for (std::size_t off = row_len * static_cast<std::size_t>(i);
         off < row_len * static_cast<std::size_t>(i + 1); ++off) {
      vals[off] = (off == diag_off) ? std::abs(vals[off]) : -std::abs(vals[off]);
    }
  }
  return out;
}

namespace {

void check_vector_dim(const Tensor& t, const Vector& x, const char* what) {
  if (x.size() != t.dim()) {
    throw std::invalid_argument(std::string(what) + ": vector has dimension " +
                                std::to_string(x.size()) + ", tensor expects " +
                                std::to_string(t.dim()));
  }
}

}  // namespace

Vector apply(const Tensor& t, const Vector& x) {
  check_vector_dim(t, x, "apply");
  const int n = t.dim();
  const int m = t.order();
  const std::size_t row_len = t.size() / static_cast<std::size_t>(n);
  const auto vals = t.values();

  Vector out(n);
  MultiIndex tail(static_cast<std::size_t>(m - 1));
  for (int i = 0; i < n; ++i) {
    long double acc = 0.0L;
    for (auto& c : tail) c = 0;
    std::size_t off = row_len * static_cast<std::size_t>(i);
    do {
      const double v = vals[off++];
      if (v != 0.0) {
        long double prod = v;
        for (const int c : tail) prod *= x[c];
        acc += prod;
      }
    } while (detail::advance_index(tail, n));
    out[i] = static_cast<double>(acc);
  }
  return out;
}

double quad_form(const Tensor& t, const Vector& x) {
  check_vector_dim(t, x, "quad_form");
  const int n = t.dim();
  const int m = t.order();
  const auto vals = t.values();

  long double acc = 0.0L;
  MultiIndex idx(static_cast<std::size_t>(m), 0);
  std::size_t off = 0;
  do {
    const double v = vals[off++];
    if (v != 0.0) {
      long double prod = v;
      for (const int c : idx) prod *= x[c];
      acc += prod;
    }
  } while (detail::advance_index(idx, n));
  return static_cast<double>(acc);
}

Matrix jacobian(const Tensor& t, const Vector& x) {
  check_vector_dim(t, x, "jacobian");
  const int n = t.dim();
  const int m = t.order();
  const std::size_t row_len = t.size() / static_cast<std::size_t>(n);
  const auto vals = t.values();

  Matrix out = Matrix::Zero(n, n);
  const int tail_len = m - 1;
  MultiIndex tail(static_cast<std::size_t>(tail_len));
  std::vector<double> prefix(static_cast<std::size_t>(tail_len) + 1);
  std::vector<double> suffix(static_cast<std::size_t>(tail_len) + 1);

  for (int i = 0; i < n; ++i) {
    for (auto& c : tail) c = 0;
    std::size_t off = row_len * static_cast<std::size_t>(i);
    do {
      const double v = vals[off++];
      if (v != 0.0) {
        // prefix[k] = product of x over tail positions < k, suffix[k] over > k
        prefix[0] = 1.0;
        for (int k = 0; k < tail_len; ++k) {
          prefix[static_cast<std::size_t>(k) + 1] =
              prefix[static_cast<std::size_t>(k)] * x[tail[static_cast<std::size_t>(k)]];
        }
        suffix[static_cast<std::size_t>(tail_len)] = 1.0;
        for (int k = tail_len - 1; k >= 0; --k) {
          suffix[static_cast<std::size_t>(k)] =
              suffix[static_cast<std::size_t>(k) + 1] * x[tail[static_cast<std::size_t>(k)]];
        }
        for (int k = 0; k < tail_len; ++k) {
          out(i, tail[static_cast<std::size_t>(k)]) +=
              v * prefix[static_cast<std::size_t>(k)] * suffix[static_cast<std::size_t>(k) + 1];
        }
      }
    } while (detail::advance_index(tail, n));
  }
  return out;
}

Tensor scale_columns(const Tensor& t, const Vector& w) {
  check_vector_dim(t, w, "scale_columns");
  const int n = t.dim();
  const int m = t.order();
  const std::size_t row_len = t.size() / static_cast<std::size_t>(n);

  Tensor out = t;
  auto vals = out.mutable_values();
  MultiIndex tail(static_cast<std::size_t>(m - 1));
  for (int i = 0; i < n; ++i) {
    for (auto& c : tail) c = 0;
    std::size_t off = row_len * static_cast<std::size_t>(i);
    do {
      double factor = 1.0;
      for (const int c : tail) factor *= w[c];
      vals[off] *= factor;
      ++off;
    } while (detail::advance_index(tail, n));
  }
  return out;
}

namespace {

void check_same_shape(const Tensor& a, const Tensor& b) {
  if (a.order() != b.order() || a.dim() != b.dim()) {
    throw std::invalid_argument("tensor shapes differ");
  }
}

}  // namespace

Tensor operator+(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b);
  Tensor out = a;
  auto vals = out.mutable_values();
  const auto bv = b.values();
  for (std::size_t k = 0; k < bv.size(); ++k) vals[k] += bv[k];
  return out;
}

Tensor operator-(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b);
  Tensor out = a;
  auto vals = out.mutable_values();
  const auto bv = b.values();
  for (std::size_t k = 0; k < bv.size(); ++k) vals[k] -= bv[k];
  return out;
}

Tensor operator*(double c, const Tensor& t) {
  Tensor out = t;
  for (auto& v : out.mutable_values()) v *= c;
  return out;
}

}  // namespace tenkit
