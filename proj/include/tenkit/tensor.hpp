#ifndef TENKIT_TENSOR_HPP
#define TENKIT_TENSOR_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace tenkit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using MultiIndex = std::vector<int>;

/// Default guard against accidental huge allocations (number of stored reals).
inline constexpr std::size_t kDefaultElementCap = 100'000'000;

/// Dense real tensor of order m >= 2 and dimension n >= 1.
///
/// Entries are stored row-major over 0-based indices: the multi-index
/// (i1,...,im) maps to offset ((i1*n + i2)*n + ...)*n + im.  All stored
/// values are finite; writes of NaN/inf are rejected.
class Tensor {
 public:
  Tensor(int order, int dim, std::size_t element_cap = kDefaultElementCap);

  /// Builds a tensor from a sparse entry list; unspecified slots are zero.
  /// Duplicate multi-indices are rejected.
  static Tensor from_entries(int order, int dim,
                             const std::vector<std::pair<MultiIndex, double>>& entries,
                             std::size_t element_cap = kDefaultElementCap);

  int order() const { return order_; }
  int dim() const { return dim_; }
  std::size_t size() const { return values_.size(); }

  double at(std::span<const int> idx) const;
  double at(std::initializer_list<int> idx) const;
  void set(std::span<const int> idx, double value);
  void set(std::initializer_list<int> idx, double value);

  /// Entry at the all-equal index (i,...,i).
  double diagonal(int i) const;

  std::span<const double> values() const { return values_; }
  std::span<double> mutable_values() { return values_; }

  std::size_t offset(std::span<const int> idx) const;

  bool operator==(const Tensor& other) const = default;

 private:
  int order_;
  int dim_;
  std::vector<double> values_;
};

/// Order-(m-1) slice of a tensor obtained by fixing the first index.
struct RowSubtensor {
  int owner_index = 0;  // the fixed first index, 0-based
  int order = 1;        // m - 1
  int dim = 0;
  std::vector<double> values;  // n^(m-1) entries, same layout as Tensor rows

  double at(std::span<const int> tail) const;
  double at(std::initializer_list<int> tail) const;
};

RowSubtensor row_subtensor(const Tensor& t, int i);

/// Identity tensor: 1 at every (i,...,i), 0 elsewhere.
Tensor identity_tensor(int order, int dim, std::size_t element_cap = kDefaultElementCap);

/// Comparison tensor: |t| on the diagonal, -|t| off it.
Tensor comparison_tensor(const Tensor& t);

/// T x^{m-1}: component i is the sum over all index tails of
/// t_{i,i2,...,im} * x_{i2} * ... * x_{im}.  Accumulates in long double,
/// summing tails in lexicographic order.
Vector apply(const Tensor& t, const Vector& x);

/// x^T (T x^{m-1}), accumulated directly over all m-tuples.
double quad_form(const Tensor& t, const Vector& x);

/// Matrix of partial derivatives d(T x^{m-1})_i / d x_j.
Matrix jacobian(const Tensor& t, const Vector& x);

/// Tensor-times-diagonal-matrix product: output entry at (i,i2,...,im) is
/// t_{i,i2,...,im} * w_{i2} * ... * w_{im}.
Tensor scale_columns(const Tensor& t, const Vector& w);

Tensor operator+(const Tensor& a, const Tensor& b);
Tensor operator-(const Tensor& a, const Tensor& b);
Tensor operator*(double c, const Tensor& t);

namespace detail {

/// Odometer increment over {0,...,dim-1}^k, last position fastest.
/// Returns false once the index wraps past the end.
bool advance_index(std::span<int> idx, int dim);

}  // namespace detail

}  // namespace tenkit

#endif  // TENKIT_TENSOR_HPP
