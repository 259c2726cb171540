#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tenkit/tensor.hpp"

namespace tenkit {

// Per-row dominance data: R_i (plain off-diagonal mass), Lambda_i (recursively
// weighted off-diagonal mass) and the strict comparison |t_{i..i}| > Lambda_i.
struct NekrasovProfile {
  Vector row_excess;
  Vector lambda;               // empty when a zero diagonal blocks the recursion
  Vector diag;
  std::vector<bool> per_row_strict;
  int zero_diagonal_row = -1;  // 0-based row that stopped the recursion, -1 if none
};

struct ClassWitness {
  std::string predicate;   // which check failed ("dd", "sdd", "z", "nekrasov", ...)
  std::vector<int> index;  // 0-based; single element = row, full tuple = entry
};

struct ClassReport {
  bool is_z = false;
  bool is_dd = false;
  bool is_sdd = false;
  bool is_nekrasov = false;
  bool is_nekrasov_z = false;
  bool positive_diagonal = false;
  bool even_order = false;
  bool predicted_p = false;
  bool zero_diagonal = false;  // reason is_nekrasov is false without a Lambda verdict
  std::optional<ClassWitness> witness;
  NekrasovProfile profile;
};

struct SpectralEstimate {
  double value = 0.0;
  Vector eigenvector;  // positive on the surviving support, 0 on pruned indices
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<std::pair<double, double>> trace;  // (lower, upper) per iteration, if tracked
};

enum class Tristate { yes, no, unknown };

struct MTensorVerdict {
  Tristate verdict = Tristate::unknown;
  double shift = 0.0;  // the s in T = s*I - B
  SpectralEstimate rho;  // estimate for rho(B); meaningful unless is_z failed
  bool z_failed = false;
};

struct PWitness {
  Vector x;
  Vector products;  // x_j * (T x^{m-1})_j
};

Vector row_excess(const Tensor& t);

// Throws on a zero diagonal entry (the recursion divides by |t_{j..j}|).
NekrasovProfile nekrasov_profile(const Tensor& t);

bool is_z(const Tensor& t, std::vector<int>* witness = nullptr);

// Relative slack absorbs roundoff at the equality boundary that diagonal
// scalings produce by construction; strict comparisons are exact.
inline constexpr double kDominanceSlack = 1e-12;
bool is_diag_dominant(const Tensor& t, bool strict, int* witness_row = nullptr,
                      double slack = kDominanceSlack);

bool is_nekrasov(const Tensor& t);

ClassReport classify(const Tensor& t);

SpectralEstimate spectral_radius_nonneg(const Tensor& t, double tol = 1e-10,
                                        int max_iter = 100000, bool track_trace = false);

MTensorVerdict is_nonsingular_m(const Tensor& t, double tol = 1e-10, int max_iter = 100000);
MTensorVerdict is_nonsingular_h(const Tensor& t, double tol = 1e-10, int max_iter = 100000);

std::optional<PWitness> p_falsify(const Tensor& t, int samples, std::uint64_t seed);

namespace detail {
// One row of the Lambda recursion. ratio[j] must hold
// (lambda_j / |t_{j..j}|)^{1/(m-1)} for every j < i; later entries are unread.
// Tails lying entirely in {0..i-1} contribute |t| * prod ratio, every other
// off-diagonal tail contributes |t|.
double row_lambda(const Tensor& t, int i, const Vector& ratio);
}  // namespace detail

}  // namespace tenkit
