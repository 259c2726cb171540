#pragma once

#include <cstdint>
#include <string>

#include "tenkit/tensor.hpp"

namespace tenkit {

enum class TensorClass { nekrasov_z, sdd_z, z_only, nonnegative, arbitrary };

std::string to_string(TensorClass c);
TensorClass parse_tensor_class(const std::string& name);

struct GeneratorSpec {
  int order = 2;
  int dim = 1;
  TensorClass target = TensorClass::arbitrary;
  std::uint64_t seed = 0;
  double density = 1.0;  // in (0, 1]
};

// Deterministic in the spec. Entry magnitudes live on the dyadic grid k/4096,
// so sums and differences of entries stay exact in double precision (the
// decomposition round-trips bit-exactly on generated tensors). Structured
// classes hold by construction: nekrasov_z/sdd_z draw nonpositive
// off-diagonals row by row and then set the diagonal to Lambda_i (resp. R_i)
// times a factor in (1.05, 2), falling back to 1 when the row bound is zero.
// The target class is re-checked before returning.
Tensor generate(const GeneratorSpec& spec);

}  // namespace tenkit
