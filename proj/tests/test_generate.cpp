#include "tenkit/generate.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "tenkit/classify.hpp"

using tenkit::GeneratorSpec;
using tenkit::Tensor;
using tenkit::TensorClass;

TEST_CASE("class names round-trip") {
  for (auto c : {TensorClass::nekrasov_z, TensorClass::sdd_z, TensorClass::z_only,
                 TensorClass::nonnegative, TensorClass::arbitrary}) {
    CHECK(tenkit::parse_tensor_class(tenkit::to_string(c)) == c);
  }
  CHECK_THROWS_AS(tenkit::parse_tensor_class("m_tensor"), std::invalid_argument);
}

TEST_CASE("generation is deterministic in the spec") {
  const GeneratorSpec spec{3, 5, TensorClass::arbitrary, 12345, 0.7};
  const Tensor a = tenkit::generate(spec);
  const Tensor b = tenkit::generate(spec);
  CHECK(a == b);

  GeneratorSpec other = spec;
  other.seed = 12346;
  CHECK_FALSE(tenkit::generate(other) == a);
}

TEST_CASE("every generated value sits on the dyadic grid") {
  const Tensor t = tenkit::generate({3, 4, TensorClass::arbitrary, 99, 1.0});
  for (const double v : t.values()) {
    const double scaled = v * 4096.0;
    CHECK(scaled == std::round(scaled));
  }
}

TEST_CASE("targets hold by construction") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto nz = tenkit::classify(tenkit::generate({4, 4, TensorClass::nekrasov_z, seed, 1.0}));
    CHECK(nz.is_nekrasov_z);
    CHECK(nz.positive_diagonal);
    CHECK(nz.predicted_p);

    const auto sdd = tenkit::classify(tenkit::generate({3, 4, TensorClass::sdd_z, seed, 0.8}));
    CHECK(sdd.is_sdd);
    CHECK(sdd.is_z);

    CHECK(tenkit::is_z(tenkit::generate({2, 6, TensorClass::z_only, seed, 0.5})));

    const Tensor nn = tenkit::generate({3, 3, TensorClass::nonnegative, seed, 1.0});
    for (const double v : nn.values()) CHECK(v >= 0.0);
  }
}

TEST_CASE("sparse requests come out sparse") {
  const Tensor dense = tenkit::generate({2, 20, TensorClass::arbitrary, 7, 1.0});
  const Tensor sparse = tenkit::generate({2, 20, TensorClass::arbitrary, 7, 0.1});
  const auto nonzeros = [](const Tensor& t) {
    int c = 0;
    for (const double v : t.values())
      if (v != 0.0) ++c;
    return c;
  };
  CHECK(nonzeros(sparse) < nonzeros(dense) / 4);
}

TEST_CASE("nekrasov_z stays valid even with empty rows") {
  // Density low enough that some rows have no off-diagonal entry; their
  // diagonal falls back to 1 and the class still holds.
  const Tensor t = tenkit::generate({2, 8, TensorClass::nekrasov_z, 42, 0.05});
  const auto r = tenkit::classify(t);
  CHECK(r.is_nekrasov_z);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(tenkit::generate({1, 3, TensorClass::arbitrary, 0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(tenkit::generate({2, 0, TensorClass::arbitrary, 0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(tenkit::generate({2, 3, TensorClass::arbitrary, 0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(tenkit::generate({2, 3, TensorClass::arbitrary, 0, 1.5}), std::invalid_argument);
}
