#include "tenkit/classify.hpp"

#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "tenkit/generate.hpp"
#include "tenkit/rng.hpp"
#include "tenkit/tensor.hpp"

using tenkit::Tensor;
using tenkit::Tristate;
using tenkit::Vector;

TEST_CASE("row excess of the fixture is exact") {
  const Vector r = tenkit::row_excess(helpers::example_tensor());
  CHECK(r[0] == 6.0);
  CHECK(r[1] == 4.0);
  CHECK(r[2] == 1.0);
  CHECK(r[3] == 9.0);
}

TEST_CASE("lambda recursion on the fixture") {
  const auto p = tenkit::nekrasov_profile(helpers::example_tensor());
  CHECK(p.lambda[0] == 6.0);
  CHECK(p.lambda[1] == 3.75);
  // Row 3's only off-diagonal entry has tail (2,2,2), so its weight collapses
  // to lambda_2 / t_2222 = 3.75 / 3.8 = 75/76.
  CHECK(p.lambda[2] == doctest::Approx(75.0 / 76.0).epsilon(1e-13));
  CHECK(p.lambda[3] == 9.0);
  for (bool strict : p.per_row_strict) CHECK(strict);
  CHECK(p.zero_diagonal_row == -1);
}

TEST_CASE("nekrasov profile rejects zero diagonals") {
  Tensor t = helpers::example_tensor();
  t.set({1, 1, 1, 1}, 0.0);
  CHECK_THROWS_AS(tenkit::nekrasov_profile(t), std::invalid_argument);
  const auto report = tenkit::classify(t);
  CHECK(report.zero_diagonal);
  CHECK_FALSE(report.is_nekrasov);
  CHECK(report.profile.zero_diagonal_row == 1);
  CHECK(report.profile.lambda.size() == 0);
}

TEST_CASE("z detection and witness") {
  std::vector<int> witness;
  CHECK(tenkit::is_z(helpers::example_tensor(), &witness));

  Tensor t = helpers::example_tensor();
  t.set({0, 2, 1, 0}, 0.25);
  CHECK_FALSE(tenkit::is_z(t, &witness));
  CHECK(witness == std::vector<int>{0, 2, 1, 0});

  // A positive diagonal entry is fine; a negative one is too.
  Tensor d = helpers::example_tensor();
  d.set({2, 2, 2, 2}, -3.0);
  CHECK(tenkit::is_z(d));
}

TEST_CASE("diagonal dominance: strict is exact, non-strict has relative slack") {
  Tensor t(2, 2);
  t.set({0, 0}, 1.0);
  t.set({0, 1}, -1.0);
  t.set({1, 1}, 5.0);
  CHECK(tenkit::is_diag_dominant(t, false));
  CHECK_FALSE(tenkit::is_diag_dominant(t, true));

  t.set({0, 0}, 1.0 - 1e-15);  // inside the relative slack
  CHECK(tenkit::is_diag_dominant(t, false));
  t.set({0, 0}, 1.0 - 1e-9);  // outside it
  int row = -1;
  CHECK_FALSE(tenkit::is_diag_dominant(t, false, &row));
  CHECK(row == 0);
}

TEST_CASE("fixture classification flags") {
  const auto r = tenkit::classify(helpers::example_tensor());
  CHECK(r.is_z);
  CHECK_FALSE(r.is_dd);
  CHECK_FALSE(r.is_sdd);
  CHECK(r.is_nekrasov);
  CHECK(r.is_nekrasov_z);
  CHECK(r.positive_diagonal);
  CHECK(r.even_order);
  CHECK(r.predicted_p);
  CHECK_FALSE(r.zero_diagonal);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->predicate == "dd");
  CHECK(r.witness->index == std::vector<int>{1});
}

TEST_CASE("shrinking one diagonal entry below its lambda breaks the class") {
  Tensor t = helpers::example_tensor();
  t.set({1, 1, 1, 1}, 3.7);  // lambda_2 stays 3.75
  CHECK_FALSE(tenkit::is_nekrasov(t));
  const auto r = tenkit::classify(t);
  CHECK_FALSE(r.is_nekrasov_z);
  CHECK_FALSE(r.predicted_p);
  // Plain dominance fails first (3.7 < 4), so the witness reports that.
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->predicate == "dd");
  CHECK(r.witness->index == std::vector<int>{1});
  // The other rows still clear their (re-weighted) bounds.
  const auto p = tenkit::nekrasov_profile(t);
  CHECK(p.per_row_strict[0]);
  CHECK_FALSE(p.per_row_strict[1]);
  CHECK(p.per_row_strict[2]);
  CHECK(p.per_row_strict[3]);
}

TEST_CASE("order-2 predicates collapse to the matrix definitions") {
  tenkit::Rng rng(424242);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(1, 6);
    tenkit::Matrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-2.0, 2.0);
    for (int i = 0; i < n; ++i) {
      const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
      a(i, i) = sign * rng.uniform(0.1, 2.5);
    }
    const Tensor t = helpers::matrix_tensor(a);

    const Vector r = tenkit::row_excess(t);
    const Vector r_ref = helpers::matrix_row_excess(a);
    CHECK((r - r_ref).lpNorm<Eigen::Infinity>() <= 1e-14 * (1.0 + r_ref.lpNorm<Eigen::Infinity>()));

    const auto p = tenkit::nekrasov_profile(t);
    const Vector lam_ref = helpers::matrix_lambda(a);
    CHECK((p.lambda - lam_ref).lpNorm<Eigen::Infinity>() <=
          1e-12 * (1.0 + lam_ref.lpNorm<Eigen::Infinity>()));

    CHECK(tenkit::is_z(t) == helpers::matrix_is_z(a));
    CHECK(tenkit::is_diag_dominant(t, true) == helpers::matrix_dd(a, true));
  }
}

TEST_CASE("lambda never exceeds row excess") {
  // Each weight (lambda_j/|t_jj|)^{1/(m-1)} multiplying a tail entry is <= 1
  // whenever earlier rows are dominant, so lambda_i <= R_i row by row.
  tenkit::Rng rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 * rng.uniform_int(1, 2);
    const int n = rng.uniform_int(2, 5);
    const Tensor t = tenkit::generate({m, n, tenkit::TensorClass::sdd_z,
                                       static_cast<std::uint64_t>(9000 + trial), 1.0});
    const auto p = tenkit::nekrasov_profile(t);
    const Vector r = tenkit::row_excess(t);
    for (int i = 0; i < n; ++i) CHECK(p.lambda[i] <= r[i] + 1e-12 * (1.0 + r[i]));
  }
}

TEST_CASE("comparison tensor preserves the profile") {
  Tensor t = helpers::example_tensor();
  t.set({0, 2, 1, 0}, 0.25);  // make it non-Z so the comparison changes something
  const Tensor c = tenkit::comparison_tensor(t);
  const auto pt = tenkit::nekrasov_profile(t);
  const auto pc = tenkit::nekrasov_profile(c);
  CHECK((pt.lambda - pc.lambda).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((pt.row_excess - pc.row_excess).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("spectral radius of the all-ones tensor") {
  const auto est2 = tenkit::spectral_radius_nonneg(helpers::all_ones(2, 4));
  CHECK(est2.converged);
  CHECK(est2.value == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(est2.upper - est2.lower <= 1e-10 * 4.0);

  // Order 3: every component of T x^{m-1} at x = 1 is n^{m-1}.
  const auto est3 = tenkit::spectral_radius_nonneg(helpers::all_ones(3, 4));
  CHECK(est3.converged);
  CHECK(est3.value == doctest::Approx(16.0).epsilon(1e-10));
}

TEST_CASE("spectral radius matches the dense eigensolver on positive matrices") {
  tenkit::Rng rng(31415);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform_int(2, 6);
    tenkit::Matrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(0.1, 2.0);
    const auto est = tenkit::spectral_radius_nonneg(helpers::matrix_tensor(a));
    REQUIRE(est.converged);
    const double ref = helpers::matrix_rho(a);
    CHECK(est.value == doctest::Approx(ref).epsilon(1e-8));
    CHECK(est.lower <= ref + 1e-8);
    CHECK(est.upper >= ref - 1e-8);
  }
}

TEST_CASE("support shrinkage handles the reducible diagonal matrix") {
  Tensor t(2, 2);
  t.set({0, 0}, 2.0);
  t.set({1, 1}, 3.0);
  const auto est = tenkit::spectral_radius_nonneg(t);
  REQUIRE(est.converged);
  CHECK(est.value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(est.eigenvector[0] == 0.0);  // pruned index reported as exactly zero
  CHECK(est.eigenvector[1] > 0.0);
}

TEST_CASE("bracket trace narrows monotonically on a positive tensor") {
  tenkit::Rng rng(777);
  const Tensor t = helpers::random_tensor(rng, 3, 3, 0.5, 1.5);
  const auto est = tenkit::spectral_radius_nonneg(t, 1e-10, 100000, true);
  REQUIRE(est.converged);
  REQUIRE(est.trace.size() >= 2);
  for (std::size_t k = 1; k < est.trace.size(); ++k) {
    CHECK(est.trace[k].first >= est.trace[k - 1].first - 1e-12);
    CHECK(est.trace[k].second <= est.trace[k - 1].second + 1e-12);
  }
}

TEST_CASE("spectral radius rejects negative entries") {
  Tensor t(2, 2);
  t.set({0, 1}, -1.0);
  CHECK_THROWS_AS(tenkit::spectral_radius_nonneg(t), std::invalid_argument);
}

TEST_CASE("m-tensor verdicts") {
  // Strictly dominant Z tensor with positive diagonal: nonsingular M.
  const Tensor sdd = tenkit::generate({3, 4, tenkit::TensorClass::sdd_z, 51, 1.0});
  const auto yes = tenkit::is_nonsingular_m(sdd);
  CHECK(yes.verdict == Tristate::yes);
  CHECK(yes.shift > yes.rho.value);

  // -I is a Z tensor but s = 0 < rho(B) = 1.
  const Tensor neg = -1.0 * tenkit::identity_tensor(2, 3);
  const auto no = tenkit::is_nonsingular_m(neg);
  CHECK(no.verdict == Tristate::no);
  CHECK_FALSE(no.z_failed);

  // A positive off-diagonal entry disqualifies immediately.
  Tensor notz(2, 2);
  notz.set({0, 0}, 5.0);
  notz.set({0, 1}, 1.0);
  notz.set({1, 1}, 5.0);
  const auto nz = tenkit::is_nonsingular_m(notz);
  CHECK(nz.verdict == Tristate::no);
  CHECK(nz.z_failed);

  // The fixture is already Z, so the H test reduces to the M test and passes.
  const auto h = tenkit::is_nonsingular_h(helpers::example_tensor());
  CHECK(h.verdict == Tristate::yes);
  CHECK(h.shift == 10.0);
  CHECK(h.rho.value < 10.0);
}

TEST_CASE("p falsifier clears the fixture and breaks constructed non-P tensors") {
  CHECK_FALSE(tenkit::p_falsify(helpers::example_tensor(), 2000, 1).has_value());

  const Tensor neg = -1.0 * tenkit::identity_tensor(4, 3);
  const auto wit = tenkit::p_falsify(neg, 2000, 1);
  REQUIRE(wit.has_value());
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < wit->x.size(); ++j) {
    if (wit->x[j] != 0.0) best = std::max(best, wit->products[j]);
  }
  CHECK(best <= 0.0);

  // Deterministic: same seed, same witness.
  const auto wit2 = tenkit::p_falsify(neg, 2000, 1);
  REQUIRE(wit2.has_value());
  CHECK(wit->x == wit2->x);

  CHECK_THROWS_AS(tenkit::p_falsify(neg, 0, 1), std::invalid_argument);
}

TEST_CASE("dimension-1 tensors classify by their single entry") {
  Tensor t(3, 1);
  t.set({0, 0, 0}, 2.0);
  const auto r = tenkit::classify(t);
  CHECK(r.is_z);
  CHECK(r.is_sdd);
  CHECK(r.is_nekrasov);
  CHECK(r.profile.lambda[0] == 0.0);
  CHECK_FALSE(r.witness.has_value());
}
