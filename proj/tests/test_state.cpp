// Copyright 2026 The otoclab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "otoclab/state.hpp"

#include <cmath>

#include "doctest.h"
#include "otoclab/circuits.hpp"
#include "otoclab/rng.hpp"
#include "otoclab/weyl.hpp"

using namespace otoclab;

namespace {

Vector random_state(std::size_t dim, Rng& rng) {
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i)
    v(i) = cdouble(rng.gaussian(), rng.gaussian());
  v.normalize();
  return v;
}

}  // namespace

TEST_CASE("epr_state basics") {
  const PureState epr2 = epr_state(2);
  CHECK(epr2.layout().total_dim() == 4);
  CHECK(std::abs(epr2.amplitudes()(0) - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(epr2.amplitudes()(3) - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(epr2.amplitudes()(1)) == 0.0);
  CHECK(std::abs(epr2.amplitudes()(2)) == 0.0);

  const PureState epr3 = epr_state(3);
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(std::abs(epr3.amplitudes()(j * 3 + j) - 1.0 / std::sqrt(3.0)) <
          1e-14);

  // Maximally mixed marginal: purity 1/d for d = 5.
  const PureState epr5 = epr_state(5);
  const DensityMatrix left = reduced_density(epr5, {"L"});
  CHECK(left.purity() == doctest::Approx(0.2).epsilon(1e-12));

  CHECK_THROWS_AS(epr_state(1), std::invalid_argument);
}

TEST_CASE("apply_on identity, X and CZ") {
  SystemLayout layout({{"q0", 2}, {"q1", 2}});
  Vector amps = Vector::Zero(4);
  amps(0) = 1.0;
  PureState psi(layout, amps);

  const PureState same = apply_on(psi, Matrix::Identity(4, 4), {"q0", "q1"});
  CHECK((same.amplitudes() - psi.amplitudes()).norm() < 1e-14);

  const PureState flipped = apply_on(psi, weyl_x(2), {"q0"});
  CHECK(std::abs(flipped.amplitudes()(2) - 1.0) < 1e-14);  // |10>

  Vector ones = Vector::Zero(4);
  ones(3) = 1.0;
  PureState psi11(layout, ones);
  Matrix cz = Matrix::Identity(4, 4);
  cz(3, 3) = -1.0;
  const PureState signed11 = apply_on(psi11, cz, {"q0", "q1"});
  CHECK(std::abs(signed11.amplitudes()(3) + 1.0) < 1e-14);

  CHECK_THROWS_AS(apply_on(psi, Matrix::Identity(3, 3), {"q0"}),
                  std::invalid_argument);
}

TEST_CASE("apply_on with reordered targets matches embedded operator") {
  Rng rng(7);
  SystemLayout layout({{"a", 2}, {"b", 3}, {"c", 2}});
  Vector v = random_state(12, rng);
  PureState psi(layout, v);
  // Random operator on (c, b) in that slot order.
  Matrix op(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) op(i, j) = cdouble(rng.gaussian(), rng.gaussian());
  const PureState direct = apply_on(psi, op, {"c", "b"});
  const Matrix embedded = embed_operator(layout, op, {"c", "b"});
  const Vector expect = embedded * v;
  CHECK((direct.amplitudes() - expect).norm() < 1e-12);
}

TEST_CASE("partial_trace basics") {
  const PureState epr2 = epr_state(2);
  const DensityMatrix rho = to_density(epr2);
  const DensityMatrix half = partial_trace(rho, {"L"});
  CHECK(approx_equal(half.matrix(), Matrix::Identity(2, 2) / 2.0, 1e-14));

  // Tracing nothing away returns the input.
  const DensityMatrix full = partial_trace(rho, {"L", "R"});
  CHECK(approx_equal(full.matrix(), rho.matrix(), 1e-14));

  // Product state |01><01| reduces to |1><1| on the second register.
  SystemLayout layout({{"x", 2}, {"y", 2}});
  Vector v = Vector::Zero(4);
  v(1) = 1.0;  // |01>
  const DensityMatrix rho01 = to_density(PureState(layout, v));
  const DensityMatrix y = partial_trace(rho01, {"y"});
  Matrix expect = Matrix::Zero(2, 2);
  expect(1, 1) = 1.0;
  CHECK(approx_equal(y.matrix(), expect, 1e-14));

  CHECK_THROWS_AS(partial_trace(rho, {}), std::invalid_argument);
}

TEST_CASE("partial trace composes over regions") {
  Rng rng(21);
  SystemLayout layout({{"x", 2}, {"y", 3}, {"z", 2}});
  for (int trial = 0; trial < 20; ++trial) {
    const PureState psi(layout, random_state(12, rng));
    const DensityMatrix rho = to_density(psi);
    const DensityMatrix direct = partial_trace(rho, {"z"});
    const DensityMatrix stepwise =
        partial_trace(partial_trace(rho, {"y", "z"}), {"z"});
    CHECK(approx_equal(direct.matrix(), stepwise.matrix(), 1e-12));
  }
}

TEST_CASE("epr projector axioms") {
  SystemLayout layout({{"a", 2}, {"m", 2}, {"b", 2}, {"n", 2}});
  const Matrix pi = epr_projector(layout, "a", "b");
  CHECK(approx_equal(pi * pi, pi, 1e-12));
  CHECK(approx_equal(pi, pi.adjoint(), 1e-12));
  // Rank 1 times the dim of the identity factor.
  CHECK(std::abs(pi.trace().real() - 4.0) < 1e-12);

  // <EPR|Pi|EPR> = 1.
  const PureState epr = epr_state(2, "a", "b");
  const PureState rest = epr_state(2, "m", "n");
  PureState joint = tensor(epr, rest);
  joint = permute_registers(joint, {"a", "m", "b", "n"});
  CHECK(epr_probability(joint, "a", "b") == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("permutations invert and preserve observables") {
  Rng rng(5);
  SystemLayout layout({{"u", 2}, {"v", 2}, {"w", 3}});
  for (int trial = 0; trial < 25; ++trial) {
    const PureState psi(layout, random_state(12, rng));
    const PureState moved = permute_registers(psi, {"w", "u", "v"});
    const PureState back = permute_registers(moved, {"u", "v", "w"});
    CHECK((back.amplitudes() - psi.amplitudes()).norm() < 1e-13);
    // Identity permutation is the identity.
    const PureState same = permute_registers(psi, {"u", "v", "w"});
    CHECK((same.amplitudes() - psi.amplitudes()).norm() < 1e-13);
  }
  // Swapping the two legs of an EPR pair is a symmetry.
  const PureState epr = epr_state(3, "p", "q");
  const PureState swapped = permute_registers(epr, {"q", "p"});
  CHECK((swapped.amplitudes() - epr.amplitudes()).norm() < 1e-13);
}

TEST_CASE("EPR ricochet identities") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix u = haar_sample(3, rng.next_u64());
    const PureState epr = epr_state(3);
    // (U ⊗ U*)|EPR> = |EPR>
    PureState lhs = apply_on(epr, u, {"L"});
    lhs = apply_on(lhs, u.conjugate(), {"R"});
    CHECK((lhs.amplitudes() - epr.amplitudes()).norm() < 1e-12);
    // (U ⊗ I)|EPR> = (I ⊗ U^T)|EPR>
    const PureState a = apply_on(epr, u, {"L"});
    const PureState b = apply_on(epr, u.transpose(), {"R"});
    CHECK((a.amplitudes() - b.amplitudes()).norm() < 1e-12);
  }
}

TEST_CASE("project_pair consistency with full projector") {
  Rng rng(13);
  SystemLayout layout({{"a", 2}, {"b", 2}, {"c", 2}});
  for (int trial = 0; trial < 10; ++trial) {
    const PureState psi(layout, random_state(8, rng));
    const double p_fast = epr_probability(psi, "a", "c");
    const Matrix pi = epr_projector(layout, "a", "c");
    const double p_full =
        std::real(psi.amplitudes().dot(pi * psi.amplitudes()));
    CHECK(p_fast == doctest::Approx(p_full).epsilon(1e-12));

    const PureState projected =
        apply_pair_projector(psi, "a", "c", epr_pair_coefficients(2));
    CHECK((projected.amplitudes() - pi * psi.amplitudes()).norm() < 1e-12);
  }
}

TEST_CASE("merge and split are inverse relabellings") {
  Rng rng(3);
  SystemLayout layout({{"a", 2}, {"b", 3}, {"c", 2}});
  const PureState psi(layout, random_state(12, rng));
  const PureState merged = merge_registers(psi, {"a", "b"}, "ab");
  CHECK(merged.layout().dim_of("ab") == 6);
  const PureState back = split_register(merged, "ab", {{"a", 2}, {"b", 3}});
  CHECK(back.layout() == layout);
  CHECK((back.amplitudes() - psi.amplitudes()).norm() == 0.0);
  CHECK_THROWS_AS(merge_registers(psi, {"b", "a"}, "ba"),
                  std::invalid_argument);
}

TEST_CASE("unnormalized states are flagged and public returns normalized") {
  SystemLayout layout({{"a", 2}});
  Vector v(2);
  v << 0.5, 0.0;
  CHECK_THROWS_AS(PureState(layout, v), std::invalid_argument);
  const PureState flagged(layout, v, /*allow_unnormalized=*/true);
  CHECK(flagged.flagged_unnormalized());
  CHECK(flagged.normalized().norm() == doctest::Approx(1.0).epsilon(1e-14));
}
