// Copyright 2026 The QRS Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qrs/states.hpp"
#include "test_support.hpp"

using namespace qrs;
using doctest::Approx;

TEST_CASE("Bell states") {
  const ComplexMatrix singlet = bell_state(BellIndex::kPsiMinus);
  CHECK(max_abs_diff(singlet * singlet, singlet) < 1e-15);
  CHECK(std::abs(singlet.trace() - 1.0) < 1e-15);
  CHECK(max_abs_diff(partial_trace(singlet, Subsystem::kFirst), 0.5 * ComplexMatrix::identity(2)) < 1e-15);
  CHECK(max_abs_diff(partial_trace(singlet, Subsystem::kSecond), 0.5 * ComplexMatrix::identity(2)) < 1e-15);

  // Antisymmetry: SWAP |Psi-> = -|Psi->.
  const auto ket = bell_ket(BellIndex::kPsiMinus);
  const ComplexMatrix swap = swap_operator();
  for (int r = 0; r < 4; ++r) {
    Complex swapped = 0.0;
    for (int c = 0; c < 4; ++c) swapped += swap(r, c) * ket[c];
    CHECK(std::abs(swapped + ket[r]) < 1e-15);
  }
  CHECK(max_abs_diff(swap * singlet * swap, singlet) < 1e-15);

  CHECK(std::abs(trace_product(singlet, bell_state(BellIndex::kPhiPlus))) < 1e-15);
  const std::array<BellIndex, 4> all = {BellIndex::kPsiMinus, BellIndex::kPsiPlus, BellIndex::kPhiMinus,
                                        BellIndex::kPhiPlus};
  ComplexMatrix sum(4);
  for (BellIndex a : all) {
    sum += bell_state(a);
    CHECK(eig_hermitian(bell_state(a))[1] == Approx(0.0).epsilon(1e-12));
  }
  CHECK(max_abs_diff(sum, ComplexMatrix::identity(4)) < 1e-15);
}

TEST_CASE("Werner states") {
  CHECK(max_abs_diff(werner_state(1.0), bell_state(BellIndex::kPsiMinus)) < 1e-15);
  CHECK(max_abs_diff(werner_state(0.0), 0.25 * ComplexMatrix::identity(4)) < 1e-15);
  const auto ev = eig_hermitian(werner_state(0.698));
  CHECK(ev[0] == Approx(0.7735).epsilon(1e-12));
  CHECK(ev[3] == Approx(0.0755).epsilon(1e-12));
  CHECK_THROWS_AS(werner_state(-0.1), Error);
  CHECK_THROWS_AS(werner_state(1.01), Error);

  for (int i = 0; i <= 100; ++i) {
    const double w = i / 100.0;
    const ComplexMatrix rho = werner_state(w);
    CHECK(is_density_matrix(rho).valid);
    CHECK(max_abs_diff(partial_trace(rho, Subsystem::kFirst), 0.5 * ComplexMatrix::identity(2)) < 1e-15);
    CHECK(max_abs_diff(partial_trace(rho, Subsystem::kSecond), 0.5 * ComplexMatrix::identity(2)) < 1e-15);
    // Singlet weight p = (1 + 3W)/4 reproduces the same state.
    const BellMixture mix = werner_from_bell_weights((1.0 + 3.0 * w) / 4.0);
    CHECK(max_abs_diff(mix.state, rho) < 1e-12);
    CHECK(mix.w == Approx(w).epsilon(1e-12));
  }
}

TEST_CASE("Bell-weight mixtures") {
  CHECK(werner_from_bell_weights(1.0).w == 1.0);
  CHECK(werner_from_bell_weights(0.25).w == 0.0);
  CHECK(werner_from_bell_weights(0.7735).w == Approx(0.698).epsilon(1e-12));
  CHECK_THROWS_AS(werner_from_bell_weights(0.2), Error);
  CHECK_THROWS_AS(werner_from_bell_weights(1.1), Error);
}

TEST_CASE("ideal referee ensemble") {
  const RefereeEnsemble e = referee_ideal();
  CHECK(e.at(3, 1) == BlochVector{0.0, 0.0, 1.0});
  for (const RefereeKey& key : referee_keys()) CHECK(e.at(key).norm() == 1.0);
  for (int j = 1; j <= 3; ++j) CHECK(e.at(j, 1) == -1.0 * e.at(j, -1));
  CHECK(max_abs_diff(referee_state(e, 1, 1), 0.5 * (ComplexMatrix::identity(2) + pauli(1))) < 1e-15);
  CHECK_THROWS_AS(referee_state(e, 4, 1), Error);
  CHECK_THROWS_AS(referee_state(e, 1, 0), Error);
}

TEST_CASE("referee states from Bloch vectors") {
  const RefereeEnsemble zero = depolarize_ensemble(referee_ideal(), 0.0);
  CHECK(max_abs_diff(referee_state(zero, 2, -1), 0.5 * ComplexMatrix::identity(2)) < 1e-15);

  auto vectors = referee_ideal().vectors();
  vectors[4] = {0.0, 0.0, 0.9};
  const auto ev = eig_hermitian(referee_state(testing::ensemble_from(vectors), 3, 1));
  CHECK(ev[0] == Approx(0.95).epsilon(1e-12));
  CHECK(ev[1] == Approx(0.05).epsilon(1e-12));
}

TEST_CASE("ensemble construction validates entries") {
  std::vector<std::pair<RefereeKey, BlochVector>> entries;
  for (const RefereeKey& key : referee_keys()) entries.emplace_back(key, BlochVector{});
  CHECK_NOTHROW(RefereeEnsemble::from_entries(entries));

  auto duplicate = entries;
  duplicate[1].first = duplicate[0].first;
  CHECK_THROWS_AS(RefereeEnsemble::from_entries(duplicate), Error);

  auto too_long = entries;
  too_long[2].second = {1.0, 0.1, 0.0};
  CHECK_THROWS_AS(RefereeEnsemble::from_entries(too_long), Error);

  entries.pop_back();
  CHECK_THROWS_AS(RefereeEnsemble::from_entries(entries), Error);
}

TEST_CASE("depolarizing and rotating ensembles") {
  const RefereeEnsemble ideal = referee_ideal();
  const RefereeEnsemble same = depolarize_ensemble(ideal, 1.0);
  CHECK(same.vectors() == ideal.vectors());
  for (const BlochVector& n : depolarize_ensemble(ideal, 0.0).vectors()) CHECK(n.norm() == 0.0);
  for (const BlochVector& n : depolarize_ensemble(ideal, 0.9).vectors()) CHECK(n.norm() == Approx(0.9));
  CHECK_THROWS_AS(depolarize_ensemble(ideal, 1.2), Error);

  const Rotation3 identity = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  CHECK(rotate_ensemble(ideal, identity).vectors() == ideal.vectors());
  const Rotation3 quarter_z = {{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}};
  CHECK((rotate_ensemble(ideal, quarter_z).at(1, 1) - BlochVector{0.0, 1.0, 0.0}).norm() < 1e-15);
  const Rotation3 reflection = {{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}};
  CHECK_THROWS_AS(rotate_ensemble(ideal, reflection), Error);
  const Rotation3 stretch = {{{2, 0, 0}, {0, 0.5, 0}, {0, 0, 1}}};
  CHECK_THROWS_AS(rotate_ensemble(ideal, stretch), Error);

  testing::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const RefereeEnsemble e = testing::random_perturbed_ensemble(rng);
    const Rotation3 r = testing::random_rotation(rng);
    const double eta = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const RefereeEnsemble a = depolarize_ensemble(rotate_ensemble(e, r), eta);
    const RefereeEnsemble b = rotate_ensemble(depolarize_ensemble(e, eta), r);
    for (const RefereeKey& key : referee_keys()) {
      CHECK((a.at(key) - b.at(key)).norm() < 1e-12);
      CHECK(rotate_ensemble(e, r).at(key).norm() == Approx(e.at(key).norm()).epsilon(1e-12));
    }
  }
}

TEST_CASE("pure-state fidelity") {
  const BlochVector m{0.0, 0.6, 0.8};
  CHECK(fidelity_pure(bloch_state(m), m) == Approx(1.0).epsilon(1e-12));
  CHECK(fidelity_pure(0.5 * ComplexMatrix::identity(2), m) == Approx(0.5));
  CHECK(fidelity_pure(bloch_state(0.974 * m), m) == Approx(0.987).epsilon(1e-12));
  CHECK_THROWS_AS(fidelity_pure(bloch_state(m), BlochVector{0.0, 0.0, 0.5}), Error);
  CHECK_THROWS_AS(fidelity_pure(pauli(3), m), Error);

  // Linear in rho, and equal to 1 only for the target itself.
  testing::Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const ComplexMatrix a = testing::random_density(rng, 2);
    const ComplexMatrix b = testing::random_density(rng, 2);
    const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const BlochVector target = testing::random_bloch(rng, true);
    CHECK(fidelity_pure(t * a + (1.0 - t) * b, target) ==
          Approx(t * fidelity_pure(a, target) + (1.0 - t) * fidelity_pure(b, target)).epsilon(1e-12));
    CHECK(fidelity_pure(a, target) < 1.0 - 1e-9);
  }
}
