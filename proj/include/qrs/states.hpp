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

#ifndef QRS_STATES_HPP_
#define QRS_STATES_HPP_

#include <array>
#include <utility>
#include <vector>

#include "qrs/qmath.hpp"

// Basis convention shared by every module: the computational basis is the
// sigma_3 eigenbasis (|0> has sigma_3 = +1) and two-qubit kets are ordered
// first ⊗ second, so |Psi-> = (|01> - |10>) / sqrt(2).

namespace qrs {

enum class BellIndex { kPsiMinus, kPsiPlus, kPhiMinus, kPhiPlus };

/// Label of one referee state: Pauli axis j in {1,2,3} and eigenvalue sign s.
struct RefereeKey {
  int j = 1;
  int s = 1;

  friend bool operator==(const RefereeKey&, const RefereeKey&) = default;
  friend auto operator<=>(const RefereeKey&, const RefereeKey&) = default;
};

/// The six keys in canonical order (1,+1), (1,-1), (2,+1), ..., (3,-1).
const std::array<RefereeKey, 6>& referee_keys();

/// Index of a key in referee_keys(); throws on an invalid key.
int key_index(RefereeKey key);

/// Bloch vectors of the six states the referee actually sends.
class RefereeEnsemble {
 public:
  /// Requires exactly one entry per key, each of norm <= 1 (+ tolerance).
  static RefereeEnsemble from_entries(const std::vector<std::pair<RefereeKey, BlochVector>>& entries);

  const BlochVector& at(RefereeKey key) const { return vectors_[key_index(key)]; }
  const BlochVector& at(int j, int s) const { return at(RefereeKey{j, s}); }
  const std::array<BlochVector, 6>& vectors() const { return vectors_; }

 private:
  explicit RefereeEnsemble(const std::array<BlochVector, 6>& vectors) : vectors_(vectors) {}
  std::array<BlochVector, 6> vectors_;
};

using Rotation3 = std::array<std::array<double, 3>, 3>;

std::vector<Complex> bell_ket(BellIndex idx);
ComplexMatrix bell_state(BellIndex idx);

/// Operator exchanging the two qubits of a 4-dimensional space.
ComplexMatrix swap_operator();

/// W |Psi-><Psi-| + (1 - W) 1/4 for 0 <= W <= 1.
ComplexMatrix werner_state(double w);

struct BellMixture {
  ComplexMatrix state;
  double w;
};

/// Singlet weight p plus three equal triplet weights (1 - p) / 3.
BellMixture werner_from_bell_weights(double p_singlet);

RefereeEnsemble referee_ideal();
ComplexMatrix referee_state(const RefereeEnsemble& e, int j, int s);
RefereeEnsemble depolarize_ensemble(const RefereeEnsemble& e, double eta);
RefereeEnsemble rotate_ensemble(const RefereeEnsemble& e, const Rotation3& rotation);

/// <psi_m| rho |psi_m> for the pure qubit state with unit Bloch vector m.
double fidelity_pure(const ComplexMatrix& rho, const BlochVector& target);

}  // namespace qrs

#endif  // QRS_STATES_HPP_
