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

#ifndef QRS_GAME_HPP_
#define QRS_GAME_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "qrs/qmath.hpp"
#include "qrs/states.hpp"

namespace qrs {

/// A quantum-refereed steering game. Each run the referee draws a key
/// k = (j, s), tells Alice j and sends Bob the state for k. The payoff is
///
///   payoff_scale * sum_{(j, k)} g_{jk} <a_j b>_k
///
/// where rows listed in `constant_outputs` use a fixed real a_j instead of
/// Alice's reported outcome.
struct GameSpec {
  std::vector<int> alice_inputs;
  std::vector<RefereeKey> referee_keys;
  std::map<std::pair<int, RefereeKey>, double> coefficients;
  std::map<int, double> constant_outputs;
  double r = 1.0;
  double payoff_scale = 2.0;

  /// Throws kArgument when a coefficient references an unknown input or key,
  /// when a non-constant row is paired with a key for a different input, or
  /// when r < 0.
  void validate() const;
};

/// The six-key game: g_{j,(j,s)} = s for j = 1..3, the constant row j = 0 with
/// a_0 = -r/sqrt(3) and g = 1 for every key, overall factor 2.
GameSpec canonical_game(double r);

/// True if `spec` has exactly the coefficient layout of canonical_game(spec.r).
bool is_canonical(const GameSpec& spec);

/// Two-outcome measurement on Bob's qubit ⊗ the referee's qubit. b = 1 is the
/// `click` element.
struct BobPovm {
  ComplexMatrix no_click = ComplexMatrix(4);
  ComplexMatrix click = ComplexMatrix(4);
};

BobPovm singlet_projector_bc();

/// B_1(V) = V |Psi-><Psi-| + (1 - V) 1/2. V = 1 is a perfect singlet
/// projection, V = 0 fully distinguishable photons.
BobPovm partial_bsm_povm(double visibility);

/// Bob's POVM with the given click element; B_0 = 1 - B_1.
BobPovm povm_from_click(const ComplexMatrix& click);

/// Alice measures sigma_j on her half of `shared_state`; Bob applies `bob` to
/// his half and the referee's qubit.
struct HonestQuantum {
  ComplexMatrix shared_state = ComplexMatrix(4);
  BobPovm bob;
};

/// One hidden variable: Alice answers a_j deterministically, Bob holds the
/// qubit `hidden_state` and measures `bob_click` on it jointly with the
/// referee's qubit.
struct LhsDeterministic {
  std::array<int, 3> alice_outputs{1, 1, 1};
  BlochVector hidden_state;
  ComplexMatrix bob_click = ComplexMatrix(4);
};

struct LhsComponent {
  double weight = 1.0;
  std::array<double, 3> p_alice_plus{0.5, 0.5, 0.5};
  BlochVector hidden_state;
  ComplexMatrix bob_click = ComplexMatrix(4);
};

/// A finite local-hidden-state model with stochastic Alice responses.
struct CustomLocal {
  std::vector<LhsComponent> components;
};

using Strategy = std::variant<HonestQuantum, LhsDeterministic, CustomLocal>;

/// Joint outcome distribution for one (Alice input, referee key) pair.
struct JointProbabilities {
  // Indexed [a == +1][b].
  std::array<std::array<double, 2>, 2> p{};

  double at(int a, int b) const { return p[a == 1 ? 1 : 0][b]; }
  double click() const { return p[0][1] + p[1][1]; }
  double correlation() const { return p[1][1] - p[0][1]; }
};

/// Throws kDomain if the strategy data is inconsistent.
void validate_strategy(const Strategy& strategy);

JointProbabilities joint_probabilities(const Strategy& strategy, const RefereeEnsemble& ensemble, int alice_input,
                                       RefereeKey key);

inline JointProbabilities joint_probabilities(const Strategy& strategy, const RefereeEnsemble& ensemble, int j,
                                              int s) {
  return joint_probabilities(strategy, ensemble, j, RefereeKey{j, s});
}

double exact_payoff(const GameSpec& spec, const Strategy& strategy, const RefereeEnsemble& ensemble);

/// Counts N(j, s, a, b) over runs.
class TallyTable {
 public:
  void add(RefereeKey key, int a, int b, std::int64_t count);
  std::int64_t count(RefereeKey key, int a, int b) const;
  std::int64_t total(RefereeKey key) const;
  std::int64_t total() const;

  /// Cellwise sum; associative and commutative.
  TallyTable& merge(const TallyTable& other);

  friend bool operator==(const TallyTable&, const TallyTable&) = default;

 private:
  static int cell(RefereeKey key, int a, int b);
  std::array<std::int64_t, 24> counts_{};
};

/// Samples `n_per_setting` runs for every key of `spec`. Each key draws from
/// its own substream derived from `seed`, so the result does not depend on how
/// settings are scheduled across threads.
TallyTable simulate_runs(const GameSpec& spec, const Strategy& strategy, const RefereeEnsemble& ensemble,
                         std::int64_t n_per_setting, std::uint64_t seed);

struct PayoffEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::map<RefereeKey, std::int64_t> n_per_setting;
};

/// Plug-in estimate of the payoff from empirical averages. The standard error
/// propagates per-setting multinomial variances to first order with the
/// per-setting totals held fixed.
PayoffEstimate estimate_payoff(const GameSpec& spec, const TallyTable& tallies);

struct LhsOptimum {
  std::array<int, 3> assignment{};
  BlochVector hidden_state;
  double payoff = 0.0;

  /// A deterministic LHS strategy that attains `payoff` exactly.
  LhsDeterministic strategy() const;
};

/// Best single-hidden-variable cheating strategy for a canonical game.
LhsOptimum lhs_best_deterministic(const GameSpec& spec, const RefereeEnsemble& ensemble);

}  // namespace qrs

#endif  // QRS_GAME_HPP_
