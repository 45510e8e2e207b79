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

#include "qrs/game.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <sstream>
#include <type_traits>

#include "qrs/witness.hpp"

namespace qrs {
namespace {

const double kSqrt3 = std::sqrt(3.0);

std::string key_name(RefereeKey key) {
  std::ostringstream out;
  out << "(" << key.j << "," << (key.s > 0 ? "+1" : "-1") << ")";
  return out.str();
}

void validate_click(const ComplexMatrix& click, const char* what) {
  if (click.dim() != 4) {
    throw Error(ErrorCode::kDomain, std::string(what) + " must act on two qubits");
  }
  if (click.hermitian_error() > tolerance::kHermitian) {
    throw Error(ErrorCode::kDomain, std::string(what) + " is not Hermitian");
  }
  const auto eig = eig_hermitian(click);
  if (eig.back() < -tolerance::kPsd || eig.front() > 1.0 + tolerance::kPsd) {
    throw Error(ErrorCode::kDomain, std::string(what) + " has eigenvalues outside [0, 1]");
  }
}

void validate_hidden_state(const BlochVector& n) {
  if (!(n.norm() <= 1.0 + tolerance::kBlochNorm)) {
    throw Error(ErrorCode::kDomain, "hidden state Bloch vector has norm > 1");
  }
}

// Unnormalized conditional state of Bob's qubit after Alice measures sigma_j
// with outcome a: Tr_A[(P_a ⊗ 1) rho].
ComplexMatrix steered_state(const ComplexMatrix& shared, int j, int a) {
  const ComplexMatrix proj = 0.5 * (ComplexMatrix::identity(2) + static_cast<double>(a) * pauli(j));
  return partial_trace(tensor(proj, ComplexMatrix::identity(2)) * shared, Subsystem::kFirst);
}

double click_probability(const ComplexMatrix& click, const ComplexMatrix& bob, const ComplexMatrix& referee) {
  return trace_product(click, tensor(bob, referee)).real();
}

void require_alice_input(int j) {
  if (j < 1 || j > 3) {
    throw Error(ErrorCode::kArgument, "Alice's input must be 1, 2 or 3, got " + std::to_string(j));
  }
}

// Per-run coefficients of a*b and b for one key: X = scale * b * (c_ab a + c_b).
struct KeyCoefficients {
  double c_ab = 0.0;
  double c_b = 0.0;
};

KeyCoefficients key_coefficients(const GameSpec& spec, RefereeKey key) {
  KeyCoefficients c;
  for (const auto& [jk, g] : spec.coefficients) {
    if (jk.second != key) continue;
    if (auto it = spec.constant_outputs.find(jk.first); it != spec.constant_outputs.end()) {
      c.c_b += g * it->second;
    } else {
      c.c_ab += g;
    }
  }
  return c;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

void GameSpec::validate() const {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::kArgument, "calibration parameter r must be a finite value >= 0");
  }
  for (const auto& [jk, g] : coefficients) {
    const auto& [j, key] = jk;
    if (std::find(alice_inputs.begin(), alice_inputs.end(), j) == alice_inputs.end()) {
      throw Error(ErrorCode::kArgument, "coefficient references unknown input " + std::to_string(j));
    }
    if (std::find(referee_keys.begin(), referee_keys.end(), key) == referee_keys.end()) {
      throw Error(ErrorCode::kArgument, "coefficient references unknown key " + key_name(key));
    }
    if (!constant_outputs.contains(j) && key.j != j) {
      throw Error(ErrorCode::kArgument, "input " + std::to_string(j) + " is never asked together with key " +
                                            key_name(key));
    }
    if (!std::isfinite(g)) throw Error(ErrorCode::kArgument, "non-finite coefficient");
  }
}

GameSpec canonical_game(double r) {
  if (!(r >= 0.0)) {
    std::ostringstream msg;
    msg << "calibration parameter r must be >= 0, got " << r;
    throw Error(ErrorCode::kArgument, msg.str());
  }
  GameSpec spec;
  spec.alice_inputs = {0, 1, 2, 3};
  spec.referee_keys.assign(referee_keys().begin(), referee_keys().end());
  spec.constant_outputs[0] = -r / kSqrt3;
  for (const RefereeKey& key : referee_keys()) {
    spec.coefficients[{key.j, key}] = key.s;
    spec.coefficients[{0, key}] = 1.0;
  }
  spec.r = r;
  spec.payoff_scale = 2.0;
  return spec;
}

bool is_canonical(const GameSpec& spec) {
  if (!(spec.r >= 0.0)) return false;
  const GameSpec reference = canonical_game(spec.r);
  if (spec.coefficients != reference.coefficients || spec.payoff_scale != reference.payoff_scale) return false;
  if (spec.constant_outputs.size() != 1 || !spec.constant_outputs.contains(0)) return false;
  if (std::abs(spec.constant_outputs.at(0) - reference.constant_outputs.at(0)) > 1e-15) return false;
  auto keys = spec.referee_keys;
  std::sort(keys.begin(), keys.end());
  auto ref_keys = reference.referee_keys;
  std::sort(ref_keys.begin(), ref_keys.end());
  return keys == ref_keys;
}

BobPovm singlet_projector_bc() { return povm_from_click(bell_state(BellIndex::kPsiMinus)); }

BobPovm partial_bsm_povm(double visibility) {
  if (!(visibility >= 0.0 && visibility <= 1.0)) {
    std::ostringstream msg;
    msg << "visibility must lie in [0, 1], got " << visibility;
    throw Error(ErrorCode::kArgument, msg.str());
  }
  return povm_from_click(visibility * bell_state(BellIndex::kPsiMinus) +
                         (0.5 * (1.0 - visibility)) * ComplexMatrix::identity(4));
}

BobPovm povm_from_click(const ComplexMatrix& click) {
  validate_click(click, "POVM click element");
  return {ComplexMatrix::identity(4) - click, click};
}

void validate_strategy(const Strategy& strategy) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HonestQuantum>) {
          if (s.shared_state.dim() != 4) throw Error(ErrorCode::kDomain, "shared state must be two-qubit");
          const DensityCheck check = is_density_matrix(s.shared_state);
          if (!check.valid) throw Error(ErrorCode::kDomain, "shared state is not a density matrix: " + check.reason);
          validate_click(s.bob.click, "Bob's B_1");
          validate_click(s.bob.no_click, "Bob's B_0");
          if (max_abs_diff(s.bob.click + s.bob.no_click, ComplexMatrix::identity(4)) > tolerance::kHermitian) {
            throw Error(ErrorCode::kDomain, "Bob's POVM elements do not sum to identity");
          }
        } else if constexpr (std::is_same_v<T, LhsDeterministic>) {
          for (int a : s.alice_outputs) {
            if (a != 1 && a != -1) throw Error(ErrorCode::kDomain, "deterministic Alice outputs must be +1 or -1");
          }
          validate_hidden_state(s.hidden_state);
          validate_click(s.bob_click, "Bob's B_1");
        } else {
          if (s.components.empty()) throw Error(ErrorCode::kDomain, "local model has no components");
          double total = 0.0;
          for (const LhsComponent& c : s.components) {
            if (!(c.weight >= 0.0)) throw Error(ErrorCode::kDomain, "negative hidden-variable weight");
            for (double p : c.p_alice_plus) {
              if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kDomain, "Alice response probability outside [0, 1]");
            }
            validate_hidden_state(c.hidden_state);
            validate_click(c.bob_click, "Bob's B_1");
            total += c.weight;
          }
          if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorCode::kDomain, "hidden-variable weights do not sum to 1");
        }
      },
      strategy);
}

namespace {

// Joint probabilities for a strategy that has already been validated.
JointProbabilities joint_probabilities_unchecked(const Strategy& strategy, const RefereeEnsemble& ensemble,
                                                 int alice_input, RefereeKey key) {
  require_alice_input(alice_input);
  const ComplexMatrix omega = bloch_state(ensemble.at(key));
  JointProbabilities out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HonestQuantum>) {
          for (int a : {-1, 1}) {
            const ComplexMatrix bob = steered_state(s.shared_state, alice_input, a);
            const double p_a = bob.trace().real();
            const double p_click = click_probability(s.bob.click, bob, omega);
            out.p[a == 1][1] = p_click;
            out.p[a == 1][0] = p_a - p_click;
          }
        } else if constexpr (std::is_same_v<T, LhsDeterministic>) {
          const double p_click = click_probability(s.bob_click, bloch_state(s.hidden_state), omega);
          const int a = s.alice_outputs[alice_input - 1];
          out.p[a == 1][1] = p_click;
          out.p[a == 1][0] = 1.0 - p_click;
        } else {
          for (const LhsComponent& c : s.components) {
            const double p_click = click_probability(c.bob_click, bloch_state(c.hidden_state), omega);
            const double p_plus = c.p_alice_plus[alice_input - 1];
            out.p[1][1] += c.weight * p_plus * p_click;
            out.p[1][0] += c.weight * p_plus * (1.0 - p_click);
            out.p[0][1] += c.weight * (1.0 - p_plus) * p_click;
            out.p[0][0] += c.weight * (1.0 - p_plus) * (1.0 - p_click);
          }
        }
      },
      strategy);
  // Rounding can leave -1e-17 in a cell that is exactly zero.
  for (auto& row : out.p) {
    for (double& cell : row) cell = std::max(cell, 0.0);
  }
  return out;
}

}  // namespace

JointProbabilities joint_probabilities(const Strategy& strategy, const RefereeEnsemble& ensemble, int alice_input,
                                       RefereeKey key) {
  validate_strategy(strategy);
  return joint_probabilities_unchecked(strategy, ensemble, alice_input, key);
}

double exact_payoff(const GameSpec& spec, const Strategy& strategy, const RefereeEnsemble& ensemble) {
  spec.validate();
  validate_strategy(strategy);
  double total = 0.0;
  for (const RefereeKey& key : spec.referee_keys) {
    const KeyCoefficients c = key_coefficients(spec, key);
    if (c.c_ab == 0.0 && c.c_b == 0.0) continue;
    const JointProbabilities p = joint_probabilities_unchecked(strategy, ensemble, key.j, key);
    total += c.c_ab * p.correlation() + c.c_b * p.click();
  }
  return spec.payoff_scale * total;
}

int TallyTable::cell(RefereeKey key, int a, int b) {
  if (a != 1 && a != -1) throw Error(ErrorCode::kArgument, "Alice outcome must be +1 or -1");
  if (b != 0 && b != 1) throw Error(ErrorCode::kArgument, "Bob outcome must be 0 or 1");
  return 4 * key_index(key) + 2 * (a == 1 ? 1 : 0) + b;
}

void TallyTable::add(RefereeKey key, int a, int b, std::int64_t count) {
  if (count < 0) throw Error(ErrorCode::kArgument, "tally counts must be nonnegative");
  counts_[cell(key, a, b)] += count;
}

std::int64_t TallyTable::count(RefereeKey key, int a, int b) const { return counts_[cell(key, a, b)]; }

std::int64_t TallyTable::total(RefereeKey key) const {
  const int base = 4 * key_index(key);
  return counts_[base] + counts_[base + 1] + counts_[base + 2] + counts_[base + 3];
}

std::int64_t TallyTable::total() const {
  std::int64_t sum = 0;
  for (std::int64_t c : counts_) sum += c;
  return sum;
}

TallyTable& TallyTable::merge(const TallyTable& other) {
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  return *this;
}

TallyTable simulate_runs(const GameSpec& spec, const Strategy& strategy, const RefereeEnsemble& ensemble,
                         std::int64_t n_per_setting, std::uint64_t seed) {
  if (n_per_setting < 1) throw Error(ErrorCode::kArgument, "n_per_setting must be at least 1");
  spec.validate();
  validate_strategy(strategy);

  std::vector<std::future<TallyTable>> settings;
  for (std::size_t i = 0; i < spec.referee_keys.size(); ++i) {
    const RefereeKey key = spec.referee_keys[i];
    const JointProbabilities p = joint_probabilities_unchecked(strategy, ensemble, key.j, key);
    const std::uint64_t stream_seed = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(key_index(key)) + 1));
    settings.push_back(std::async(std::launch::async, [key, p, stream_seed, n_per_setting] {
      std::mt19937_64 rng(stream_seed);
      TallyTable t;
      // Multinomial draw over the four (a, b) cells as a chain of binomials.
      const std::array<std::pair<int, int>, 4> cells = {{{1, 1}, {-1, 1}, {1, 0}, {-1, 0}}};
      std::int64_t remaining = n_per_setting;
      double mass_left = 1.0;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto [a, b] = cells[c];
        std::int64_t drawn = remaining;
        if (c + 1 < cells.size()) {
          const double q = mass_left > 0.0 ? std::clamp(p.at(a, b) / mass_left, 0.0, 1.0) : 0.0;
          drawn = std::binomial_distribution<std::int64_t>(remaining, q)(rng);
          mass_left -= p.at(a, b);
        }
        t.add(key, a, b, drawn);
        remaining -= drawn;
      }
      return t;
    }));
  }
  TallyTable merged;
  for (auto& f : settings) merged.merge(f.get());
  return merged;
}

PayoffEstimate estimate_payoff(const GameSpec& spec, const TallyTable& tallies) {
  spec.validate();
  PayoffEstimate est;
  double variance = 0.0;
  for (const RefereeKey& key : spec.referee_keys) {
    const std::int64_t n = tallies.total(key);
    if (n == 0) {
      throw Error(ErrorCode::kEstimation, "no runs recorded for setting " + key_name(key));
    }
    est.n_per_setting[key] = n;
    const KeyCoefficients c = key_coefficients(spec, key);
    double mean = 0.0;
    double mean_sq = 0.0;
    for (int a : {-1, 1}) {
      const double x = spec.payoff_scale * (c.c_ab * a + c.c_b);
      const double freq = static_cast<double>(tallies.count(key, a, 1)) / static_cast<double>(n);
      mean += freq * x;
      mean_sq += freq * x * x;
    }
    est.value += mean;
    variance += std::max(mean_sq - mean * mean, 0.0) / static_cast<double>(n);
  }
  est.std_error = std::sqrt(variance);
  return est;
}

LhsDeterministic LhsOptimum::strategy() const {
  const ComplexMatrix pure = bloch_state(hidden_state);
  return LhsDeterministic{assignment, hidden_state, tensor(pure, pure)};
}

LhsOptimum lhs_best_deterministic(const GameSpec& spec, const RefereeEnsemble& ensemble) {
  if (!is_canonical(spec)) {
    throw Error(ErrorCode::kUnsupported, "best LHS strategy is only available for the canonical game");
  }
  LhsOptimum best;
  bool first = true;
  const BlochVector b = b_vector(ensemble);
  for (const SignTriple& a : sign_triples()) {
    const double value = eig_hermitian(t_operator(ensemble, a, spec.r)).front();
    if (first || value > best.payoff + 1e-12) {
      first = false;
      best.assignment = a;
      best.payoff = value;
      const BlochVector v = a_vector(ensemble, a) - spec.r * b;
      best.hidden_state = v.norm() > 0.0 ? (1.0 / v.norm()) * v : BlochVector{0.0, 0.0, 1.0};
    }
  }
  return best;
}

}  // namespace qrs
