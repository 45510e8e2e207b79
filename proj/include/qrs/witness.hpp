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

#ifndef QRS_WITNESS_HPP_
#define QRS_WITNESS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrs/game.hpp"
#include "qrs/qmath.hpp"
#include "qrs/states.hpp"

namespace qrs {

using SignTriple = std::array<int, 3>;

/// The eight sign triples in lexicographic order, (-1,-1,-1) first.
const std::array<SignTriple, 8>& sign_triples();

/// A(a) = sum_j a_j (n^(j,+) - n^(j,-)).
BlochVector a_vector(const RefereeEnsemble& ensemble, const SignTriple& a);

/// B = sum_j (n^(j,+) + n^(j,-)) / sqrt(3).
BlochVector b_vector(const RefereeEnsemble& ensemble);

/// Payoff operator on the referee's qubit seen by a hidden state when Alice
/// answers `a`: (A(a) - r B)·sigma - 2 sqrt(3) r·1. Its top eigenvalue is
/// |A(a) - r B| - 2 sqrt(3) r.
ComplexMatrix t_operator(const RefereeEnsemble& ensemble, const SignTriple& a, double r);

struct LhsBound {
  double value = 0.0;
  SignTriple worst{};
};

/// max_a lambda_max(T_a(r)); ties resolve to the lexicographically smallest a.
LhsBound lhs_bound_detail(const RefereeEnsemble& ensemble, double r);
double lhs_bound(const RefereeEnsemble& ensemble, double r);

/// Bisection bracket and tolerance for rstar_oracle.
inline constexpr double kRStarBracketHigh = 4.0;
inline constexpr double kRStarTolerance = 1e-10;

/// Least r >= 0 with lhs_bound(ensemble, r) <= 0. The returned value is the
/// upper end of the final bracket, so the bound there is never positive.
double rstar_oracle(const RefereeEnsemble& ensemble);

/// Same search on [0, bracket_high]; throws kCalibration when the bound is
/// still positive at bracket_high. For any valid ensemble the bound is
/// nonpositive from r = sqrt(3) on, so the default bracket never fails.
double rstar_oracle(const RefereeEnsemble& ensemble, double bracket_high);

/// Root of |A - rB| = 2 sqrt(3) r solved as a quadratic, maximized over a:
/// (-A·B + sqrt((A·B)^2 + A·A (12 - B·B))) / (12 - B·B).
double rstar_quadratic(const RefereeEnsemble& ensemble);

/// The closed form with denominators (3 - B·B), evaluated as written. It gives
/// 2 on the ideal ensemble where the soundness boundary is 1.
double rstar_printed(const RefereeEnsemble& ensemble);

/// max(rstar_oracle, 1): the game requires r >= 1.
double rstar_legal(const RefereeEnsemble& ensemble);

/// Tomography counts N(key, axis, outcome) for the referee's six states.
class CountRecord {
 public:
  void add(RefereeKey key, int axis, int outcome, std::int64_t count);
  std::int64_t count(RefereeKey key, int axis, int outcome) const;
  std::int64_t total(RefereeKey key, int axis) const;

  template <typename F>
  CountRecord transformed(F&& f) const {
    CountRecord out;
    for (std::size_t i = 0; i < counts_.size(); ++i) out.counts_[i] = f(counts_[i]);
    return out;
  }

 private:
  static int cell(RefereeKey key, int axis, int outcome);
  std::array<std::int64_t, 36> counts_{};
};

struct TomographyResult {
  BlochVector n;
  bool clipped = false;
};

/// Direct inversion n_i = (N+ - N-) / (N+ + N-), radially clipped to |n| <= 1.
TomographyResult bloch_from_counts(const CountRecord& record, RefereeKey key);

/// Reconstructs all six states; keys that needed clipping are appended to
/// `clipped_keys` when it is non-null.
RefereeEnsemble ensemble_from_counts(const CountRecord& record, std::vector<RefereeKey>* clipped_keys = nullptr);

/// Mean over the six keys of (1 + n·e_{j,s}) / 2.
double average_fidelity(const RefereeEnsemble& measured);

struct BootstrapResult {
  double mean = 0.0;
  double std_dev = 0.0;
  int trials = 0;
  int failures = 0;
};

/// Poisson-resamples every count, reconstructs, and recomputes rstar_oracle.
/// Trials that cannot be reconstructed or calibrated are excluded and counted.
BootstrapResult bootstrap_calibration(const CountRecord& record, int trials, std::uint64_t seed);

struct CalibrationReport {
  double r_star_oracle = 0.0;
  std::optional<double> r_star_printed;
  double r_star_legal = 1.0;
  SignTriple worst_assignment{};
  std::map<double, double> bound_at_r;
  double avg_fidelity = 0.0;
  std::vector<RefereeKey> clipped_keys;
  std::optional<BootstrapResult> bootstrap;
};

CalibrationReport calibrate(const RefereeEnsemble& ensemble, std::vector<RefereeKey> clipped_keys = {});

/// Maximal CHSH value of werner_state(W), from explicit correlators at
/// Alice {0, pi/2} and Bob {pi/4, -pi/4} in the z-x plane.
double chsh_werner(double w);

/// CHSH correlator E = Tr[rho (A(theta_a) ⊗ B(theta_b))] with observables
/// cos(theta) sigma_3 + sin(theta) sigma_1.
double chsh_correlator(const ComplexMatrix& state, double theta_a, double theta_b);

inline constexpr double kVertesiThreshold = 0.7056;
inline constexpr double kBellLocalThreshold = 0.6595;

enum class Regime {
  kUnsteerableByGame,
  kSteerableNoKnownBell,
  kSteerableOpenBellWindow,
  kBellViolating,
};

std::string to_string(Regime regime);

Regime regime_classify(double w, double r);

struct CovarianceResult {
  bool passed = false;
  double max_deviation = 0.0;
};

/// Compares every joint probability when the referee's states pass through
/// the channel with Kraus operators `kraus` against the original states with
/// Bob's click element replaced by (id ⊗ channel^*)(B_1).
CovarianceResult channel_covariance_check(const RefereeEnsemble& ensemble, std::span<const ComplexMatrix> kraus,
                                          const Strategy& strategy);

/// Referee ensemble after each state passes through the channel.
RefereeEnsemble apply_channel(const RefereeEnsemble& ensemble, std::span<const ComplexMatrix> kraus);

/// (id ⊗ channel^*)(E) for an operator E on Bob ⊗ referee.
ComplexMatrix dual_channel_on_second(const ComplexMatrix& effect, std::span<const ComplexMatrix> kraus);

}  // namespace qrs

#endif  // QRS_WITNESS_HPP_
