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

#include "qrs/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace qrs {
namespace {

const double kSqrt3 = std::sqrt(3.0);

void require_r(double r) {
  if (!(r >= 0.0)) {
    std::ostringstream msg;
    msg << "calibration parameter r must be >= 0, got " << r;
    throw Error(ErrorCode::kArgument, msg.str());
  }
}

void require_axis(int axis) {
  if (axis < 1 || axis > 3) throw Error(ErrorCode::kArgument, "measurement axis must be 1, 2 or 3");
}

void require_kraus(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) throw Error(ErrorCode::kArgument, "channel needs at least one Kraus operator");
  ComplexMatrix sum(2);
  for (const ComplexMatrix& k : kraus) {
    if (k.dim() != 2) throw Error(ErrorCode::kArgument, "Kraus operators must be 2x2");
    sum += k.adjoint() * k;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(2)) > 1e-9) {
    throw Error(ErrorCode::kArgument, "Kraus operators are not trace preserving");
  }
}

ComplexMatrix observable(double theta) {
  return std::cos(theta) * pauli(3) + std::sin(theta) * pauli(1);
}

}  // namespace

const std::array<SignTriple, 8>& sign_triples() {
  static const std::array<SignTriple, 8> triples = [] {
    std::array<SignTriple, 8> t{};
    for (int i = 0; i < 8; ++i) {
      t[i] = {(i & 4) ? 1 : -1, (i & 2) ? 1 : -1, (i & 1) ? 1 : -1};
    }
    return t;
  }();
  return triples;
}

BlochVector a_vector(const RefereeEnsemble& ensemble, const SignTriple& a) {
  BlochVector sum;
  for (int j = 1; j <= 3; ++j) {
    sum = sum + static_cast<double>(a[j - 1]) * (ensemble.at(j, 1) - ensemble.at(j, -1));
  }
  return sum;
}

BlochVector b_vector(const RefereeEnsemble& ensemble) {
  BlochVector sum;
  for (int j = 1; j <= 3; ++j) sum = sum + (ensemble.at(j, 1) + ensemble.at(j, -1));
  return (1.0 / kSqrt3) * sum;
}

ComplexMatrix t_operator(const RefereeEnsemble& ensemble, const SignTriple& a, double r) {
  require_r(r);
  for (int aj : a) {
    if (aj != 1 && aj != -1) throw Error(ErrorCode::kArgument, "sign triple entries must be +1 or -1");
  }
  const BlochVector v = a_vector(ensemble, a) - r * b_vector(ensemble);
  ComplexMatrix t = (-2.0 * kSqrt3 * r) * ComplexMatrix::identity(2);
  t += v.x * pauli(1);
  t += v.y * pauli(2);
  t += v.z * pauli(3);
  return t;
}

LhsBound lhs_bound_detail(const RefereeEnsemble& ensemble, double r) {
  LhsBound best;
  bool first = true;
  for (const SignTriple& a : sign_triples()) {
    const double value = eig_hermitian(t_operator(ensemble, a, r)).front();
    if (first || value > best.value + 1e-12) {
      first = false;
      best = {value, a};
    }
  }
  return best;
}

double lhs_bound(const RefereeEnsemble& ensemble, double r) { return lhs_bound_detail(ensemble, r).value; }

double rstar_oracle(const RefereeEnsemble& ensemble) { return rstar_oracle(ensemble, kRStarBracketHigh); }

double rstar_oracle(const RefereeEnsemble& ensemble, double bracket_high) {
  if (lhs_bound(ensemble, 0.0) <= 0.0) return 0.0;
  double hi = bracket_high;
  // Aligned ensembles sit exactly on zero at large r; allow for rounding.
  if (lhs_bound(ensemble, hi) > 1e-12) {
    std::ostringstream msg;
    msg << "no calibration parameter in [0, " << hi << "] makes the game sound";
    throw Error(ErrorCode::kCalibration, msg.str());
  }
  double lo = 0.0;
  while (hi - lo > kRStarTolerance) {
    const double mid = 0.5 * (lo + hi);
    (lhs_bound(ensemble, mid) <= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

double rstar_quadratic(const RefereeEnsemble& ensemble) {
  const BlochVector b = b_vector(ensemble);
  const double bb = b.dot(b);
  double best = 0.0;
  for (const SignTriple& a : sign_triples()) {
    const BlochVector av = a_vector(ensemble, a);
    const double ab = av.dot(b);
    const double root = (std::sqrt(ab * ab + av.dot(av) * (12.0 - bb)) - ab) / (12.0 - bb);
    best = std::max(best, root);
  }
  return best;
}

double rstar_printed(const RefereeEnsemble& ensemble) {
  const BlochVector b = b_vector(ensemble);
  const double bb = b.dot(b);
  if (bb >= 3.0) {
    std::ostringstream msg;
    msg << "printed closed form needs B·B < 3, got " << bb;
    throw Error(ErrorCode::kDomain, msg.str());
  }
  double best = 0.0;
  for (const SignTriple& a : sign_triples()) {
    const BlochVector av = a_vector(ensemble, a);
    const double ab = av.dot(b);
    const double value = (std::sqrt(ab * ab + av.dot(av) * (3.0 - bb)) - ab) / (3.0 - bb);
    best = std::max(best, value);
  }
  return best;
}

double rstar_legal(const RefereeEnsemble& ensemble) { return std::max(rstar_oracle(ensemble), 1.0); }

int CountRecord::cell(RefereeKey key, int axis, int outcome) {
  require_axis(axis);
  if (outcome != 1 && outcome != -1) throw Error(ErrorCode::kArgument, "tomography outcome must be +1 or -1");
  return 6 * key_index(key) + 2 * (axis - 1) + (outcome == 1 ? 0 : 1);
}

void CountRecord::add(RefereeKey key, int axis, int outcome, std::int64_t count) {
  if (count < 0) throw Error(ErrorCode::kArgument, "tomography counts must be nonnegative");
  counts_[cell(key, axis, outcome)] += count;
}

std::int64_t CountRecord::count(RefereeKey key, int axis, int outcome) const {
  return counts_[cell(key, axis, outcome)];
}

std::int64_t CountRecord::total(RefereeKey key, int axis) const {
  return count(key, axis, 1) + count(key, axis, -1);
}

TomographyResult bloch_from_counts(const CountRecord& record, RefereeKey key) {
  std::array<double, 3> n{};
  for (int axis = 1; axis <= 3; ++axis) {
    const std::int64_t total = record.total(key, axis);
    if (total == 0) {
      throw Error(ErrorCode::kIngestion, "no counts for key (" + std::to_string(key.j) + "," +
                                             std::to_string(key.s) + ") on axis " + std::to_string(axis));
    }
    n[axis - 1] = static_cast<double>(record.count(key, axis, 1) - record.count(key, axis, -1)) /
                  static_cast<double>(total);
  }
  TomographyResult result{{n[0], n[1], n[2]}, false};
  const double norm = result.n.norm();
  if (norm > 1.0) {
    result.n = (1.0 / norm) * result.n;
    result.clipped = true;
  }
  return result;
}

RefereeEnsemble ensemble_from_counts(const CountRecord& record, std::vector<RefereeKey>* clipped_keys) {
  std::vector<std::pair<RefereeKey, BlochVector>> entries;
  for (const RefereeKey& key : referee_keys()) {
    const TomographyResult t = bloch_from_counts(record, key);
    if (t.clipped && clipped_keys != nullptr) clipped_keys->push_back(key);
    entries.emplace_back(key, t.n);
  }
  return RefereeEnsemble::from_entries(entries);
}

double average_fidelity(const RefereeEnsemble& measured) {
  const RefereeEnsemble ideal = referee_ideal();
  double sum = 0.0;
  for (const RefereeKey& key : referee_keys()) sum += 0.5 * (1.0 + measured.at(key).dot(ideal.at(key)));
  return sum / 6.0;
}

BootstrapResult bootstrap_calibration(const CountRecord& record, int trials, std::uint64_t seed) {
  if (trials < 100) throw Error(ErrorCode::kArgument, "bootstrap needs at least 100 trials");
  BootstrapResult result;
  result.trials = trials;
  std::vector<double> values;
  values.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(t) + 1);
    const CountRecord resampled = record.transformed([&rng](std::int64_t c) -> std::int64_t {
      if (c == 0) return 0;
      return std::poisson_distribution<std::int64_t>(static_cast<double>(c))(rng);
    });
    try {
      values.push_back(rstar_oracle(ensemble_from_counts(resampled)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kIngestion && e.code() != ErrorCode::kCalibration) throw;
      ++result.failures;
    }
  }
  if (values.empty()) return result;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  result.mean = mean;
  result.std_dev = values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;
  return result;
}

CalibrationReport calibrate(const RefereeEnsemble& ensemble, std::vector<RefereeKey> clipped_keys) {
  CalibrationReport report;
  report.r_star_oracle = rstar_oracle(ensemble);
  try {
    report.r_star_printed = rstar_printed(ensemble);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDomain) throw;
  }
  report.r_star_legal = std::max(report.r_star_oracle, 1.0);
  report.worst_assignment = lhs_bound_detail(ensemble, report.r_star_oracle).worst;
  for (double r : {report.r_star_oracle, 1.0, report.r_star_legal}) report.bound_at_r[r] = lhs_bound(ensemble, r);
  report.avg_fidelity = average_fidelity(ensemble);
  report.clipped_keys = std::move(clipped_keys);
  return report;
}

double chsh_correlator(const ComplexMatrix& state, double theta_a, double theta_b) {
  return trace_product(state, tensor(observable(theta_a), observable(theta_b))).real();
}

double chsh_werner(double w) {
  const ComplexMatrix state = werner_state(w);
  constexpr double a0 = 0.0;
  constexpr double a1 = std::numbers::pi / 2.0;
  constexpr double b0 = std::numbers::pi / 4.0;
  constexpr double b1 = -std::numbers::pi / 4.0;
  const double s = std::abs(chsh_correlator(state, a0, b0) + chsh_correlator(state, a0, b1) +
                            chsh_correlator(state, a1, b0) - chsh_correlator(state, a1, b1));
  if (std::abs(s - 2.0 * std::numbers::sqrt2 * w) > 1e-10) {
    std::ostringstream msg;
    msg << "CHSH correlators give " << s << ", expected 2 sqrt(2) W = " << 2.0 * std::numbers::sqrt2 * w;
    throw Error(ErrorCode::kDomain, msg.str());
  }
  return s;
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::kUnsteerableByGame: return "unsteerable-by-this-game";
    case Regime::kSteerableNoKnownBell: return "steerable-no-known-Bell";
    case Regime::kSteerableOpenBellWindow: return "steerable-open-Bell-window";
    case Regime::kBellViolating: return "Bell-violating";
  }
  return "unknown";
}

Regime regime_classify(double w, double r) {
  if (w <= r / kSqrt3) return Regime::kUnsteerableByGame;
  if (w > kVertesiThreshold) return Regime::kBellViolating;
  if (w > kBellLocalThreshold) return Regime::kSteerableOpenBellWindow;
  return Regime::kSteerableNoKnownBell;
}

RefereeEnsemble apply_channel(const RefereeEnsemble& ensemble, std::span<const ComplexMatrix> kraus) {
  require_kraus(kraus);
  std::vector<std::pair<RefereeKey, BlochVector>> entries;
  for (const RefereeKey& key : referee_keys()) {
    const ComplexMatrix rho = bloch_state(ensemble.at(key));
    ComplexMatrix out(2);
    for (const ComplexMatrix& k : kraus) out += k * rho * k.adjoint();
    BlochVector n = bloch_components(out);
    if (n.norm() > 1.0) n = (1.0 / n.norm()) * n;
    entries.emplace_back(key, n);
  }
  return RefereeEnsemble::from_entries(entries);
}

ComplexMatrix dual_channel_on_second(const ComplexMatrix& effect, std::span<const ComplexMatrix> kraus) {
  require_kraus(kraus);
  ComplexMatrix out(4);
  for (const ComplexMatrix& k : kraus) {
    const ComplexMatrix lifted = tensor(ComplexMatrix::identity(2), k);
    out += lifted.adjoint() * effect * lifted;
  }
  return out;
}

CovarianceResult channel_covariance_check(const RefereeEnsemble& ensemble, std::span<const ComplexMatrix> kraus,
                                          const Strategy& strategy) {
  require_kraus(kraus);
  const RefereeEnsemble sent = apply_channel(ensemble, kraus);
  Strategy dual = strategy;
  std::visit(
      [&](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HonestQuantum>) {
          s.bob = povm_from_click(dual_channel_on_second(s.bob.click, kraus));
        } else if constexpr (std::is_same_v<T, LhsDeterministic>) {
          s.bob_click = dual_channel_on_second(s.bob_click, kraus);
        } else {
          for (LhsComponent& c : s.components) c.bob_click = dual_channel_on_second(c.bob_click, kraus);
        }
      },
      dual);

  CovarianceResult result;
  for (const RefereeKey& key : referee_keys()) {
    const JointProbabilities through_channel = joint_probabilities(strategy, sent, key.j, key);
    const JointProbabilities dual_measurement = joint_probabilities(dual, ensemble, key.j, key);
    for (int a : {-1, 1}) {
      for (int b : {0, 1}) {
        result.max_deviation =
            std::max(result.max_deviation, std::abs(through_channel.at(a, b) - dual_measurement.at(a, b)));
      }
    }
  }
  result.passed = result.max_deviation <= 1e-9;
  return result;
}

}  // namespace qrs
