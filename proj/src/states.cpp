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

#include "qrs/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qrs {
namespace {

void require_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    std::ostringstream msg;
    msg << name << " must lie in [0, 1], got " << value;
    throw Error(ErrorCode::kArgument, msg.str());
  }
}

BlochVector apply(const Rotation3& r, const BlochVector& n) {
  return {r[0][0] * n.x + r[0][1] * n.y + r[0][2] * n.z,
          r[1][0] * n.x + r[1][1] * n.y + r[1][2] * n.z,
          r[2][0] * n.x + r[2][1] * n.y + r[2][2] * n.z};
}

double determinant(const Rotation3& r) {
  return r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
         r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
         r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
}

}  // namespace

const std::array<RefereeKey, 6>& referee_keys() {
  static const std::array<RefereeKey, 6> keys = {
      RefereeKey{1, 1}, RefereeKey{1, -1}, RefereeKey{2, 1}, RefereeKey{2, -1}, RefereeKey{3, 1}, RefereeKey{3, -1}};
  return keys;
}

int key_index(RefereeKey key) {
  if (key.j < 1 || key.j > 3 || (key.s != 1 && key.s != -1)) {
    throw Error(ErrorCode::kArgument,
                "invalid referee key (" + std::to_string(key.j) + "," + std::to_string(key.s) + ")");
  }
  return 2 * (key.j - 1) + (key.s == 1 ? 0 : 1);
}

RefereeEnsemble RefereeEnsemble::from_entries(const std::vector<std::pair<RefereeKey, BlochVector>>& entries) {
  if (entries.size() != 6) {
    throw Error(ErrorCode::kArgument, "referee ensemble needs exactly six entries, got " + std::to_string(entries.size()));
  }
  std::array<BlochVector, 6> vectors{};
  std::array<bool, 6> seen{};
  for (const auto& [key, n] : entries) {
    const int idx = key_index(key);
    if (seen[idx]) {
      throw Error(ErrorCode::kArgument,
                  "duplicate referee key (" + std::to_string(key.j) + "," + std::to_string(key.s) + ")");
    }
    if (!std::isfinite(n.norm()) || n.norm() > 1.0 + tolerance::kBlochNorm) {
      std::ostringstream msg;
      msg << "Bloch vector for (" << key.j << "," << key.s << ") has norm " << n.norm() << " > 1";
      throw Error(ErrorCode::kArgument, msg.str());
    }
    seen[idx] = true;
    vectors[idx] = n;
  }
  return RefereeEnsemble(vectors);
}

std::vector<Complex> bell_ket(BellIndex idx) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (idx) {
    case BellIndex::kPsiMinus: return {0.0, h, -h, 0.0};
    case BellIndex::kPsiPlus: return {0.0, h, h, 0.0};
    case BellIndex::kPhiMinus: return {h, 0.0, 0.0, -h};
    case BellIndex::kPhiPlus: return {h, 0.0, 0.0, h};
  }
  throw Error(ErrorCode::kArgument, "unknown Bell index");
}

ComplexMatrix bell_state(BellIndex idx) { return ComplexMatrix::projector(bell_ket(idx)); }

ComplexMatrix swap_operator() {
  ComplexMatrix m(4);
  m(0, 0) = 1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 3) = 1.0;
  return m;
}

ComplexMatrix werner_state(double w) {
  require_unit_interval(w, "Werner parameter W");
  return w * bell_state(BellIndex::kPsiMinus) + ((1.0 - w) / 4.0) * ComplexMatrix::identity(4);
}

BellMixture werner_from_bell_weights(double p_singlet) {
  if (!(p_singlet >= 0.25 && p_singlet <= 1.0)) {
    std::ostringstream msg;
    msg << "singlet weight must lie in [1/4, 1], got " << p_singlet;
    throw Error(ErrorCode::kArgument, msg.str());
  }
  const double triplet = (1.0 - p_singlet) / 3.0;
  ComplexMatrix state = p_singlet * bell_state(BellIndex::kPsiMinus);
  for (BellIndex idx : {BellIndex::kPsiPlus, BellIndex::kPhiMinus, BellIndex::kPhiPlus}) {
    state += triplet * bell_state(idx);
  }
  // Floating noise can push W a hair outside [0, 1] at the endpoints.
  const double w = std::clamp((4.0 * p_singlet - 1.0) / 3.0, 0.0, 1.0);
  return {state, w};
}

RefereeEnsemble referee_ideal() {
  std::vector<std::pair<RefereeKey, BlochVector>> entries;
  for (const RefereeKey& key : referee_keys()) {
    BlochVector n;
    const double s = key.s;
    if (key.j == 1) n.x = s;
    if (key.j == 2) n.y = s;
    if (key.j == 3) n.z = s;
    entries.emplace_back(key, n);
  }
  return RefereeEnsemble::from_entries(entries);
}

ComplexMatrix referee_state(const RefereeEnsemble& e, int j, int s) { return bloch_state(e.at(j, s)); }

RefereeEnsemble depolarize_ensemble(const RefereeEnsemble& e, double eta) {
  require_unit_interval(eta, "depolarizing factor eta");
  std::vector<std::pair<RefereeKey, BlochVector>> entries;
  for (const RefereeKey& key : referee_keys()) entries.emplace_back(key, eta * e.at(key));
  return RefereeEnsemble::from_entries(entries);
}

RefereeEnsemble rotate_ensemble(const RefereeEnsemble& e, const Rotation3& rotation) {
  double orth_error = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += rotation[k][r] * rotation[k][c];
      orth_error = std::max(orth_error, std::abs(dot - (r == c ? 1.0 : 0.0)));
    }
  }
  if (orth_error > 1e-9 || std::abs(determinant(rotation) - 1.0) > 1e-9) {
    throw Error(ErrorCode::kArgument, "matrix is not a proper rotation");
  }
  std::vector<std::pair<RefereeKey, BlochVector>> entries;
  for (const RefereeKey& key : referee_keys()) {
    BlochVector n = apply(rotation, e.at(key));
    // Keep unit vectors inside the norm check after rounding.
    if (n.norm() > 1.0) n = (1.0 / n.norm()) * n;
    entries.emplace_back(key, n);
  }
  return RefereeEnsemble::from_entries(entries);
}

double fidelity_pure(const ComplexMatrix& rho, const BlochVector& target) {
  if (rho.dim() != 2 || !is_density_matrix(rho).valid) {
    throw Error(ErrorCode::kArgument, "fidelity needs a single-qubit density matrix");
  }
  if (std::abs(target.norm() - 1.0) > tolerance::kBlochNorm) {
    throw Error(ErrorCode::kArgument, "fidelity target must be a unit Bloch vector");
  }
  return trace_product(rho, bloch_state(target)).real();
}

}  // namespace qrs
