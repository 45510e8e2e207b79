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

#include "qrs/qrs.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "qrs/game.hpp"
#include "qrs/io.hpp"
#include "qrs/states.hpp"
#include "qrs/witness.hpp"

struct qrs_ensemble {
  qrs::RefereeEnsemble value;
};

struct qrs_counts {
  qrs::CountRecord value;
};

struct qrs_tally {
  qrs::TallyTable value;
};

struct qrs_report {
  qrs::CalibrationReport value;
};

namespace {

thread_local std::string g_last_error;

qrs_status fail(qrs_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

qrs_status to_status(qrs::ErrorCode code) {
  switch (code) {
    case qrs::ErrorCode::kArgument: return QRS_ERR_ARGUMENT;
    case qrs::ErrorCode::kDomain: return QRS_ERR_DOMAIN;
    case qrs::ErrorCode::kUnsupported: return QRS_ERR_UNSUPPORTED;
    case qrs::ErrorCode::kCalibration: return QRS_ERR_CALIBRATION;
    case qrs::ErrorCode::kEstimation: return QRS_ERR_ESTIMATION;
    case qrs::ErrorCode::kIngestion: return QRS_ERR_INGESTION;
    case qrs::ErrorCode::kParse: return QRS_ERR_PARSE;
  }
  return QRS_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
qrs_status guarded(F&& body) {
  try {
    body();
    return QRS_OK;
  } catch (const qrs::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QRS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QRS_ERR_INTERNAL, e.what());
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw qrs::Error(qrs::ErrorCode::kArgument, std::string(name) + " must not be null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qrs::RefereeEnsemble ensemble_or_ideal(const qrs_ensemble* e) {
  return e != nullptr ? e->value : qrs::referee_ideal();
}

qrs::Strategy honest_werner(double w, double visibility) {
  return qrs::HonestQuantum{qrs::werner_state(w), qrs::partial_bsm_povm(visibility)};
}

}  // namespace

extern "C" {

const char* qrs_last_error(void) { return g_last_error.c_str(); }

const char* qrs_version(void) { return "1.0.0"; }

void qrs_string_free(char* s) { std::free(s); }

qrs_status qrs_ensemble_ideal(qrs_ensemble** out) {
  return guarded([&] {
    require(out, "out");
    *out = new qrs_ensemble{qrs::referee_ideal()};
  });
}

qrs_status qrs_ensemble_from_vectors(const double xyz[18], qrs_ensemble** out) {
  return guarded([&] {
    require(xyz, "xyz");
    require(out, "out");
    std::vector<std::pair<qrs::RefereeKey, qrs::BlochVector>> entries;
    for (int i = 0; i < 6; ++i) {
      entries.emplace_back(qrs::referee_keys()[i], qrs::BlochVector{xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]});
    }
    *out = new qrs_ensemble{qrs::RefereeEnsemble::from_entries(entries)};
  });
}

qrs_status qrs_ensemble_load_json(const char* path, qrs_ensemble** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new qrs_ensemble{qrs::io::load_ensemble_file(path)};
  });
}

qrs_status qrs_ensemble_parse_json(const char* text, qrs_ensemble** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new qrs_ensemble{qrs::io::parse_ensemble_json(text)};
  });
}

qrs_status qrs_ensemble_to_json(const qrs_ensemble* e, char** out_json) {
  return guarded([&] {
    require(e, "ensemble");
    require(out_json, "out_json");
    *out_json = copy_string(qrs::io::ensemble_to_json(e->value));
  });
}

qrs_status qrs_ensemble_depolarize(const qrs_ensemble* e, double eta, qrs_ensemble** out) {
  return guarded([&] {
    require(e, "ensemble");
    require(out, "out");
    *out = new qrs_ensemble{qrs::depolarize_ensemble(e->value, eta)};
  });
}

qrs_status qrs_ensemble_vector(const qrs_ensemble* e, int j, int s, double out_xyz[3]) {
  return guarded([&] {
    require(e, "ensemble");
    require(out_xyz, "out_xyz");
    const qrs::BlochVector& n = e->value.at(j, s);
    out_xyz[0] = n.x;
    out_xyz[1] = n.y;
    out_xyz[2] = n.z;
  });
}

void qrs_ensemble_free(qrs_ensemble* e) { delete e; }

qrs_status qrs_counts_load_csv(const char* path, qrs_counts** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new qrs_counts{qrs::io::load_counts_file(path)};
  });
}

qrs_status qrs_counts_to_ensemble(const qrs_counts* c, qrs_ensemble** out) {
  return guarded([&] {
    require(c, "counts");
    require(out, "out");
    *out = new qrs_ensemble{qrs::ensemble_from_counts(c->value)};
  });
}

void qrs_counts_free(qrs_counts* c) { delete c; }

qrs_status qrs_exact_payoff_werner(double w, double r, double visibility, const qrs_ensemble* e, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = qrs::exact_payoff(qrs::canonical_game(r), honest_werner(w, visibility), ensemble_or_ideal(e));
  });
}

double qrs_payoff_reference(double w, double r) { return 3.0 * w - std::sqrt(3.0) * r; }

qrs_status qrs_regime_classify(double w, double r, qrs_regime* out) {
  return guarded([&] {
    require(out, "out");
    if (!(w >= 0.0 && w <= 1.0) || !(r >= 0.0)) {
      throw qrs::Error(qrs::ErrorCode::kArgument, "regime needs 0 <= W <= 1 and r >= 0");
    }
    *out = static_cast<qrs_regime>(qrs::regime_classify(w, r));
  });
}

const char* qrs_regime_name(qrs_regime regime) {
  switch (regime) {
    case QRS_REGIME_UNSTEERABLE_BY_GAME: return "unsteerable-by-this-game";
    case QRS_REGIME_STEERABLE_NO_KNOWN_BELL: return "steerable-no-known-Bell";
    case QRS_REGIME_STEERABLE_OPEN_BELL_WINDOW: return "steerable-open-Bell-window";
    case QRS_REGIME_BELL_VIOLATING: return "Bell-violating";
  }
  return "unknown";
}

qrs_status qrs_chsh_werner(double w, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = qrs::chsh_werner(w);
  });
}

qrs_status qrs_lhs_bound(const qrs_ensemble* e, double r, double* out) {
  return guarded([&] {
    require(e, "ensemble");
    require(out, "out");
    if (!(r >= 0.0)) throw qrs::Error(qrs::ErrorCode::kArgument, "r must be >= 0");
    *out = qrs::lhs_bound(e->value, r);
  });
}

qrs_status qrs_rstar_oracle(const qrs_ensemble* e, double* out) {
  return guarded([&] {
    require(e, "ensemble");
    require(out, "out");
    *out = qrs::rstar_oracle(e->value);
  });
}

qrs_status qrs_rstar_printed(const qrs_ensemble* e, double* out) {
  return guarded([&] {
    require(e, "ensemble");
    require(out, "out");
    *out = qrs::rstar_printed(e->value);
  });
}

qrs_status qrs_rstar_legal(const qrs_ensemble* e, double* out) {
  return guarded([&] {
    require(e, "ensemble");
    require(out, "out");
    *out = qrs::rstar_legal(e->value);
  });
}

qrs_status qrs_calibrate(const qrs_ensemble* e, const qrs_counts* counts, int trials, uint64_t seed,
                         qrs_report** out) {
  return guarded([&] {
    require(out, "out");
    if (e == nullptr && counts == nullptr) {
      throw qrs::Error(qrs::ErrorCode::kArgument, "calibration needs an ensemble or tomography counts");
    }
    std::vector<qrs::RefereeKey> clipped;
    const qrs::RefereeEnsemble ensemble =
        e != nullptr ? e->value : qrs::ensemble_from_counts(counts->value, &clipped);
    qrs::CalibrationReport report = qrs::calibrate(ensemble, clipped);
    if (counts != nullptr && trials > 0) report.bootstrap = qrs::bootstrap_calibration(counts->value, trials, seed);
    *out = new qrs_report{std::move(report)};
  });
}

qrs_status qrs_report_rstar(const qrs_report* report, double* oracle, double* printed, double* legal) {
  return guarded([&] {
    require(report, "report");
    if (oracle != nullptr) *oracle = report->value.r_star_oracle;
    if (printed != nullptr) *printed = report->value.r_star_printed.value_or(std::nan(""));
    if (legal != nullptr) *legal = report->value.r_star_legal;
  });
}

qrs_status qrs_report_to_json(const qrs_report* report, char** out_json) {
  return guarded([&] {
    require(report, "report");
    require(out_json, "out_json");
    *out_json = copy_string(qrs::io::report_to_json(report->value));
  });
}

void qrs_report_free(qrs_report* report) { delete report; }

qrs_status qrs_simulate_werner(double w, double r, double visibility, const qrs_ensemble* e,
                               int64_t n_per_setting, uint64_t seed, qrs_tally** out) {
  return guarded([&] {
    require(out, "out");
    *out = new qrs_tally{qrs::simulate_runs(qrs::canonical_game(r), honest_werner(w, visibility),
                                            ensemble_or_ideal(e), n_per_setting, seed)};
  });
}

qrs_status qrs_tally_load_csv(const char* path, qrs_tally** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new qrs_tally{qrs::io::load_tally_file(path)};
  });
}

qrs_status qrs_tally_to_csv(const qrs_tally* t, char** out_csv) {
  return guarded([&] {
    require(t, "tally");
    require(out_csv, "out_csv");
    std::ostringstream csv;
    qrs::io::write_tally_csv(csv, t->value);
    *out_csv = copy_string(csv.str());
  });
}

qrs_status qrs_tally_count(const qrs_tally* t, int j, int s, int a, int b, int64_t* out) {
  return guarded([&] {
    require(t, "tally");
    require(out, "out");
    *out = t->value.count(qrs::RefereeKey{j, s}, a, b);
  });
}

qrs_status qrs_tally_estimate(const qrs_tally* t, double r, double* value, double* std_error) {
  return guarded([&] {
    require(t, "tally");
    const qrs::PayoffEstimate est = qrs::estimate_payoff(qrs::canonical_game(r), t->value);
    if (value != nullptr) *value = est.value;
    if (std_error != nullptr) *std_error = est.std_error;
  });
}

qrs_status qrs_tally_estimate_json(const qrs_tally* t, double r, char** out_json) {
  return guarded([&] {
    require(t, "tally");
    require(out_json, "out_json");
    *out_json = copy_string(qrs::io::estimate_to_json(qrs::estimate_payoff(qrs::canonical_game(r), t->value)));
  });
}

void qrs_tally_free(qrs_tally* t) { delete t; }

}  // extern "C"
