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

#ifndef QRS_QRS_H_
#define QRS_QRS_H_

/* C interface to the quantum-refereed steering game library.
 *
 * Every function returns a qrs_status. On failure the message for the calling
 * thread is available from qrs_last_error() until the next failing call.
 * Objects are opaque handles released with the matching *_free function;
 * strings returned through char** are released with qrs_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QRS_BUILDING_LIBRARY)
#    define QRS_API __declspec(dllexport)
#  else
#    define QRS_API __declspec(dllimport)
#  endif
#else
#  define QRS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qrs_status {
  QRS_OK = 0,
  QRS_ERR_ARGUMENT = 1,
  QRS_ERR_DOMAIN = 2,
  QRS_ERR_UNSUPPORTED = 3,
  QRS_ERR_CALIBRATION = 4,
  QRS_ERR_ESTIMATION = 5,
  QRS_ERR_INGESTION = 6,
  QRS_ERR_PARSE = 7,
  QRS_ERR_INTERNAL = 99
} qrs_status;

typedef enum qrs_regime {
  QRS_REGIME_UNSTEERABLE_BY_GAME = 0,
  QRS_REGIME_STEERABLE_NO_KNOWN_BELL = 1,
  QRS_REGIME_STEERABLE_OPEN_BELL_WINDOW = 2,
  QRS_REGIME_BELL_VIOLATING = 3
} qrs_regime;

typedef struct qrs_ensemble qrs_ensemble;
typedef struct qrs_counts qrs_counts;
typedef struct qrs_tally qrs_tally;
typedef struct qrs_report qrs_report;

QRS_API const char* qrs_last_error(void);
QRS_API const char* qrs_version(void);
QRS_API void qrs_string_free(char* s);

/* Referee ensembles. Vectors are ordered (1,+1), (1,-1), (2,+1), (2,-1),
 * (3,+1), (3,-1), three components each. */
QRS_API qrs_status qrs_ensemble_ideal(qrs_ensemble** out);
QRS_API qrs_status qrs_ensemble_from_vectors(const double xyz[18], qrs_ensemble** out);
QRS_API qrs_status qrs_ensemble_load_json(const char* path, qrs_ensemble** out);
QRS_API qrs_status qrs_ensemble_parse_json(const char* text, qrs_ensemble** out);
QRS_API qrs_status qrs_ensemble_to_json(const qrs_ensemble* e, char** out_json);
QRS_API qrs_status qrs_ensemble_depolarize(const qrs_ensemble* e, double eta, qrs_ensemble** out);
QRS_API qrs_status qrs_ensemble_vector(const qrs_ensemble* e, int j, int s, double out_xyz[3]);
QRS_API void qrs_ensemble_free(qrs_ensemble* e);

/* Tomography counts (CSV header j,s,axis,outcome,count). */
QRS_API qrs_status qrs_counts_load_csv(const char* path, qrs_counts** out);
QRS_API qrs_status qrs_counts_to_ensemble(const qrs_counts* c, qrs_ensemble** out);
QRS_API void qrs_counts_free(qrs_counts* c);

/* Canonical game with an honest Werner-state strategy and a partial Bell
 * measurement of visibility V (V = 1 is an exact singlet projection). A null
 * ensemble means the ideal referee. */
QRS_API qrs_status qrs_exact_payoff_werner(double w, double r, double visibility, const qrs_ensemble* e,
                                           double* out);
/* 3W - sqrt(3) r. */
QRS_API double qrs_payoff_reference(double w, double r);

QRS_API qrs_status qrs_regime_classify(double w, double r, qrs_regime* out);
QRS_API const char* qrs_regime_name(qrs_regime regime);
QRS_API qrs_status qrs_chsh_werner(double w, double* out);

QRS_API qrs_status qrs_lhs_bound(const qrs_ensemble* e, double r, double* out);
QRS_API qrs_status qrs_rstar_oracle(const qrs_ensemble* e, double* out);
QRS_API qrs_status qrs_rstar_printed(const qrs_ensemble* e, double* out);
QRS_API qrs_status qrs_rstar_legal(const qrs_ensemble* e, double* out);

/* Calibration report. `counts` may be null; when given, `trials` bootstrap
 * resamples are drawn with `seed` (trials = 0 skips the bootstrap). */
QRS_API qrs_status qrs_calibrate(const qrs_ensemble* e, const qrs_counts* counts, int trials, uint64_t seed,
                                 qrs_report** out);
QRS_API qrs_status qrs_report_rstar(const qrs_report* report, double* oracle, double* printed, double* legal);
QRS_API qrs_status qrs_report_to_json(const qrs_report* report, char** out_json);
QRS_API void qrs_report_free(qrs_report* report);

/* Monte Carlo runs of the honest Werner strategy in the canonical game. */
QRS_API qrs_status qrs_simulate_werner(double w, double r, double visibility, const qrs_ensemble* e,
                                       int64_t n_per_setting, uint64_t seed, qrs_tally** out);
QRS_API qrs_status qrs_tally_load_csv(const char* path, qrs_tally** out);
QRS_API qrs_status qrs_tally_to_csv(const qrs_tally* t, char** out_csv);
QRS_API qrs_status qrs_tally_count(const qrs_tally* t, int j, int s, int a, int b, int64_t* out);
QRS_API qrs_status qrs_tally_estimate(const qrs_tally* t, double r, double* value, double* std_error);
QRS_API qrs_status qrs_tally_estimate_json(const qrs_tally* t, double r, char** out_json);
QRS_API void qrs_tally_free(qrs_tally* t);

#ifdef __cplusplus
}
#endif

#endif /* QRS_QRS_H_ */
