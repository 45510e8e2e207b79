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
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "qrs/qrs.h"

using doctest::Approx;

namespace {

std::string take(char* s) {
  std::string out = s;
  qrs_string_free(s);
  return out;
}

std::filesystem::path scratch_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("qrs_c_api_" + name);
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("version and ensembles") {
  CHECK(std::strlen(qrs_version()) > 0);

  qrs_ensemble* ideal = nullptr;
  REQUIRE(qrs_ensemble_ideal(&ideal) == QRS_OK);
  double n[3];
  REQUIRE(qrs_ensemble_vector(ideal, 2, -1, n) == QRS_OK);
  CHECK(n[0] == 0.0);
  CHECK(n[1] == -1.0);
  CHECK(n[2] == 0.0);
  CHECK(qrs_ensemble_vector(ideal, 4, 1, n) == QRS_ERR_ARGUMENT);
  CHECK(std::strlen(qrs_last_error()) > 0);

  char* json = nullptr;
  REQUIRE(qrs_ensemble_to_json(ideal, &json) == QRS_OK);
  qrs_ensemble* parsed = nullptr;
  REQUIRE(qrs_ensemble_parse_json(take(json).c_str(), &parsed) == QRS_OK);
  double r = 0.0;
  REQUIRE(qrs_rstar_oracle(parsed, &r) == QRS_OK);
  CHECK(std::abs(r - 1.0) < 1e-9);

  qrs_ensemble* shrunk = nullptr;
  REQUIRE(qrs_ensemble_depolarize(ideal, 0.8, &shrunk) == QRS_OK);
  REQUIRE(qrs_rstar_oracle(shrunk, &r) == QRS_OK);
  CHECK(std::abs(r - 0.8) < 1e-9);
  REQUIRE(qrs_rstar_legal(shrunk, &r) == QRS_OK);
  CHECK(r == 1.0);
  REQUIRE(qrs_rstar_printed(ideal, &r) == QRS_OK);
  CHECK(r == Approx(2.0));
  REQUIRE(qrs_lhs_bound(ideal, 0.9, &r) == QRS_OK);
  CHECK(r == Approx(2.0 * std::sqrt(3.0) * 0.1));

  const double too_long[18] = {1.5};
  qrs_ensemble* bad = nullptr;
  CHECK(qrs_ensemble_from_vectors(too_long, &bad) == QRS_ERR_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(qrs_ensemble_parse_json("{", &bad) == QRS_ERR_PARSE);
  CHECK(qrs_ensemble_load_json("/nonexistent.json", &bad) == QRS_ERR_PARSE);
  CHECK(qrs_ensemble_ideal(nullptr) == QRS_ERR_ARGUMENT);

  qrs_ensemble_free(ideal);
  qrs_ensemble_free(parsed);
  qrs_ensemble_free(shrunk);
  qrs_ensemble_free(nullptr);
}

TEST_CASE("payoffs and regimes") {
  double p = 0.0;
  REQUIRE(qrs_exact_payoff_werner(0.698, 1.081, 1.0, nullptr, &p) == QRS_OK);
  CHECK(p == Approx(0.2216530770).epsilon(1e-10));
  CHECK(qrs_payoff_reference(1.0, 1.0) == Approx(3.0 - std::sqrt(3.0)));
  REQUIRE(qrs_exact_payoff_werner(0.698, 1.081, 0.89, nullptr, &p) == QRS_OK);
  CHECK(p == Approx(3 * 0.89 * 0.698 - std::sqrt(3.0) * 1.081 * (2 - 0.89)).epsilon(1e-10));
  CHECK(qrs_exact_payoff_werner(1.2, 1.0, 1.0, nullptr, &p) == QRS_ERR_ARGUMENT);
  CHECK(qrs_exact_payoff_werner(0.5, 1.0, 1.1, nullptr, &p) == QRS_ERR_ARGUMENT);

  qrs_regime regime{};
  REQUIRE(qrs_regime_classify(0.698, 1.081, &regime) == QRS_OK);
  CHECK(regime == QRS_REGIME_STEERABLE_OPEN_BELL_WINDOW);
  CHECK(std::string(qrs_regime_name(regime)) == "steerable-open-Bell-window");
  REQUIRE(qrs_chsh_werner(0.698, &p) == QRS_OK);
  CHECK(p == Approx(1.9742).epsilon(1e-4));
  CHECK(qrs_chsh_werner(-0.1, &p) == QRS_ERR_ARGUMENT);
}

TEST_CASE("calibration report") {
  qrs_ensemble* ideal = nullptr;
  REQUIRE(qrs_ensemble_ideal(&ideal) == QRS_OK);
  qrs_report* report = nullptr;
  REQUIRE(qrs_calibrate(ideal, nullptr, 0, 1, &report) == QRS_OK);
  double oracle = 0.0;
  double printed = 0.0;
  double legal = 0.0;
  REQUIRE(qrs_report_rstar(report, &oracle, &printed, &legal) == QRS_OK);
  CHECK(std::abs(oracle - 1.0) < 1e-9);
  CHECK(printed == Approx(2.0));
  char* json = nullptr;
  REQUIRE(qrs_report_to_json(report, &json) == QRS_OK);
  const std::string text = take(json);
  CHECK(text.find("\"r_star_oracle\"") != std::string::npos);
  CHECK(text.find("\"r_star_printed\"") != std::string::npos);
  qrs_report_free(report);

  CHECK(qrs_calibrate(nullptr, nullptr, 0, 1, &report) == QRS_ERR_ARGUMENT);
  CHECK(qrs_calibrate(ideal, nullptr, 0, 1, nullptr) == QRS_ERR_ARGUMENT);
  qrs_ensemble_free(ideal);

  std::string csv = "j,s,axis,outcome,count\n";
  for (int j = 1; j <= 3; ++j) {
    for (int s : {1, -1}) {
      for (int axis = 1; axis <= 3; ++axis) {
        const int plus = axis == j ? (s == 1 ? 10000 : 0) : 5000;
        csv += std::to_string(j) + "," + std::to_string(s) + "," + std::to_string(axis) + ",1," +
               std::to_string(plus) + "\n";
        csv += std::to_string(j) + "," + std::to_string(s) + "," + std::to_string(axis) + ",-1," +
               std::to_string(10000 - plus) + "\n";
      }
    }
  }
  const auto path = scratch_file("counts.csv", csv);
  qrs_counts* counts = nullptr;
  REQUIRE(qrs_counts_load_csv(path.c_str(), &counts) == QRS_OK);
  qrs_ensemble* measured = nullptr;
  REQUIRE(qrs_counts_to_ensemble(counts, &measured) == QRS_OK);
  double n[3];
  REQUIRE(qrs_ensemble_vector(measured, 3, -1, n) == QRS_OK);
  CHECK(n[2] == -1.0);
  REQUIRE(qrs_calibrate(nullptr, counts, 100, 7, &report) == QRS_OK);
  REQUIRE(qrs_report_to_json(report, &json) == QRS_OK);
  CHECK(take(json).find("\"failures\"") != std::string::npos);
  qrs_report_free(report);
  CHECK(qrs_calibrate(nullptr, counts, 10, 7, &report) == QRS_ERR_ARGUMENT);
  qrs_counts_free(counts);
  qrs_ensemble_free(measured);
  std::filesystem::remove(path);
}

TEST_CASE("simulation and tallies") {
  qrs_tally* tally = nullptr;
  REQUIRE(qrs_simulate_werner(1.0, 1.0, 1.0, nullptr, 1000, 42, &tally) == QRS_OK);
  std::int64_t total = 0;
  for (int j = 1; j <= 3; ++j) {
    for (int s : {1, -1}) {
      for (int a : {1, -1}) {
        for (int b : {0, 1}) {
          std::int64_t c = 0;
          REQUIRE(qrs_tally_count(tally, j, s, a, b, &c) == QRS_OK);
          total += c;
        }
      }
    }
  }
  CHECK(total == 6000);

  double value = 0.0;
  double std_error = 0.0;
  REQUIRE(qrs_tally_estimate(tally, 1.0, &value, &std_error) == QRS_OK);
  CHECK(std_error > 0.0);
  CHECK(std::abs(value - (3.0 - std::sqrt(3.0))) < 5.0 * std_error);

  char* csv = nullptr;
  REQUIRE(qrs_tally_to_csv(tally, &csv) == QRS_OK);
  const auto path = scratch_file("tally.csv", take(csv));
  qrs_tally* back = nullptr;
  REQUIRE(qrs_tally_load_csv(path.c_str(), &back) == QRS_OK);
  double value_back = 0.0;
  double std_error_back = 0.0;
  REQUIRE(qrs_tally_estimate(back, 1.0, &value_back, &std_error_back) == QRS_OK);
  CHECK(value_back == value);
  CHECK(std_error_back == std_error);

  qrs_tally* again = nullptr;
  REQUIRE(qrs_simulate_werner(1.0, 1.0, 1.0, nullptr, 1000, 42, &again) == QRS_OK);
  char* csv_again = nullptr;
  REQUIRE(qrs_tally_to_csv(again, &csv_again) == QRS_OK);
  REQUIRE(qrs_tally_to_csv(tally, &csv) == QRS_OK);
  CHECK(take(csv) == take(csv_again));

  CHECK(qrs_simulate_werner(1.0, 1.0, 1.0, nullptr, 0, 42, &again) != QRS_OK);
  qrs_tally* empty = nullptr;
  const auto bad = scratch_file("bad_tally.csv", "j,s,a,b,count\n1,1,1,1,oops\n");
  CHECK(qrs_tally_load_csv(bad.c_str(), &empty) == QRS_ERR_PARSE);

  qrs_tally_free(tally);
  qrs_tally_free(back);
  qrs_tally_free(again);
  std::filesystem::remove(path);
  std::filesystem::remove(bad);
}
