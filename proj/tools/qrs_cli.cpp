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

// Command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qrs/qrs.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitCalibration = 3;

struct CliError {
  int exit_code;
  std::string message;
};

int exit_code_for(qrs_status status) {
  switch (status) {
    case QRS_OK: return kExitOk;
    case QRS_ERR_CALIBRATION: return kExitCalibration;
    case QRS_ERR_INTERNAL: return kExitFailure;
    default: return kExitInvalid;
  }
}

void check(qrs_status status) {
  if (status != QRS_OK) throw CliError{exit_code_for(status), qrs_last_error()};
}

struct EnsembleDeleter {
  void operator()(qrs_ensemble* e) const { qrs_ensemble_free(e); }
};
struct CountsDeleter {
  void operator()(qrs_counts* c) const { qrs_counts_free(c); }
};
struct TallyDeleter {
  void operator()(qrs_tally* t) const { qrs_tally_free(t); }
};
struct ReportDeleter {
  void operator()(qrs_report* r) const { qrs_report_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { qrs_string_free(s); }
};

using EnsemblePtr = std::unique_ptr<qrs_ensemble, EnsembleDeleter>;
using CountsPtr = std::unique_ptr<qrs_counts, CountsDeleter>;
using TallyPtr = std::unique_ptr<qrs_tally, TallyDeleter>;
using ReportPtr = std::unique_ptr<qrs_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

struct RunConfig {
  double w = 1.0;
  std::string r = "1";
  double visibility = 1.0;
  std::int64_t n_per_setting = 0;
  std::uint64_t seed = 1;
  std::string ensemble_path;
  std::string counts_path;
  std::string tallies_path;
  std::string output_path;
  std::string estimate_path;
  std::string format = "csv";
  int trials = 1000;
  std::vector<double> grid;
  std::optional<double> grid_from;
  std::optional<double> grid_to;
  int grid_steps = 0;
};

EnsemblePtr load_ensemble(const RunConfig& cfg) {
  qrs_ensemble* e = nullptr;
  if (cfg.ensemble_path.empty()) {
    check(qrs_ensemble_ideal(&e));
  } else {
    check(qrs_ensemble_load_json(cfg.ensemble_path.c_str(), &e));
  }
  return EnsemblePtr(e);
}

// "auto" resolves to max(r*, 1) for the configured ensemble.
double resolve_r(const RunConfig& cfg, const qrs_ensemble* e) {
  if (cfg.r == "auto") {
    double r = 0.0;
    check(qrs_rstar_legal(e, &r));
    return r;
  }
  try {
    std::size_t used = 0;
    const double r = std::stod(cfg.r, &used);
    if (used != cfg.r.size() || !(r >= 0.0)) throw std::invalid_argument("r");
    return r;
  } catch (const std::exception&) {
    throw CliError{kExitInvalid, "--r must be a number >= 0 or 'auto', got '" + cfg.r + "'"};
  }
}

// Writes to --out when given, else stdout.
void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw CliError{kExitFailure, "cannot write '" + cfg.output_path + "'"};
  out << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kExitFailure, "cannot write '" + path + "'"};
  out << text;
}

std::string regime_label(double w, double r) {
  qrs_regime regime{};
  check(qrs_regime_classify(w, r, &regime));
  return qrs_regime_name(regime);
}

void require_format(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") {
    throw CliError{kExitInvalid, "--format must be csv or json"};
  }
}

int cmd_payoff(const RunConfig& cfg) {
  require_format(cfg);
  const EnsemblePtr ensemble = load_ensemble(cfg);
  const double r = resolve_r(cfg, ensemble.get());
  double exact = 0.0;
  check(qrs_exact_payoff_werner(cfg.w, r, cfg.visibility, ensemble.get(), &exact));
  const double reference = qrs_payoff_reference(cfg.w, r);
  const std::string label = regime_label(cfg.w, r);

  std::optional<std::pair<double, double>> estimate;
  if (cfg.n_per_setting > 0) {
    qrs_tally* raw = nullptr;
    check(qrs_simulate_werner(cfg.w, r, cfg.visibility, ensemble.get(), cfg.n_per_setting, cfg.seed, &raw));
    const TallyPtr tally(raw);
    double value = 0.0;
    double std_error = 0.0;
    check(qrs_tally_estimate(tally.get(), r, &value, &std_error));
    estimate.emplace(value, std_error);
  }

  std::ostringstream out;
  if (cfg.format == "json") {
    out << "{\n  \"W\": " << fmt(cfg.w) << ",\n  \"r\": " << fmt(r) << ",\n  \"visibility\": " << fmt(cfg.visibility)
        << ",\n  \"exact_payoff\": " << fmt(exact) << ",\n  \"reference_payoff\": " << fmt(reference)
        << ",\n  \"regime\": \"" << label << "\"";
    if (estimate) {
      out << ",\n  \"estimate\": {\"value\": " << fmt(estimate->first) << ", \"stderr\": " << fmt(estimate->second)
          << ", \"n_per_setting\": " << cfg.n_per_setting << ", \"seed\": " << cfg.seed << "}";
    }
    out << "\n}\n";
  } else {
    out << "quantity,value\n";
    out << "W," << fmt(cfg.w) << "\n";
    out << "r," << fmt(r) << "\n";
    out << "visibility," << fmt(cfg.visibility) << "\n";
    out << "exact_payoff," << fmt(exact) << "\n";
    out << "reference_payoff," << fmt(reference) << "\n";
    out << "regime," << label << "\n";
    if (estimate) {
      out << "estimate," << fmt(estimate->first) << "\n";
      out << "estimate_stderr," << fmt(estimate->second) << "\n";
    }
  }
  emit(cfg, out.str());
  return kExitOk;
}

int cmd_calibrate(const RunConfig& cfg) {
  if (cfg.ensemble_path.empty() == cfg.counts_path.empty()) {
    throw CliError{kExitInvalid, "calibrate needs exactly one of --ensemble or --counts"};
  }
  EnsemblePtr ensemble;
  CountsPtr counts;
  if (!cfg.ensemble_path.empty()) {
    ensemble = load_ensemble(cfg);
  } else {
    qrs_counts* raw = nullptr;
    check(qrs_counts_load_csv(cfg.counts_path.c_str(), &raw));
    counts.reset(raw);
  }
  qrs_report* raw_report = nullptr;
  check(qrs_calibrate(ensemble.get(), counts.get(), cfg.trials, cfg.seed, &raw_report));
  const ReportPtr report(raw_report);
  char* json = nullptr;
  check(qrs_report_to_json(report.get(), &json));
  const StringPtr text(json);
  emit(cfg, std::string(text.get()) + "\n");
  return kExitOk;
}

std::vector<double> sweep_grid(const RunConfig& cfg) {
  std::vector<double> grid = cfg.grid;
  if (cfg.grid_from || cfg.grid_to || cfg.grid_steps > 0) {
    if (!cfg.grid_from || !cfg.grid_to || cfg.grid_steps < 1) {
      throw CliError{kExitInvalid, "--from, --to and --steps must be given together"};
    }
    const double lo = *cfg.grid_from;
    const double hi = *cfg.grid_to;
    for (int i = 0; i < cfg.grid_steps; ++i) {
      grid.push_back(cfg.grid_steps == 1 ? lo : lo + (hi - lo) * i / (cfg.grid_steps - 1));
    }
  }
  if (grid.empty()) throw CliError{kExitInvalid, "sweep grid is empty"};
  for (double w : grid) {
    if (!(w >= 0.0 && w <= 1.0)) throw CliError{kExitInvalid, "sweep grid values must lie in [0, 1]"};
  }
  return grid;
}

int cmd_sweep(const RunConfig& cfg) {
  require_format(cfg);
  const std::vector<double> grid = sweep_grid(cfg);
  const EnsemblePtr ensemble = load_ensemble(cfg);
  const double r = resolve_r(cfg, ensemble.get());

  std::ostringstream out;
  if (cfg.format == "csv") {
    out << "# r=" << fmt(r) << " visibility=" << fmt(cfg.visibility) << "\n";
    out << "# threshold game r/sqrt(3)=" << fmt(r / std::sqrt(3.0)) << "\n";
    out << "# threshold bell_local=0.6595\n";
    out << "# threshold vertesi=0.7056\n";
    out << "# threshold chsh 1/sqrt(2)=" << fmt(1.0 / std::sqrt(2.0)) << "\n";
    out << "W,exact_payoff,regime\n";
  } else {
    out << "{\n  \"r\": " << fmt(r) << ",\n  \"visibility\": " << fmt(cfg.visibility)
        << ",\n  \"thresholds\": {\"game\": " << fmt(r / std::sqrt(3.0))
        << ", \"bell_local\": 0.6595, \"vertesi\": 0.7056, \"chsh\": " << fmt(1.0 / std::sqrt(2.0))
        << "},\n  \"rows\": [";
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double payoff = 0.0;
    check(qrs_exact_payoff_werner(grid[i], r, cfg.visibility, ensemble.get(), &payoff));
    const std::string label = regime_label(grid[i], r);
    if (cfg.format == "csv") {
      out << fmt(grid[i]) << "," << fmt(payoff) << "," << label << "\n";
    } else {
      out << (i == 0 ? "\n" : ",\n") << "    {\"W\": " << fmt(grid[i]) << ", \"exact_payoff\": " << fmt(payoff)
          << ", \"regime\": \"" << label << "\"}";
    }
  }
  if (cfg.format == "json") out << "\n  ]\n}\n";
  emit(cfg, out.str());
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg) {
  if (cfg.n_per_setting < 1) throw CliError{kExitInvalid, "simulate needs --n >= 1"};
  if (cfg.output_path.empty()) throw CliError{kExitInvalid, "simulate needs --out <tally.csv>"};
  const EnsemblePtr ensemble = load_ensemble(cfg);
  const double r = resolve_r(cfg, ensemble.get());
  qrs_tally* raw = nullptr;
  check(qrs_simulate_werner(cfg.w, r, cfg.visibility, ensemble.get(), cfg.n_per_setting, cfg.seed, &raw));
  const TallyPtr tally(raw);

  char* csv = nullptr;
  check(qrs_tally_to_csv(tally.get(), &csv));
  const StringPtr csv_text(csv);
  write_file(cfg.output_path, csv_text.get());

  char* json = nullptr;
  check(qrs_tally_estimate_json(tally.get(), r, &json));
  const StringPtr json_text(json);
  const std::string estimate = std::string(json_text.get()) + "\n";
  if (!cfg.estimate_path.empty()) write_file(cfg.estimate_path, estimate);
  std::cout << estimate;
  return kExitOk;
}

int cmd_estimate(const RunConfig& cfg) {
  if (cfg.tallies_path.empty()) throw CliError{kExitInvalid, "estimate needs --tallies <tally.csv>"};
  const EnsemblePtr ensemble = load_ensemble(cfg);
  const double r = resolve_r(cfg, ensemble.get());
  qrs_tally* raw = nullptr;
  check(qrs_tally_load_csv(cfg.tallies_path.c_str(), &raw));
  const TallyPtr tally(raw);
  char* json = nullptr;
  check(qrs_tally_estimate_json(tally.get(), r, &json));
  const StringPtr text(json);
  emit(cfg, std::string(text.get()) + "\n");
  return kExitOk;
}

int cmd_chsh(const RunConfig& cfg, bool have_r) {
  require_format(cfg);
  double s = 0.0;
  check(qrs_chsh_werner(cfg.w, &s));
  std::optional<std::pair<double, std::string>> regime;
  if (have_r) {
    const EnsemblePtr ensemble = load_ensemble(cfg);
    const double r = resolve_r(cfg, ensemble.get());
    regime.emplace(r, regime_label(cfg.w, r));
  }
  std::ostringstream out;
  const bool violates = s > 2.0;
  if (cfg.format == "json") {
    out << "{\n  \"W\": " << fmt(cfg.w) << ",\n  \"chsh\": " << fmt(s) << ",\n  \"classical_bound\": 2"
        << ",\n  \"violates\": " << (violates ? "true" : "false");
    if (regime) out << ",\n  \"r\": " << fmt(regime->first) << ",\n  \"regime\": \"" << regime->second << "\"";
    out << "\n}\n";
  } else {
    out << "quantity,value\nW," << fmt(cfg.w) << "\nchsh," << fmt(s) << "\nclassical_bound,2\nviolates,"
        << (violates ? "true" : "false") << "\n";
    if (regime) out << "r," << fmt(regime->first) << "\nregime," << regime->second << "\n";
  }
  emit(cfg, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-refereed steering game simulator"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_state_flags = [&](CLI::App* sub) {
    sub->add_option("--W", cfg.w, "Werner parameter W in [0, 1]");
    sub->add_option("--r", cfg.r, "calibration parameter r, or 'auto' for max(r*, 1)");
    sub->add_option("--visibility", cfg.visibility, "partial Bell-measurement visibility in [0, 1]");
    sub->add_option("--ensemble", cfg.ensemble_path, "referee ensemble JSON (default: ideal)");
  };

  CLI::App* payoff = app.add_subcommand("payoff", "exact payoff, reference value and regime");
  add_state_flags(payoff);
  payoff->add_option("--n", cfg.n_per_setting, "Monte Carlo runs per setting (0 = none)");
  payoff->add_option("--seed", cfg.seed, "random seed");
  payoff->add_option("--format", cfg.format, "csv or json");
  payoff->add_option("--out", cfg.output_path, "output path (default: stdout)");

  CLI::App* calibrate = app.add_subcommand("calibrate", "compute r* and write a calibration report");
  calibrate->add_option("--ensemble", cfg.ensemble_path, "referee ensemble JSON");
  calibrate->add_option("--counts", cfg.counts_path, "tomography counts CSV");
  calibrate->add_option("--trials", cfg.trials, "bootstrap trials when --counts is given (0 = skip)");
  calibrate->add_option("--seed", cfg.seed, "bootstrap seed");
  calibrate->add_option("--out", cfg.output_path, "report path (default: stdout)");
  calibrate->add_option("--format", cfg.format, "json");

  CLI::App* sweep = app.add_subcommand("sweep", "exact payoff over a grid of W");
  add_state_flags(sweep);
  sweep->add_option("--grid", cfg.grid, "comma-separated W values")->delimiter(',');
  sweep->add_option("--from", cfg.grid_from, "first W of an evenly spaced grid");
  sweep->add_option("--to", cfg.grid_to, "last W of an evenly spaced grid");
  sweep->add_option("--steps", cfg.grid_steps, "number of grid points");
  sweep->add_option("--format", cfg.format, "csv or json");
  sweep->add_option("--out", cfg.output_path, "output path (default: stdout)");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo tallies and payoff estimate");
  add_state_flags(simulate);
  simulate->add_option("--n", cfg.n_per_setting, "runs per setting");
  simulate->add_option("--seed", cfg.seed, "random seed");
  simulate->add_option("--out", cfg.output_path, "tally CSV path");
  simulate->add_option("--estimate-out", cfg.estimate_path, "also write the estimate JSON here");
  simulate->add_option("--format", cfg.format, "csv");

  CLI::App* estimate = app.add_subcommand("estimate", "payoff estimate from a tally CSV");
  estimate->add_option("--tallies", cfg.tallies_path, "tally CSV path");
  estimate->add_option("--r", cfg.r, "calibration parameter r, or 'auto'");
  estimate->add_option("--ensemble", cfg.ensemble_path, "referee ensemble JSON used by --r auto");
  estimate->add_option("--out", cfg.output_path, "output path (default: stdout)");

  CLI::App* chsh = app.add_subcommand("chsh", "maximal CHSH value of a Werner state");
  chsh->add_option("--W", cfg.w, "Werner parameter W in [0, 1]");
  CLI::Option* chsh_r = chsh->add_option("--r", cfg.r, "also classify the regime at this r");
  chsh->add_option("--ensemble", cfg.ensemble_path, "referee ensemble JSON used by --r auto");
  chsh->add_option("--format", cfg.format, "csv or json");
  chsh->add_option("--out", cfg.output_path, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (payoff->parsed()) return cmd_payoff(cfg);
    if (calibrate->parsed()) return cmd_calibrate(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (estimate->parsed()) return cmd_estimate(cfg);
    if (chsh->parsed()) return cmd_chsh(cfg, chsh_r->count() > 0);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  }
  return kExitInvalid;
}
