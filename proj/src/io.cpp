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

#include "qrs/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace qrs::io {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::kParse, what); }

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::int64_t parse_int(const std::string& field, int line_no) {
  std::string_view view = field;
  if (!view.empty() && view.front() == '+') view.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), value);
  if (ec != std::errc() || ptr != view.data() + view.size() || view.empty()) {
    parse_error("line " + std::to_string(line_no) + ": '" + field + "' is not an integer");
  }
  return value;
}

// Reads data rows of a CSV whose header must equal `header`; blank lines and
// '#' comments are skipped.
template <typename RowFn>
void read_csv(std::istream& in, const std::string& header, RowFn&& on_row) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  const std::size_t width = split_fields(header).size();
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!have_header) {
      if (split_fields(t) != split_fields(header)) parse_error("expected CSV header '" + header + "'");
      have_header = true;
      continue;
    }
    const auto fields = split_fields(t);
    if (fields.size() != width) {
      parse_error("line " + std::to_string(line_no) + ": expected " + std::to_string(width) + " fields");
    }
    std::vector<std::int64_t> values;
    for (const auto& f : fields) values.push_back(parse_int(f, line_no));
    try {
      on_row(values);
    } catch (const Error& e) {
      parse_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) parse_error("missing CSV header '" + header + "'");
}

const char* signed_label(int v) { return v > 0 ? "+1" : "-1"; }

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  return in;
}

json bootstrap_json(const BootstrapResult& b) {
  return json{{"mean", b.mean}, {"std", b.std_dev}, {"failures", b.failures}, {"trials", b.trials}};
}

}  // namespace

RefereeEnsemble parse_ensemble_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    parse_error(std::string("invalid ensemble JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vectors") || !doc["vectors"].is_array()) {
    parse_error("ensemble JSON needs an array under \"vectors\"");
  }
  std::vector<std::pair<RefereeKey, BlochVector>> entries;
  for (const json& rec : doc["vectors"]) {
    if (!rec.is_object() || !rec.contains("j") || !rec.contains("s") || !rec.contains("n") ||
        !rec["j"].is_number_integer() || !rec["s"].is_number_integer() || !rec["n"].is_array() ||
        rec["n"].size() != 3) {
      parse_error("each ensemble record needs integer \"j\", \"s\" and a 3-element \"n\"");
    }
    BlochVector n;
    try {
      n = {rec["n"][0].get<double>(), rec["n"][1].get<double>(), rec["n"][2].get<double>()};
    } catch (const json::exception&) {
      parse_error("Bloch vector components must be numbers");
    }
    entries.emplace_back(RefereeKey{rec["j"].get<int>(), rec["s"].get<int>()}, n);
  }
  try {
    return RefereeEnsemble::from_entries(entries);
  } catch (const Error& e) {
    parse_error(std::string("invalid ensemble: ") + e.what());
  }
}

RefereeEnsemble read_ensemble_json(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_ensemble_json(buffer.str());
}

std::string ensemble_to_json(const RefereeEnsemble& ensemble) {
  json vectors = json::array();
  for (const RefereeKey& key : referee_keys()) {
    const BlochVector& n = ensemble.at(key);
    vectors.push_back({{"j", key.j}, {"s", key.s}, {"n", {n.x, n.y, n.z}}});
  }
  return json{{"vectors", vectors}}.dump(2);
}

TallyTable read_tally_csv(std::istream& in) {
  TallyTable tallies;
  read_csv(in, "j,s,a,b,count", [&](const std::vector<std::int64_t>& v) {
    tallies.add(RefereeKey{static_cast<int>(v[0]), static_cast<int>(v[1])}, static_cast<int>(v[2]),
                static_cast<int>(v[3]), v[4]);
  });
  return tallies;
}

void write_tally_csv(std::ostream& out, const TallyTable& tallies) {
  out << "j,s,a,b,count\n";
  for (const RefereeKey& key : referee_keys()) {
    for (int a : {1, -1}) {
      for (int b : {1, 0}) {
        const std::int64_t c = tallies.count(key, a, b);
        if (c != 0) out << key.j << ',' << signed_label(key.s) << ',' << signed_label(a) << ',' << b << ',' << c << '\n';
      }
    }
  }
}

CountRecord read_counts_csv(std::istream& in) {
  CountRecord record;
  read_csv(in, "j,s,axis,outcome,count", [&](const std::vector<std::int64_t>& v) {
    record.add(RefereeKey{static_cast<int>(v[0]), static_cast<int>(v[1])}, static_cast<int>(v[2]),
               static_cast<int>(v[3]), v[4]);
  });
  return record;
}

void write_counts_csv(std::ostream& out, const CountRecord& record) {
  out << "j,s,axis,outcome,count\n";
  for (const RefereeKey& key : referee_keys()) {
    for (int axis = 1; axis <= 3; ++axis) {
      for (int outcome : {1, -1}) {
        out << key.j << ',' << signed_label(key.s) << ',' << axis << ',' << signed_label(outcome) << ','
            << record.count(key, axis, outcome) << '\n';
      }
    }
  }
}

std::string report_to_json(const CalibrationReport& report) {
  json clipped = json::array();
  for (const RefereeKey& key : report.clipped_keys) clipped.push_back({key.j, key.s});
  json bounds = json::array();
  for (const auto& [r, bound] : report.bound_at_r) bounds.push_back({{"r", r}, {"bound", bound}});
  json doc = {
      {"r_star_oracle", report.r_star_oracle},
      {"r_star_printed", report.r_star_printed ? json(*report.r_star_printed) : json(nullptr)},
      {"r_star_legal", report.r_star_legal},
      {"worst_assignment", report.worst_assignment},
      {"avg_fidelity", report.avg_fidelity},
      {"clipped_keys", clipped},
      {"bound_at_r", bounds},
      {"bootstrap", report.bootstrap ? bootstrap_json(*report.bootstrap) : json(nullptr)},
  };
  return doc.dump(2);
}

std::string estimate_to_json(const PayoffEstimate& estimate) {
  json per_setting = json::array();
  for (const auto& [key, n] : estimate.n_per_setting) per_setting.push_back({{"j", key.j}, {"s", key.s}, {"n", n}});
  return json{{"value", estimate.value}, {"stderr", estimate.std_error}, {"n_per_setting", per_setting}}.dump(2);
}

RefereeEnsemble load_ensemble_file(const std::string& path) {
  auto in = open_file(path);
  return read_ensemble_json(in);
}

TallyTable load_tally_file(const std::string& path) {
  auto in = open_file(path);
  return read_tally_csv(in);
}

CountRecord load_counts_file(const std::string& path) {
  auto in = open_file(path);
  return read_counts_csv(in);
}

}  // namespace qrs::io
