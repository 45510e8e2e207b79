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

#ifndef QRS_IO_HPP_
#define QRS_IO_HPP_

#include <iosfwd>
#include <string>

#include "qrs/game.hpp"
#include "qrs/states.hpp"
#include "qrs/witness.hpp"

// File formats. All readers throw Error(kParse) on malformed input.
//
//   ensemble JSON  {"vectors": [{"j": 1, "s": 1, "n": [x, y, z]}, ...]}
//   tally CSV      j,s,a,b,count     (s, a as +1/-1; b as 0/1; nonzero cells)
//   counts CSV     j,s,axis,outcome,count

namespace qrs::io {

RefereeEnsemble read_ensemble_json(std::istream& in);
RefereeEnsemble parse_ensemble_json(const std::string& text);
std::string ensemble_to_json(const RefereeEnsemble& ensemble);

TallyTable read_tally_csv(std::istream& in);
void write_tally_csv(std::ostream& out, const TallyTable& tallies);

CountRecord read_counts_csv(std::istream& in);
void write_counts_csv(std::ostream& out, const CountRecord& record);

std::string report_to_json(const CalibrationReport& report);
std::string estimate_to_json(const PayoffEstimate& estimate);

RefereeEnsemble load_ensemble_file(const std::string& path);
TallyTable load_tally_file(const std::string& path);
CountRecord load_counts_file(const std::string& path);

}  // namespace qrs::io

#endif  // QRS_IO_HPP_
