// Copyright 2026 The qest Authors
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

#pragma once

#include <span>
#include <string>
#include <vector>

#include "qest/measurement.hpp"
#include "qest/simulator.hpp"

namespace qest {

/// Shortest round-trip decimal form, '.' separator regardless of locale.
std::string format_double(double v);

/// {"dim": q, "elements": [{"label": ..., "op": [[[re, im], ...], ...]}, ...],
///  "provenance": [{"branch": i, "probability": p}, ...]}  (provenance optional)
/// Operator rows are row-major.
std::string povm_to_json(const Povm &m, int indent = -1);
Povm povm_from_json(const std::string &text);

/// Bases as column vectors plus the orthonormality/overlap report.
std::string mub_family_to_json(const MubFamily &f, int indent = -1);

inline constexpr const char *kMcCsvHeader = "m,estimator,meanBures,seBures,meanSq,seSq,cOpt,cTomo";

/// One row per (summary, checkpoint) under kMcCsvHeader.
std::string mc_summary_to_csv(std::span<const McSummary> summaries);
std::string mc_summary_to_json(std::span<const McSummary> summaries, int indent = -1);

/// Inverse of mc_summary_to_csv for the numeric columns; the returned
/// summaries carry reps = 0 and no failure counts.
std::vector<McSummary> mc_summary_from_csv(const std::string &text);

}  // namespace qest
