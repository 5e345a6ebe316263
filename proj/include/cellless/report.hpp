// SPDX-License-Identifier: Apache-2.0
//
// cellless: Monte Carlo simulator for converged cell-less radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

#include "cellless/experiments.hpp"
#include "cellless/scenario.hpp"

namespace cellless {

using CurvePayload = std::variant<CoverageCurve, BsEnergyCurve, MtEnergyCurve>;

struct ExperimentReport {
    std::string experiment;  // coverage | bs-energy | mt-energy
    ScenarioConfig config;
    std::string config_hash;
    CurvePayload payload;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
};

// Git blob id, i.e. SHA-1 of "blob <size>\0" + text, lowercase hex.
std::string git_blob_sha1(std::string_view text);

// git_blob_sha1 of canonical_config_text(cfg).
std::string config_hash(const ScenarioConfig& cfg);

ExperimentReport make_report(std::string experiment, const ScenarioConfig& cfg, CurvePayload payload,
                             double wall_seconds = 0.0);

// `#`-prefixed metadata (experiment, config hash, seed, n_trials), one
// column-header row, then one row per curve point ascending in the sweep
// variable. %.9g numbers, '.' decimal separator, '\n' line endings.
// Wall-clock time is left out so identical runs give identical bytes.
void emit_csv(const ExperimentReport& report, std::ostream& out);
void emit_csv(const ExperimentReport& report, const std::filesystem::path& destination);
std::string to_csv(const ExperimentReport& report);

// Nested object with the same content plus the config echo and duration.
nlohmann::json to_json(const ExperimentReport& report);

// One-paragraph digest with PASS/FAIL verdicts for the curve's shape claims.
std::string summarize(const ExperimentReport& report);

// 9 significant digits, "%.9g".
std::string format_number(double value);

} // namespace cellless
