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

#include <cstddef>
#include <string>
#include <vector>

#include "cellless/scenario.hpp"

namespace cellless {

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Greedy grouping vs exhaustive search, random demand in [0, 1.25 x best
// achievable], both directions.
ValidationCheck validate_grouping(const ScenarioConfig& cfg, std::size_t instances);

// Bisection vs closed-form equal-rate MT power, relative error < 1e-9.
ValidationCheck validate_power_solver(const ScenarioConfig& cfg, std::size_t instances);

// Exhaustive 4x4 (from, to) x load {0, 1} against the adjacency table.
ValidationCheck validate_state_machine(const ScenarioConfig& cfg);

// Each experiment run with 1 and several workers, then repeated; CSV bytes
// must match. Uses min(cfg.n_trials, trials) trials.
ValidationCheck validate_determinism(const ScenarioConfig& cfg, std::size_t trials, std::size_t workers);

std::vector<ValidationCheck> run_validation(const ScenarioConfig& cfg, std::size_t instances, std::size_t workers);

} // namespace cellless
