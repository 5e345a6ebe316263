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
#include <cstdint>
#include <string_view>
#include <vector>

#include "cellless/random_stream.hpp"

namespace cellless {

using BsId = std::uint32_t;
using MtId = std::uint32_t;

enum class BsState : std::uint8_t { Sleeping, Listening, Ready, Transferring };

inline constexpr std::size_t kBsStateCount = 4;

std::string_view to_string(BsState state) noexcept;

// Consumed power per BS state, milliwatts.
struct StatePower {
    double sleeping_mw = 10.0;
    double listening_mw = 50.0;
    double ready_mw = 80.0;
    double transferring_mw = 200.0;

    double of(BsState state) const noexcept;
    bool operator==(const StatePower&) const = default;
};

// Every tunable constant of a run. Defaults are the 50 m x 50 m,
// 50-BS desk-scale scenario.
struct ScenarioConfig {
    double area_side_m = 50.0;
    std::size_t n_bs = 50;
    std::size_t n_busy_bs = 30;       // pre-assigned to other users' groups
    std::size_t n_candidates = 10;    // nearest BSs eligible for grouping
    std::size_t max_group_size = 3;
    StatePower state_power_mw;
    double bs_tx_power_mw = 200.0;
    double mt_tx_power_mw = 100.0;
    double path_loss_exponent = 4.0;
    double reference_distance_m = 1.0;
    double noise_power_mw = 1e-7;     // -40 dBm
    double min_distance_m = 0.5;
    std::size_t n_trials = 10000;
    std::uint64_t seed = 1;

    // Throws ConfigError naming the first violated field.
    void validate() const;

    bool operator==(const ScenarioConfig&) const = default;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

double distance(Point a, Point b) noexcept;

struct Deployment {
    std::vector<Point> bs_positions;
    std::vector<Point> mt_positions;  // typical user at index 0
    std::vector<BsState> bs_states;
    std::vector<std::uint32_t> bs_load;

    std::size_t n_bs() const noexcept { return bs_positions.size(); }
    std::size_t n_mt() const noexcept { return mt_positions.size(); }

    bool operator==(const Deployment&) const = default;
};

inline constexpr MtId kTypicalUser = 0;

// Uniform i.i.d. BS placement on the square with rejection resampling for
// min_distance_m (between BSs and against every MT), typical user at the
// centre, n_busy_bs BSs drawn without replacement as Transferring with
// load 1, the rest Ready. extra_mts additional MTs are drawn uniformly
// after the BSs. Throws PlacementFailure when rejection sampling exceeds
// 10 * n_bs^2 attempts.
Deployment generate_deployment(const ScenarioConfig& cfg, RandomStream& stream,
                               std::size_t extra_mts = 0);

// BS ids by ascending distance to the MT, ties by ascending id; first k.
std::vector<BsId> nearest_candidates(const Deployment& dep, MtId mt, std::size_t k);

} // namespace cellless
