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
#include <span>
#include <string_view>
#include <vector>

#include "cellless/channel.hpp"
#include "cellless/controller.hpp"
#include "cellless/scenario.hpp"

namespace cellless {

inline constexpr std::string_view kCoverageLabel = "coverage";
inline constexpr std::string_view kBsEnergyLabel = "bs-energy";
inline constexpr std::string_view kMtEnergyLabel = "mt-energy";

// How the single-BS cellular baseline picks its server.
enum class CellularAssociation : std::uint8_t {
    NearestIdle,  // nearest idle candidate; nearest awake BS when none is idle
    NearestAny,   // nearest BS regardless of load
};

struct RunOptions {
    std::size_t workers = 1;
    bool fixed_deployment = false;  // coverage only: redraw fading, keep one deployment
    CellularAssociation cellular = CellularAssociation::NearestIdle;
    bool use_cache = true;
    bool multicast = true;
    std::vector<GroupEvent>* events = nullptr;  // trial order
};

// 95% half-widths, normal approximation.
double proportion_ci95(double p, std::size_t n) noexcept;
double mean_ci95(std::span<const double> samples) noexcept;

// ---- coverage -------------------------------------------------------------

struct CoverageCurve {
    std::vector<double> thresholds_db;
    std::vector<double> cellular_prob;
    std::vector<double> cellular_ci95;
    std::vector<double> cellless_prob;
    std::vector<double> cellless_ci95;
    std::size_t n_trials = 0;
};

struct CoverageTrial {
    double cellular_sinr = 0.0;
    double cellless_sinr = 0.0;
    BsId nearest_bs = 0;
    bool nearest_idle = false;
    BsId cellular_bs = 0;
    CoopGroup cellless_group;
};

// One trial on identical random draws for both arms.
CoverageTrial coverage_trial(const ScenarioConfig& cfg, std::uint64_t trial, const RunOptions& options = {},
                             std::vector<GroupEvent>* events = nullptr);

// Coverage(tau) = fraction of trials with SINR >= tau for the single-BS
// cellular arm and the max-size cooperative group. Thresholds must be
// ascending. Throws PlacementFailure from deployment generation.
CoverageCurve run_coverage(const ScenarioConfig& cfg, std::span<const double> thresholds_db,
                           const RunOptions& options = {});

// ---- BS energy ------------------------------------------------------------

struct BsEnergyCurve {
    std::vector<std::size_t> sleeping_counts;
    std::vector<std::size_t> group_sizes;
    // saving[k_index][s_index], mean fractional saving over trials.
    std::vector<std::vector<double>> saving;
    std::vector<std::vector<double>> ci95;
    std::size_t n_users = 0;
    std::size_t n_trials = 0;
};

struct BsEnergyTrial {
    std::vector<double> baseline_mw;            // per k
    std::vector<std::vector<double>> total_mw;  // [k][s]
    std::vector<std::vector<double>> saving;    // [k][s]
};

// Closed-form bookkeeping: s * (P_listening - P_sleeping) / P_base(k) with
// P_base(k) = n_users*k*P_transferring + (n_bs - n_users*k)*P_listening.
double bs_energy_closed_form(const ScenarioConfig& cfg, std::size_t sleeping, std::size_t group_size,
                             std::size_t n_users);

BsEnergyTrial bs_energy_trial(const ScenarioConfig& cfg, std::span<const std::size_t> sleeping_counts,
                              std::span<const std::size_t> group_sizes, std::size_t n_users, std::uint64_t trial,
                              const RunOptions& options = {}, std::vector<GroupEvent>* events = nullptr);

// Throws InfeasibleConfig unless n_users*k + s <= n_bs for every (s, k).
BsEnergyCurve run_bs_energy(const ScenarioConfig& cfg, std::span<const std::size_t> sleeping_counts,
                            std::span<const std::size_t> group_sizes = std::vector<std::size_t>{2, 3, 4},
                            std::size_t n_users = 10, const RunOptions& options = {});

// ---- MT energy ------------------------------------------------------------

struct MtEnergyCurve {
    std::vector<std::size_t> group_sizes;
    std::vector<double> saving;
    std::vector<double> ci95;
    std::size_t n_trials = 0;
};

struct MtEnergyTrial {
    BsId nearest_bs = 0;
    double baseline_rate = 0.0;                 // bit/s/Hz at mt_tx_power_mw, nearest BS only
    std::vector<std::vector<BsId>> groups;      // per N
    std::vector<double> power_mw;               // equal-rate power per N
    std::vector<double> saving;                 // per N
};

// Equal-rate power for noise-limited MRC: base_power * base_gain / group_gain.
double equal_rate_power(double base_power_mw, double base_gain_sum, double group_gain_sum) noexcept;

// group(N) = nearest BS followed by the N-1 strongest-gain other candidates.
std::vector<BsId> mt_energy_group(const Deployment& dep, const ChannelSample& ch, const ScenarioConfig& cfg,
                                  std::size_t group_size);

MtEnergyTrial mt_energy_trial(const ScenarioConfig& cfg, std::span<const std::size_t> group_sizes,
                              std::uint64_t trial);

// group_sizes ascending within [1, n_candidates].
MtEnergyCurve run_mt_energy(const ScenarioConfig& cfg, std::span<const std::size_t> group_sizes,
                            const RunOptions& options = {});

// ---- oracles --------------------------------------------------------------

// Exhaustive minimum-cardinality group over subsets of the idle candidates
// (at most 12 candidates). Ties: higher rate, then lexicographic sorted ids.
// With no feasible subset: highest-rate subset at the largest size, best
// effort. With no idle candidate: nearest awake BS, best effort.
// Members are returned in ascending id order.
CoopGroup oracle_min_group(std::span<const BsId> candidates, double demand_rate, Direction direction, MtId mt,
                           const Deployment& dep, const ChannelSample& ch, const ScenarioConfig& cfg);

// Bisection (geometric midpoint) over [1e-6, 1e6] mW for the uplink MT power
// that reaches target_rate with the given group.
double oracle_power_solve(std::span<const BsId> group, double target_rate, MtId mt, const Deployment& dep,
                          const ChannelSample& ch, const ScenarioConfig& cfg);

} // namespace cellless
