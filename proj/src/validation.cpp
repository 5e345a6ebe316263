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

#include "cellless/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "cellless/channel.hpp"
#include "cellless/controller.hpp"
#include "cellless/errors.hpp"
#include "cellless/experiments.hpp"
#include "cellless/report.hpp"

namespace cellless {

ValidationCheck validate_grouping(const ScenarioConfig& cfg, std::size_t instances) {
    std::size_t matched = 0;
    std::string first_mismatch;
    for (std::size_t i = 0; i < instances; ++i) {
        RandomStream stream(cfg.seed, "validate-grouping", i);
        const Deployment dep = generate_deployment(cfg, stream);
        const ChannelSample ch = ChannelSample::draw(dep, cfg, stream);
        const Direction direction = (i % 2 == 0) ? Direction::Downlink : Direction::Uplink;
        const std::vector<BsId> candidates = nearest_candidates(dep, kTypicalUser, cfg.n_candidates);

        const CoopGroup ceiling = oracle_min_group(candidates, kMaximizeRate, direction, kTypicalUser, dep, ch, cfg);
        const double demand = stream.uniform(0.0, 1.25) * ceiling.achieved_rate;

        const CoopGroup greedy = form_group(kTypicalUser, demand, direction, dep, ch, cfg, nullptr);
        const CoopGroup oracle = oracle_min_group(candidates, demand, direction, kTypicalUser, dep, ch, cfg);
        if (greedy.sorted_members() == oracle.members && greedy.best_effort == oracle.best_effort) {
            ++matched;
        } else if (first_mismatch.empty()) {
            first_mismatch = "; first mismatch at instance " + std::to_string(i);
        }
    }
    return {"greedy vs exhaustive grouping", matched == instances,
            std::to_string(matched) + "/" + std::to_string(instances) + " instances match" + first_mismatch};
}

ValidationCheck validate_power_solver(const ScenarioConfig& cfg, std::size_t instances) {
    double worst = 0.0;
    for (std::size_t i = 0; i < instances; ++i) {
        RandomStream stream(cfg.seed, "validate-power", i);
        const Deployment dep = generate_deployment(cfg, stream);
        const ChannelSample ch = ChannelSample::draw(dep, cfg, stream);
        const std::size_t size = 1 + stream.below(cfg.n_candidates);
        const std::vector<BsId> group = mt_energy_group(dep, ch, cfg, size);
        const BsId nearest[] = {group.front()};

        const double target = spectral_efficiency(
            uplink_joint_snr(cfg.mt_tx_power_mw, kTypicalUser, nearest, dep, ch, cfg));
        const double closed = equal_rate_power(cfg.mt_tx_power_mw, group_gain_sum(kTypicalUser, nearest, dep, ch),
                                               group_gain_sum(kTypicalUser, group, dep, ch));
        const double bisected = oracle_power_solve(group, target, kTypicalUser, dep, ch, cfg);
        worst = std::max(worst, std::abs(bisected - closed) / closed);
    }
    std::ostringstream detail;
    detail << instances << " instances, max relative error " << format_number(worst) << " (limit 1e-09)";
    return {"bisection vs closed-form MT power", worst < 1e-9, detail.str()};
}

ValidationCheck validate_state_machine(const ScenarioConfig& cfg) {
    using S = BsState;
    // Independent copy of the adjacency rules.
    static constexpr std::array<std::pair<S, S>, 7> kLegal{{
        {S::Sleeping, S::Listening},
        {S::Listening, S::Sleeping},
        {S::Listening, S::Ready},
        {S::Ready, S::Listening},
        {S::Ready, S::Transferring},
        {S::Ready, S::Sleeping},
        {S::Transferring, S::Ready},
    }};
    constexpr std::array<S, 4> kStates{S::Sleeping, S::Listening, S::Ready, S::Transferring};

    enum class Outcome { Ok, Illegal, Busy, Other };
    auto attempt = [](Deployment dep, S to) {
        try {
            apply_transition(dep, 0, to);
            return dep.bs_states[0] == to ? Outcome::Ok : Outcome::Other;
        } catch (const BusyBs&) {
            return Outcome::Busy;
        } catch (const IllegalTransition&) {
            return Outcome::Illegal;
        } catch (...) {
            return Outcome::Other;
        }
    };

    std::size_t cases = 0, failures = 0;
    for (S from : kStates) {
        for (S to : kStates) {
            Deployment dep;
            dep.bs_positions = {{0.0, 0.0}};
            dep.bs_states = {from};
            dep.bs_load = {0};
            const bool legal = std::find(kLegal.begin(), kLegal.end(), std::pair{from, to}) != kLegal.end();
            ++cases;
            failures += attempt(dep, to) != (legal ? Outcome::Ok : Outcome::Illegal);

            if (from == S::Transferring) {
                dep.bs_load = {1};
                ++cases;
                failures += attempt(dep, to) != (to == from ? Outcome::Illegal : Outcome::Busy);
            }
        }
    }

    const StatePower& p = cfg.state_power_mw;
    const StatePower defaults;
    const bool powers_ok = defaults.of(S::Sleeping) == 10.0 && defaults.of(S::Listening) == 50.0 &&
                           defaults.of(S::Ready) == 80.0 && defaults.of(S::Transferring) == 200.0;
    std::ostringstream detail;
    detail << cases << " transition cases, " << failures << " mismatches; configured powers "
           << format_number(p.sleeping_mw) << "/" << format_number(p.listening_mw) << "/"
           << format_number(p.ready_mw) << "/" << format_number(p.transferring_mw) << " mW";
    return {"state-machine legality", failures == 0 && powers_ok, detail.str()};
}

ValidationCheck validate_determinism(const ScenarioConfig& cfg, std::size_t trials, std::size_t workers) {
    ScenarioConfig small = cfg;
    small.n_trials = std::min(cfg.n_trials, trials);

    auto csv_for = [&](std::string_view experiment, std::size_t n_workers) {
        RunOptions options;
        options.workers = n_workers;
        if (experiment == kCoverageLabel) {
            std::vector<double> thresholds;
            for (int t = -15; t <= 5; ++t) thresholds.push_back(t);
            return to_csv(make_report(std::string(experiment), small, run_coverage(small, thresholds, options)));
        }
        if (experiment == kBsEnergyLabel) {
            const std::vector<std::size_t> sleeping{0, 1, 2, 5, 10};
            const std::vector<std::size_t> sizes{2, 3, 4};
            return to_csv(make_report(std::string(experiment), small,
                                      run_bs_energy(small, sleeping, sizes, 10, options)));
        }
        const std::vector<std::size_t> sizes{1, 2, 3, 4, 5};
        return to_csv(make_report(std::string(experiment), small, run_mt_energy(small, sizes, options)));
    };

    std::vector<std::string> differing;
    for (std::string_view experiment : {kCoverageLabel, kBsEnergyLabel, kMtEnergyLabel}) {
        const std::string reference = csv_for(experiment, 1);
        if (csv_for(experiment, 1) != reference || csv_for(experiment, std::max<std::size_t>(workers, 2)) != reference) {
            differing.emplace_back(experiment);
        }
    }
    std::string detail = std::to_string(small.n_trials) + " trials per experiment, workers 1 vs " +
                         std::to_string(std::max<std::size_t>(workers, 2));
    for (const auto& name : differing) detail += "; differs: " + name;
    return {"determinism across worker counts", differing.empty(), detail};
}

std::vector<ValidationCheck> run_validation(const ScenarioConfig& cfg, std::size_t instances, std::size_t workers) {
    return {validate_grouping(cfg, instances), validate_power_solver(cfg, instances), validate_state_machine(cfg),
            validate_determinism(cfg, 200, workers)};
}

} // namespace cellless
