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

#include "cellless/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "cellless/errors.hpp"
#include "cellless/parallel.hpp"

namespace cellless {

namespace {

constexpr double kZ95 = 1.959963984540054;

void append_events(std::vector<GroupEvent>* sink, std::vector<std::vector<GroupEvent>>& per_trial) {
    if (sink == nullptr) return;
    for (auto& events : per_trial) {
        sink->insert(sink->end(), std::make_move_iterator(events.begin()), std::make_move_iterator(events.end()));
    }
}

} // namespace

double proportion_ci95(double p, std::size_t n) noexcept {
    if (n == 0) return 0.0;
    return kZ95 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double mean_ci95(std::span<const double> samples) noexcept {
    const std::size_t n = samples.size();
    if (n < 2) return 0.0;
    // Shifted by the first sample so identical samples give exactly zero.
    const double shift = samples[0];
    double mean = 0.0;
    for (double x : samples) mean += x - shift;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : samples) ss += (x - shift - mean) * (x - shift - mean);
    return kZ95 * std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

// ---- coverage -------------------------------------------------------------

namespace {

CoverageTrial coverage_trial_on(const ScenarioConfig& cfg, const Deployment& dep, RandomStream& stream,
                                std::uint64_t trial, const RunOptions& options,
                                std::vector<GroupEvent>* events) {
    const ChannelSample ch = ChannelSample::draw(dep, cfg, stream);

    CoverageTrial out;
    const std::vector<BsId> candidates = nearest_candidates(dep, kTypicalUser, cfg.n_candidates);
    out.nearest_bs = candidates.front();
    out.nearest_idle = is_idle(dep, out.nearest_bs);

    ControllerOptions copts;
    copts.use_cache = options.use_cache;
    copts.multicast = options.multicast;
    Controller controller(cfg, copts);
    controller.set_trial(trial);
    controller.set_event_sink(events);
    out.cellless_group = controller.form_group(kTypicalUser, kMaximizeRate, Direction::Downlink, dep, ch);
    out.cellless_sinr = downlink_sinr(kTypicalUser, out.cellless_group.members, dep, ch, cfg);

    std::optional<BsId> server;
    if (options.cellular == CellularAssociation::NearestIdle) {
        for (BsId b : candidates) {
            if (is_idle(dep, b)) {
                server = b;
                break;
            }
        }
    }
    if (!server) {
        for (BsId b : nearest_candidates(dep, kTypicalUser, dep.n_bs())) {
            if (dep.bs_states[b] != BsState::Sleeping) {
                server = b;
                break;
            }
        }
    }
    if (!server) throw NoBsAvailable("every BS is sleeping");
    out.cellular_bs = *server;
    const BsId single[] = {*server};
    out.cellular_sinr = downlink_sinr(kTypicalUser, single, dep, ch, cfg);
    return out;
}

Deployment fixed_coverage_deployment(const ScenarioConfig& cfg) {
    RandomStream stream(cfg.seed, "coverage-deployment", 0);
    return generate_deployment(cfg, stream);
}

} // namespace

CoverageTrial coverage_trial(const ScenarioConfig& cfg, std::uint64_t trial, const RunOptions& options,
                             std::vector<GroupEvent>* events) {
    cfg.validate();
    RandomStream stream(cfg.seed, kCoverageLabel, trial);
    if (options.fixed_deployment) {
        const Deployment dep = fixed_coverage_deployment(cfg);
        return coverage_trial_on(cfg, dep, stream, trial, options, events);
    }
    const Deployment dep = generate_deployment(cfg, stream);
    return coverage_trial_on(cfg, dep, stream, trial, options, events);
}

CoverageCurve run_coverage(const ScenarioConfig& cfg, std::span<const double> thresholds_db,
                           const RunOptions& options) {
    cfg.validate();
    if (!std::is_sorted(thresholds_db.begin(), thresholds_db.end())) {
        throw DomainError("run_coverage: thresholds must be sorted ascending");
    }

    const std::size_t n = cfg.n_trials;
    std::vector<double> cellular_db(n), cellless_db(n);
    std::vector<std::vector<GroupEvent>> events(options.events ? n : 0);
    std::optional<Deployment> fixed;
    if (options.fixed_deployment) fixed = fixed_coverage_deployment(cfg);

    parallel_for(n, options.workers, [&](std::size_t t) {
        RandomStream stream(cfg.seed, kCoverageLabel, t);
        auto* sink = options.events ? &events[t] : nullptr;
        const CoverageTrial r = fixed ? coverage_trial_on(cfg, *fixed, stream, t, options, sink)
                                      : coverage_trial_on(cfg, generate_deployment(cfg, stream), stream, t,
                                                          options, sink);
        cellular_db[t] = linear_to_db(r.cellular_sinr);
        cellless_db[t] = linear_to_db(r.cellless_sinr);
    });
    append_events(options.events, events);

    CoverageCurve curve;
    curve.n_trials = n;
    curve.thresholds_db.assign(thresholds_db.begin(), thresholds_db.end());
    for (double tau : thresholds_db) {
        std::size_t cellular_hits = 0, cellless_hits = 0;
        for (std::size_t t = 0; t < n; ++t) {
            cellular_hits += cellular_db[t] >= tau;
            cellless_hits += cellless_db[t] >= tau;
        }
        const double pc = static_cast<double>(cellular_hits) / static_cast<double>(n);
        const double pl = static_cast<double>(cellless_hits) / static_cast<double>(n);
        curve.cellular_prob.push_back(pc);
        curve.cellular_ci95.push_back(proportion_ci95(pc, n));
        curve.cellless_prob.push_back(pl);
        curve.cellless_ci95.push_back(proportion_ci95(pl, n));
    }
    return curve;
}

// ---- BS energy ------------------------------------------------------------

double bs_energy_closed_form(const ScenarioConfig& cfg, std::size_t sleeping, std::size_t group_size,
                             std::size_t n_users) {
    const auto& p = cfg.state_power_mw;
    const double serving = static_cast<double>(n_users * group_size);
    const double base = serving * p.transferring_mw + (static_cast<double>(cfg.n_bs) - serving) * p.listening_mw;
    return static_cast<double>(sleeping) * (p.listening_mw - p.sleeping_mw) / base;
}

namespace {

void check_bs_energy_feasible(const ScenarioConfig& cfg, std::span<const std::size_t> sleeping_counts,
                              std::span<const std::size_t> group_sizes, std::size_t n_users) {
    if (n_users == 0) throw InfeasibleConfig("bs-energy: n_users must be >= 1");
    for (std::size_t k : group_sizes) {
        if (k == 0) throw InfeasibleConfig("bs-energy: group sizes must be >= 1");
        for (std::size_t s : sleeping_counts) {
            if (n_users * k + s > cfg.n_bs) {
                throw InfeasibleConfig("bs-energy: n_users*k + s = " + std::to_string(n_users * k + s) +
                                       " exceeds n_bs = " + std::to_string(cfg.n_bs) + " (k = " +
                                       std::to_string(k) + ", s = " + std::to_string(s) + ")");
            }
        }
    }
}

} // namespace

BsEnergyTrial bs_energy_trial(const ScenarioConfig& cfg, std::span<const std::size_t> sleeping_counts,
                              std::span<const std::size_t> group_sizes, std::size_t n_users, std::uint64_t trial,
                              const RunOptions& options, std::vector<GroupEvent>* events) {
    check_bs_energy_feasible(cfg, sleeping_counts, group_sizes, n_users);

    ScenarioConfig local = cfg;
    local.n_busy_bs = 0;
    RandomStream stream(cfg.seed, kBsEnergyLabel, trial);
    const Deployment initial = generate_deployment(local, stream, n_users - 1);
    const ChannelSample ch = ChannelSample::draw(initial, local, stream);

    BsEnergyTrial out;
    for (std::size_t k : group_sizes) {
        ControllerOptions copts;
        copts.use_cache = options.use_cache;
        copts.multicast = options.multicast;
        copts.n_candidates = local.n_bs;
        copts.max_group_size = k;
        Controller controller(local, copts);
        controller.set_trial(trial);
        controller.set_event_sink(events);

        Deployment dep = initial;
        for (MtId mt = 0; mt < n_users; ++mt) {
            const CoopGroup group = controller.form_group(mt, kMaximizeRate, Direction::Downlink, dep, ch);
            if (group.members.size() != k) {
                throw InfeasibleConfig("bs-energy: MT " + std::to_string(mt) + " got " +
                                       std::to_string(group.members.size()) + " members, expected " +
                                       std::to_string(k));
            }
            controller.commit(group, dep);
        }

        std::vector<BsId> non_serving;
        for (BsId b = 0; b < dep.n_bs(); ++b) {
            if (dep.bs_states[b] != BsState::Transferring) {
                apply_transition(dep, b, BsState::Listening);
                non_serving.push_back(b);
            }
        }
        // Uniform order; sleeping the first s gives a uniform s-subset.
        for (std::size_t i = 0; i + 1 < non_serving.size(); ++i) {
            const std::size_t j = i + stream.below(non_serving.size() - i);
            std::swap(non_serving[i], non_serving[j]);
        }

        const double base = total_power_mw(dep, local);
        out.baseline_mw.push_back(base);
        auto& totals = out.total_mw.emplace_back();
        auto& savings = out.saving.emplace_back();
        for (std::size_t s : sleeping_counts) {
            Deployment slept = dep;
            for (std::size_t i = 0; i < s; ++i) apply_transition(slept, non_serving[i], BsState::Sleeping);
            const double total = total_power_mw(slept, local);
            totals.push_back(total);
            savings.push_back(1.0 - total / base);
        }
    }
    return out;
}

BsEnergyCurve run_bs_energy(const ScenarioConfig& cfg, std::span<const std::size_t> sleeping_counts,
                            std::span<const std::size_t> group_sizes, std::size_t n_users,
                            const RunOptions& options) {
    cfg.validate();
    check_bs_energy_feasible(cfg, sleeping_counts, group_sizes, n_users);
    if (!std::is_sorted(sleeping_counts.begin(), sleeping_counts.end())) {
        throw DomainError("run_bs_energy: sleeping counts must be sorted ascending");
    }

    const std::size_t n = cfg.n_trials;
    std::vector<BsEnergyTrial> trials(n);
    std::vector<std::vector<GroupEvent>> events(options.events ? n : 0);
    parallel_for(n, options.workers, [&](std::size_t t) {
        trials[t] = bs_energy_trial(cfg, sleeping_counts, group_sizes, n_users, t, options,
                                    options.events ? &events[t] : nullptr);
    });
    append_events(options.events, events);

    BsEnergyCurve curve;
    curve.sleeping_counts.assign(sleeping_counts.begin(), sleeping_counts.end());
    curve.group_sizes.assign(group_sizes.begin(), group_sizes.end());
    curve.n_users = n_users;
    curve.n_trials = n;
    std::vector<double> samples(n);
    for (std::size_t ki = 0; ki < group_sizes.size(); ++ki) {
        auto& mean_row = curve.saving.emplace_back();
        auto& ci_row = curve.ci95.emplace_back();
        for (std::size_t si = 0; si < sleeping_counts.size(); ++si) {
            double sum = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                samples[t] = trials[t].saving[ki][si];
                sum += samples[t];
            }
            mean_row.push_back(sum / static_cast<double>(n));
            ci_row.push_back(mean_ci95(samples));
        }
    }
    return curve;
}

// ---- MT energy ------------------------------------------------------------

double equal_rate_power(double base_power_mw, double base_gain_sum, double group_gain_sum) noexcept {
    return base_power_mw * (base_gain_sum / group_gain_sum);
}

std::vector<BsId> mt_energy_group(const Deployment& dep, const ChannelSample& ch, const ScenarioConfig& cfg,
                                  std::size_t group_size) {
    if (group_size < 1 || group_size > cfg.n_candidates) {
        throw DomainError("mt-energy: group size " + std::to_string(group_size) + " outside [1, n_candidates]");
    }
    std::vector<BsId> candidates = nearest_candidates(dep, kTypicalUser, cfg.n_candidates);
    const BsId nearest = candidates.front();
    std::vector<BsId> rest(candidates.begin() + 1, candidates.end());
    std::stable_sort(rest.begin(), rest.end(), [&](BsId a, BsId b) {
        const double ga = ch.gain(a, kTypicalUser);
        const double gb = ch.gain(b, kTypicalUser);
        return ga != gb ? ga > gb : a < b;
    });
    std::vector<BsId> group{nearest};
    group.insert(group.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(group_size - 1));
    return group;
}

MtEnergyTrial mt_energy_trial(const ScenarioConfig& cfg, std::span<const std::size_t> group_sizes,
                              std::uint64_t trial) {
    RandomStream stream(cfg.seed, kMtEnergyLabel, trial);
    const Deployment dep = generate_deployment(cfg, stream);
    const ChannelSample ch = ChannelSample::draw(dep, cfg, stream);

    MtEnergyTrial out;
    out.nearest_bs = nearest_candidates(dep, kTypicalUser, 1).front();
    const BsId baseline[] = {out.nearest_bs};
    const double base_gain = group_gain_sum(kTypicalUser, baseline, dep, ch);
    out.baseline_rate = spectral_efficiency(uplink_joint_snr(cfg.mt_tx_power_mw, kTypicalUser, baseline, dep, ch, cfg));

    for (std::size_t size : group_sizes) {
        std::vector<BsId> group = mt_energy_group(dep, ch, cfg, size);
        const double power = equal_rate_power(cfg.mt_tx_power_mw, base_gain, group_gain_sum(kTypicalUser, group, dep, ch));
        out.groups.push_back(std::move(group));
        out.power_mw.push_back(power);
        out.saving.push_back(1.0 - power / cfg.mt_tx_power_mw);
    }
    return out;
}

MtEnergyCurve run_mt_energy(const ScenarioConfig& cfg, std::span<const std::size_t> group_sizes,
                            const RunOptions& options) {
    cfg.validate();
    if (!std::is_sorted(group_sizes.begin(), group_sizes.end())) {
        throw DomainError("run_mt_energy: group sizes must be sorted ascending");
    }
    for (std::size_t size : group_sizes) {
        if (size < 1 || size > cfg.n_candidates) {
            throw DomainError("run_mt_energy: group size " + std::to_string(size) + " outside [1, n_candidates]");
        }
    }

    const std::size_t n = cfg.n_trials;
    std::vector<MtEnergyTrial> trials(n);
    parallel_for(n, options.workers, [&](std::size_t t) { trials[t] = mt_energy_trial(cfg, group_sizes, t); });

    MtEnergyCurve curve;
    curve.group_sizes.assign(group_sizes.begin(), group_sizes.end());
    curve.n_trials = n;
    std::vector<double> samples(n);
    for (std::size_t i = 0; i < group_sizes.size(); ++i) {
        double sum = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            samples[t] = trials[t].saving[i];
            sum += samples[t];
        }
        curve.saving.push_back(sum / static_cast<double>(n));
        curve.ci95.push_back(mean_ci95(samples));
    }
    return curve;
}

// ---- oracles --------------------------------------------------------------

CoopGroup oracle_min_group(std::span<const BsId> candidates, double demand_rate, Direction direction, MtId mt,
                           const Deployment& dep, const ChannelSample& ch, const ScenarioConfig& cfg) {
    if (candidates.size() > 12) throw DomainError("oracle_min_group: at most 12 candidates");

    CoopGroup out;
    out.direction = direction;
    out.served_mt = mt;
    out.demand_rate = demand_rate;

    std::vector<BsId> idle;
    for (BsId b : candidates) {
        if (is_idle(dep, b)) idle.push_back(b);
    }
    std::sort(idle.begin(), idle.end());

    if (idle.empty()) {
        for (BsId b : nearest_candidates(dep, mt, dep.n_bs())) {
            if (dep.bs_states[b] != BsState::Sleeping) {
                out.members = {b};
                out.achieved_rate = group_rate(direction, mt, out.members, dep, ch, cfg);
                out.best_effort = true;
                return out;
            }
        }
        throw NoBsAvailable("every BS is sleeping");
    }

    const std::size_t largest = std::min(cfg.max_group_size, idle.size());
    const std::uint32_t full = 1u << idle.size();
    for (std::size_t size = 1; size <= largest; ++size) {
        std::vector<BsId> best;
        double best_rate = -1.0;
        for (std::uint32_t mask = 1; mask < full; ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
            std::vector<BsId> subset;
            for (std::size_t i = 0; i < idle.size(); ++i) {
                if (mask & (1u << i)) subset.push_back(idle[i]);
            }
            const double rate = group_rate(direction, mt, subset, dep, ch, cfg);
            if (rate > best_rate || (rate == best_rate && subset < best)) {
                best_rate = rate;
                best = std::move(subset);
            }
        }
        if (best_rate >= demand_rate || size == largest) {
            out.members = std::move(best);
            out.achieved_rate = best_rate;
            out.best_effort = best_rate < demand_rate;
            return out;
        }
    }
    return out;
}

double oracle_power_solve(std::span<const BsId> group, double target_rate, MtId mt, const Deployment& dep,
                          const ChannelSample& ch, const ScenarioConfig& cfg) {
    if (!(target_rate > 0.0)) throw DomainError("oracle_power_solve: target rate must be > 0");
    auto rate_at = [&](double p) {
        return spectral_efficiency(uplink_joint_snr(p, mt, group, dep, ch, cfg));
    };
    double lo = 1e-6, hi = 1e6;
    if (rate_at(lo) > target_rate || rate_at(hi) < target_rate) {
        throw DomainError("oracle_power_solve: target rate outside the [1e-6, 1e6] mW bracket");
    }
    // Stop once the bracket is a few ulps wide; the rate then matches the
    // target far inside 1e-12 relative.
    for (int iter = 0; iter < 200 && hi / lo - 1.0 > 1e-15; ++iter) {
        const double mid = std::sqrt(lo * hi);
        if (rate_at(mid) < target_rate) lo = mid;
        else hi = mid;
    }
    return std::sqrt(lo * hi);
}

} // namespace cellless
