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

#include "cellless/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cellless/errors.hpp"

namespace cellless {

double path_loss(double distance_m, const ScenarioConfig& cfg) {
    if (!(distance_m >= cfg.min_distance_m)) {
        throw DomainError("path_loss: distance " + std::to_string(distance_m) +
                          " m is below min_distance_m");
    }
    const double ratio = std::max(distance_m, cfg.reference_distance_m) / cfg.reference_distance_m;
    return std::pow(ratio, -cfg.path_loss_exponent);
}

double draw_fading(RandomStream& stream) noexcept { return stream.exponential(); }

ChannelSample::ChannelSample(std::size_t n_bs, std::size_t n_mt, std::vector<double> gains)
    : n_bs_(n_bs), n_mt_(n_mt), gains_(std::move(gains)) {
    if (gains_.size() != n_bs_ * n_mt_) throw DomainError("ChannelSample: gain matrix has wrong size");
    for (double g : gains_) {
        if (!(std::isfinite(g) && g > 0.0)) throw DomainError("ChannelSample: gains must be finite and > 0");
    }
}

ChannelSample ChannelSample::draw(const Deployment& dep, const ScenarioConfig& cfg,
                                  RandomStream& stream) {
    std::vector<double> gains;
    gains.reserve(dep.n_bs() * dep.n_mt());
    for (std::size_t b = 0; b < dep.n_bs(); ++b) {
        for (std::size_t m = 0; m < dep.n_mt(); ++m) {
            const double pl = path_loss(distance(dep.bs_positions[b], dep.mt_positions[m]), cfg);
            // An exponential draw of exactly 0 has probability 2^-53; keep gains positive.
            gains.push_back(pl * std::max(draw_fading(stream), 0x1.0p-53));
        }
    }
    return ChannelSample(dep.n_bs(), dep.n_mt(), std::move(gains));
}

ChannelSample ChannelSample::mean(const Deployment& dep, const ScenarioConfig& cfg) {
    std::vector<double> gains;
    gains.reserve(dep.n_bs() * dep.n_mt());
    for (std::size_t b = 0; b < dep.n_bs(); ++b) {
        for (std::size_t m = 0; m < dep.n_mt(); ++m) {
            gains.push_back(path_loss(distance(dep.bs_positions[b], dep.mt_positions[m]), cfg));
        }
    }
    return ChannelSample(dep.n_bs(), dep.n_mt(), std::move(gains));
}

namespace {

void check_group(MtId mt, std::span<const BsId> group, const Deployment& dep, const ChannelSample& ch) {
    if (group.empty()) throw EmptyGroup("cooperative group is empty");
    if (mt >= ch.n_mt()) throw DomainError("unknown MT " + std::to_string(mt));
    for (BsId b : group) {
        if (b >= dep.n_bs() || b >= ch.n_bs()) throw DomainError("unknown BS " + std::to_string(b));
        if (dep.bs_states[b] == BsState::Sleeping) {
            throw DomainError("BS " + std::to_string(b) + " is sleeping and cannot serve");
        }
    }
}

bool contains(std::span<const BsId> group, BsId b) {
    return std::find(group.begin(), group.end(), b) != group.end();
}

} // namespace

LinkBudget downlink_budget(MtId mt, std::span<const BsId> group, const Deployment& dep,
                           const ChannelSample& ch, const ScenarioConfig& cfg) {
    check_group(mt, group, dep, ch);
    LinkBudget budget;
    budget.noise_mw = cfg.noise_power_mw;
    for (BsId b = 0; b < dep.n_bs(); ++b) {
        const double rx = cfg.bs_tx_power_mw * ch.gain(b, mt);
        if (contains(group, b)) {
            budget.signal_mw += rx;
        } else if (dep.bs_states[b] == BsState::Transferring) {
            budget.interference_mw += rx;
        }
    }
    return budget;
}

double downlink_sinr(MtId mt, std::span<const BsId> group, const Deployment& dep,
                     const ChannelSample& ch, const ScenarioConfig& cfg) {
    return downlink_budget(mt, group, dep, ch, cfg).sinr();
}

double group_gain_sum(MtId mt, std::span<const BsId> group, const Deployment& dep,
                      const ChannelSample& ch) {
    check_group(mt, group, dep, ch);
    double sum = 0.0;
    for (BsId b = 0; b < dep.n_bs(); ++b) {
        if (contains(group, b)) sum += ch.gain(b, mt);
    }
    return sum;
}

double uplink_joint_snr(double mt_power_mw, MtId mt, std::span<const BsId> group,
                        const Deployment& dep, const ChannelSample& ch, const ScenarioConfig& cfg) {
    return mt_power_mw * group_gain_sum(mt, group, dep, ch) / cfg.noise_power_mw;
}

double spectral_efficiency(double sinr) {
    if (!(sinr >= 0.0)) throw DomainError("spectral_efficiency: SINR must be >= 0");
    return std::log2(1.0 + sinr);
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) noexcept { return 10.0 * std::log10(linear); }

} // namespace cellless
