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
#include <span>
#include <vector>

#include "cellless/random_stream.hpp"
#include "cellless/scenario.hpp"

namespace cellless {

// Log-distance path loss, clamped to 1 inside the reference distance:
// (max(d, d0) / d0)^-alpha. Throws DomainError for d < min_distance_m.
double path_loss(double distance_m, const ScenarioConfig& cfg);

// Unit-mean exponential power fading (Rayleigh envelope).
double draw_fading(RandomStream& stream) noexcept;

// Channel power gains g(b, m) = path_loss(d(b, m)) * fading(b, m).
class ChannelSample {
public:
    ChannelSample() = default;

    // Row-major gains, gains[b * n_mt + m]. Throws DomainError unless every
    // gain is finite and > 0.
    ChannelSample(std::size_t n_bs, std::size_t n_mt, std::vector<double> gains);

    // Fading drawn BS-major, MT-minor from `stream`.
    static ChannelSample draw(const Deployment& dep, const ScenarioConfig& cfg, RandomStream& stream);

    // Fading forced to 1: pure path loss.
    static ChannelSample mean(const Deployment& dep, const ScenarioConfig& cfg);

    std::size_t n_bs() const noexcept { return n_bs_; }
    std::size_t n_mt() const noexcept { return n_mt_; }
    double gain(BsId b, MtId m) const noexcept { return gains_[b * n_mt_ + m]; }

private:
    std::size_t n_bs_ = 0;
    std::size_t n_mt_ = 0;
    std::vector<double> gains_;
};

struct LinkBudget {
    double signal_mw = 0.0;
    double interference_mw = 0.0;
    double noise_mw = 0.0;

    double sinr() const noexcept { return signal_mw / (interference_mw + noise_mw); }
};

// Downlink joint transmission with noncoherent power combining. Group
// members are treated as transmitting whatever their current state; every
// other Transferring BS interferes. Sums run in ascending BS id order so
// the result does not depend on member order.
//
// Throws EmptyGroup, or DomainError for a Sleeping or unknown member.
LinkBudget downlink_budget(MtId mt, std::span<const BsId> group, const Deployment& dep,
                           const ChannelSample& ch, const ScenarioConfig& cfg);

double downlink_sinr(MtId mt, std::span<const BsId> group, const Deployment& dep,
                     const ChannelSample& ch, const ScenarioConfig& cfg);

// Uplink joint reception, MRC across the group, noise limited:
// mt_power_mw * sum g(b, mt) / noise.
double uplink_joint_snr(double mt_power_mw, MtId mt, std::span<const BsId> group,
                        const Deployment& dep, const ChannelSample& ch, const ScenarioConfig& cfg);

// Sum of g(b, mt) over the group in ascending id order.
double group_gain_sum(MtId mt, std::span<const BsId> group, const Deployment& dep,
                      const ChannelSample& ch);

// Shannon map log2(1 + sinr), bit/s/Hz.
double spectral_efficiency(double sinr);

double db_to_linear(double db) noexcept;
double linear_to_db(double linear) noexcept;

} // namespace cellless
