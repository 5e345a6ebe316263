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

#include "cellless/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cellless/errors.hpp"

namespace cellless {

std::string_view to_string(BsState state) noexcept {
    switch (state) {
    case BsState::Sleeping: return "sleeping";
    case BsState::Listening: return "listening";
    case BsState::Ready: return "ready";
    case BsState::Transferring: return "transferring";
    }
    return "unknown";
}

double StatePower::of(BsState state) const noexcept {
    switch (state) {
    case BsState::Sleeping: return sleeping_mw;
    case BsState::Listening: return listening_mw;
    case BsState::Ready: return ready_mw;
    case BsState::Transferring: return transferring_mw;
    }
    return 0.0;
}

namespace {

void require(bool ok, const char* key, const std::string& what) {
    if (!ok) throw ConfigError(key, std::string(key) + ": " + what);
}

void require_positive(double value, const char* key) {
    require(std::isfinite(value) && value > 0.0, key, "must be finite and > 0");
}

} // namespace

void ScenarioConfig::validate() const {
    require_positive(area_side_m, "area_side_m");
    require(n_bs >= 1, "n_bs", "must be >= 1");
    require(n_busy_bs <= n_bs, "n_busy_bs", "must be <= n_bs");
    require(n_candidates >= 1 && n_candidates <= n_bs, "n_candidates", "must be in [1, n_bs]");
    require(max_group_size >= 1 && max_group_size <= n_candidates, "max_group_size",
            "must be in [1, n_candidates]");
    require_positive(state_power_mw.sleeping_mw, "state_power_mw");
    require(state_power_mw.sleeping_mw < state_power_mw.listening_mw &&
                state_power_mw.listening_mw < state_power_mw.ready_mw &&
                state_power_mw.ready_mw < state_power_mw.transferring_mw &&
                std::isfinite(state_power_mw.transferring_mw),
            "state_power_mw", "must satisfy sleeping < listening < ready < transferring");
    require_positive(bs_tx_power_mw, "bs_tx_power_mw");
    require_positive(mt_tx_power_mw, "mt_tx_power_mw");
    require_positive(path_loss_exponent, "path_loss_exponent");
    require_positive(reference_distance_m, "reference_distance_m");
    require_positive(noise_power_mw, "noise_power_mw");
    require_positive(min_distance_m, "min_distance_m");
    require(n_trials >= 1, "n_trials", "must be >= 1");
}

double distance(Point a, Point b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y);
}

Deployment generate_deployment(const ScenarioConfig& cfg, RandomStream& stream,
                               std::size_t extra_mts) {
    cfg.validate();

    Deployment dep;
    const double side = cfg.area_side_m;
    dep.mt_positions.push_back({side / 2.0, side / 2.0});

    const std::uint64_t budget = 10ull * cfg.n_bs * cfg.n_bs;
    std::uint64_t attempts = 0;
    auto draw_point = [&] { return Point{stream.uniform(0.0, side), stream.uniform(0.0, side)}; };
    auto clear_of = [&](Point p, const std::vector<Point>& others) {
        return std::all_of(others.begin(), others.end(),
                           [&](Point q) { return distance(p, q) >= cfg.min_distance_m; });
    };

    dep.bs_positions.reserve(cfg.n_bs);
    while (dep.bs_positions.size() < cfg.n_bs) {
        if (++attempts > budget) {
            throw PlacementFailure("BS placement exceeded " + std::to_string(budget) +
                                   " attempts with min_distance_m = " +
                                   std::to_string(cfg.min_distance_m));
        }
        const Point p = draw_point();
        if (clear_of(p, dep.bs_positions) && clear_of(p, dep.mt_positions)) {
            dep.bs_positions.push_back(p);
        }
    }

    dep.bs_states.assign(cfg.n_bs, BsState::Ready);
    dep.bs_load.assign(cfg.n_bs, 0);

    // Partial Fisher-Yates: the first n_busy_bs slots are a uniform sample.
    std::vector<BsId> ids(cfg.n_bs);
    std::iota(ids.begin(), ids.end(), BsId{0});
    for (std::size_t i = 0; i < cfg.n_busy_bs; ++i) {
        const std::size_t j = i + stream.below(cfg.n_bs - i);
        std::swap(ids[i], ids[j]);
        dep.bs_states[ids[i]] = BsState::Transferring;
        dep.bs_load[ids[i]] = 1;
    }

    for (std::size_t m = 0; m < extra_mts; ++m) {
        std::uint64_t mt_attempts = 0;
        for (;;) {
            if (++mt_attempts > budget) {
                throw PlacementFailure("MT placement exceeded " + std::to_string(budget) +
                                       " attempts");
            }
            const Point p = draw_point();
            if (clear_of(p, dep.bs_positions)) {
                dep.mt_positions.push_back(p);
                break;
            }
        }
    }
    return dep;
}

std::vector<BsId> nearest_candidates(const Deployment& dep, MtId mt, std::size_t k) {
    if (mt >= dep.n_mt()) throw DomainError("nearest_candidates: unknown MT " + std::to_string(mt));
    k = std::min(k, dep.n_bs());

    const Point where = dep.mt_positions[mt];
    std::vector<std::pair<double, BsId>> ranked;
    ranked.reserve(dep.n_bs());
    for (BsId b = 0; b < dep.n_bs(); ++b) ranked.emplace_back(distance(dep.bs_positions[b], where), b);

    // pair ordering gives (distance, id) lexicographic order.
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end());

    std::vector<BsId> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(ranked[i].second);
    return out;
}

} // namespace cellless
