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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"

#include "cellless/errors.hpp"
#include "cellless/scenario.hpp"

using namespace cellless;

namespace {

ScenarioConfig single_bs_config() {
    ScenarioConfig cfg;
    cfg.n_bs = 1;
    cfg.n_busy_bs = 0;
    cfg.n_candidates = 1;
    cfg.max_group_size = 1;
    return cfg;
}

std::string failing_key(const ScenarioConfig& cfg) {
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "";
}

} // namespace

TEST_CASE("default config is valid and matches the desk-scale scenario") {
    const ScenarioConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.area_side_m == 50.0);
    CHECK(cfg.n_bs == 50);
    CHECK(cfg.n_busy_bs == 30);
    CHECK(cfg.n_candidates == 10);
    CHECK(cfg.max_group_size == 3);
    CHECK(cfg.mt_tx_power_mw == 100.0);
}

TEST_CASE("config invariants name the offending field") {
    ScenarioConfig cfg;
    cfg.n_busy_bs = 51;
    CHECK(failing_key(cfg) == "n_busy_bs");

    cfg = {};
    cfg.max_group_size = 11;
    CHECK(failing_key(cfg) == "max_group_size");

    cfg = {};
    cfg.max_group_size = 0;
    CHECK(failing_key(cfg) == "max_group_size");

    cfg = {};
    cfg.noise_power_mw = 0.0;
    CHECK(failing_key(cfg) == "noise_power_mw");

    cfg = {};
    cfg.state_power_mw.ready_mw = 40.0;  // below listening
    CHECK(failing_key(cfg) == "state_power_mw");

    cfg = {};
    cfg.path_loss_exponent = -1.0;
    CHECK(failing_key(cfg) == "path_loss_exponent");
}

TEST_CASE("generate_deployment: default scenario") {
    const ScenarioConfig cfg;
    RandomStream stream(cfg.seed, "test", 0);
    const Deployment dep = generate_deployment(cfg, stream);

    REQUIRE(dep.n_bs() == 50);
    REQUIRE(dep.n_mt() == 1);
    CHECK(dep.mt_positions[0] == Point{25.0, 25.0});
    for (const Point& p : dep.bs_positions) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 50.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y <= 50.0);
        CHECK(distance(p, dep.mt_positions[0]) >= cfg.min_distance_m);
    }
    for (std::size_t a = 0; a < dep.n_bs(); ++a) {
        for (std::size_t b = a + 1; b < dep.n_bs(); ++b) {
            CHECK(distance(dep.bs_positions[a], dep.bs_positions[b]) >= cfg.min_distance_m);
        }
    }
    const auto busy = std::count(dep.bs_states.begin(), dep.bs_states.end(), BsState::Transferring);
    const auto ready = std::count(dep.bs_states.begin(), dep.bs_states.end(), BsState::Ready);
    CHECK(busy == 30);
    CHECK(ready == 20);
    for (std::size_t b = 0; b < dep.n_bs(); ++b) {
        CHECK(dep.bs_load[b] == (dep.bs_states[b] == BsState::Transferring ? 1u : 0u));
    }
}

TEST_CASE("generate_deployment: single BS") {
    const ScenarioConfig cfg = single_bs_config();
    RandomStream stream(3, "test", 0);
    const Deployment dep = generate_deployment(cfg, stream);
    REQUIRE(dep.n_bs() == 1);
    CHECK(dep.bs_states[0] == BsState::Ready);
    CHECK(dep.bs_load[0] == 0);
}

TEST_CASE("generate_deployment: impossible exclusion radius fails") {
    ScenarioConfig cfg;
    cfg.min_distance_m = 40.0;
    RandomStream stream(cfg.seed, "test", 0);
    CHECK_THROWS_AS(generate_deployment(cfg, stream), PlacementFailure);
}

TEST_CASE("generate_deployment is a pure function of (cfg, stream triple)") {
    const ScenarioConfig cfg;
    for (std::uint64_t trial : {0ull, 1ull, 977ull}) {
        RandomStream a(cfg.seed, "coverage", trial);
        RandomStream b(cfg.seed, "coverage", trial);
        CHECK(generate_deployment(cfg, a, 5) == generate_deployment(cfg, b, 5));
    }
    RandomStream a(cfg.seed, "coverage", 0);
    RandomStream b(cfg.seed, "coverage", 1);
    CHECK_FALSE(generate_deployment(cfg, a) == generate_deployment(cfg, b));
}

TEST_CASE("extra MTs are placed clear of every BS") {
    const ScenarioConfig cfg;
    RandomStream stream(11, "test", 0);
    const Deployment dep = generate_deployment(cfg, stream, 20);
    REQUIRE(dep.n_mt() == 21);
    for (std::size_t m = 1; m < dep.n_mt(); ++m) {
        for (const Point& b : dep.bs_positions) CHECK(distance(b, dep.mt_positions[m]) >= cfg.min_distance_m);
    }
}

TEST_CASE("single-BS placement is uniform: mean near the centre") {
    const ScenarioConfig cfg = single_bs_config();
    const int n = 100000;
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
        RandomStream stream(cfg.seed, "uniformity", static_cast<std::uint64_t>(i));
        const Deployment dep = generate_deployment(cfg, stream);
        sx += dep.bs_positions[0].x;
        sy += dep.bs_positions[0].y;
    }
    CHECK(std::abs(sx / n - 25.0) < 0.25);
    CHECK(std::abs(sy / n - 25.0) < 0.25);
}

TEST_CASE("nearest_candidates: closest first") {
    Deployment dep;
    dep.bs_positions = {{0, 0}, {10, 10}, {4, 4}, {9, 9}};
    dep.mt_positions = {{5, 5}};
    dep.bs_states.assign(4, BsState::Ready);
    dep.bs_load.assign(4, 0);
    CHECK(nearest_candidates(dep, 0, 1) == std::vector<BsId>{2});
}

TEST_CASE("nearest_candidates: equal distances break ties by id") {
    Deployment dep;
    dep.bs_positions.assign(8, Point{40, 40});
    dep.bs_positions[7] = {30, 25};  // 5 m east
    dep.bs_positions[3] = {20, 25};  // 5 m west
    dep.mt_positions = {{25, 25}};
    dep.bs_states.assign(8, BsState::Ready);
    dep.bs_load.assign(8, 0);
    const auto out = nearest_candidates(dep, 0, 2);
    CHECK(out == std::vector<BsId>{3, 7});
}

TEST_CASE("nearest_candidates matches a brute-force sort and is prefix stable") {
    const ScenarioConfig cfg;
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        RandomStream stream(cfg.seed, "nearest", trial);
        const Deployment dep = generate_deployment(cfg, stream);

        std::vector<BsId> brute(dep.n_bs());
        std::iota(brute.begin(), brute.end(), BsId{0});
        const Point u = dep.mt_positions[0];
        std::sort(brute.begin(), brute.end(), [&](BsId a, BsId b) {
            const double da = std::hypot(dep.bs_positions[a].x - u.x, dep.bs_positions[a].y - u.y);
            const double db = std::hypot(dep.bs_positions[b].x - u.x, dep.bs_positions[b].y - u.y);
            return da != db ? da < db : a < b;
        });
        const auto ten = nearest_candidates(dep, 0, 10);
        CHECK(std::equal(ten.begin(), ten.end(), brute.begin()));

        const auto all = nearest_candidates(dep, 0, dep.n_bs());
        for (std::size_t k = 1; k < dep.n_bs(); k += 7) {
            const auto prefix = nearest_candidates(dep, 0, k);
            CHECK(std::equal(prefix.begin(), prefix.end(), all.begin()));
        }
    }
}
