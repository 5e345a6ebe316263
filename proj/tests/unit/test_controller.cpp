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
#include <sstream>
#include <vector>

#include "doctest.h"

#include "cellless/controller.hpp"
#include "cellless/errors.hpp"

using namespace cellless;

namespace {

// MT at the centre; BS b sits (b + 1) metres east, so candidate order is id order.
Deployment line_deployment(const std::vector<BsState>& states) {
    Deployment dep;
    dep.mt_positions = {{25.0, 25.0}};
    for (std::size_t b = 0; b < states.size(); ++b) dep.bs_positions.push_back({26.0 + static_cast<double>(b), 25.0});
    dep.bs_states = states;
    dep.bs_load.assign(states.size(), 0);
    for (std::size_t b = 0; b < states.size(); ++b) {
        if (states[b] == BsState::Transferring) dep.bs_load[b] = 1;
    }
    return dep;
}

double rate_of(Direction d, const std::vector<BsId>& members, const Deployment& dep, const ChannelSample& ch,
               const ScenarioConfig& cfg) {
    return group_rate(d, 0, members, dep, ch, cfg);
}

// Smallest subset of the idle candidates meeting the demand, by enumeration.
std::size_t brute_force_size(const std::vector<BsId>& idle, double demand, Direction d, const Deployment& dep,
                             const ChannelSample& ch, const ScenarioConfig& cfg) {
    const std::size_t n = idle.size();
    std::size_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<BsId> subset;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) subset.push_back(idle[i]);
        }
        if (subset.size() > cfg.max_group_size) continue;
        if (best != 0 && subset.size() >= best) continue;
        if (rate_of(d, subset, dep, ch, cfg) >= demand) best = subset.size();
    }
    return best;  // 0 when no subset qualifies
}

const std::vector<BsState> kFourReady(4, BsState::Ready);

} // namespace

TEST_CASE("form_group: zero demand takes the single strongest idle BS") {
    const ScenarioConfig cfg;
    const Deployment dep = line_deployment(kFourReady);
    const ChannelSample ch(4, 1, {1e-5, 4e-5, 2e-5, 3e-5});
    const CoopGroup g = form_group(0, 0.0, Direction::Downlink, dep, ch, cfg, nullptr);
    CHECK(g.members == std::vector<BsId>{1});
    CHECK_FALSE(g.best_effort);
    CHECK_FALSE(g.from_cache);
}

TEST_CASE("form_group: grows by gain until the demand is met") {
    const ScenarioConfig cfg;
    const Deployment dep = line_deployment(kFourReady);
    const ChannelSample ch(4, 1, {1e-5, 4e-5, 2e-5, 3e-5});
    const double two = rate_of(Direction::Downlink, {1, 3}, dep, ch, cfg);
    const CoopGroup g = form_group(0, two, Direction::Downlink, dep, ch, cfg, nullptr);
    CHECK(g.members == std::vector<BsId>{1, 3});
    CHECK(g.achieved_rate == two);
    CHECK_FALSE(g.best_effort);
}

TEST_CASE("form_group: unmet demand stops at the cap and is flagged") {
    const ScenarioConfig cfg;
    const Deployment dep = line_deployment(kFourReady);
    const ChannelSample ch(4, 1, {1e-5, 4e-5, 2e-5, 3e-5});
    const CoopGroup g = form_group(0, kMaximizeRate, Direction::Downlink, dep, ch, cfg, nullptr);
    CHECK(g.members == std::vector<BsId>{1, 3, 2});
    CHECK(g.best_effort);

    const CoopGroup capped = form_group(0, kMaximizeRate, Direction::Uplink, dep, ch, cfg, nullptr, 2);
    CHECK(capped.members.size() == 2);
}

TEST_CASE("form_group: busy and sleeping BSs are never chosen") {
    const ScenarioConfig cfg;
    using S = BsState;
    const Deployment dep = line_deployment({S::Sleeping, S::Transferring, S::Listening, S::Ready});
    const ChannelSample ch(4, 1, {9e-3, 8e-3, 1e-5, 2e-5});
    const CoopGroup g = form_group(0, kMaximizeRate, Direction::Downlink, dep, ch, cfg, nullptr);
    CHECK(g.sorted_members() == std::vector<BsId>{2, 3});
}

TEST_CASE("form_group: no idle candidate falls back to the nearest awake BS") {
    const ScenarioConfig cfg;
    using S = BsState;
    const Deployment dep = line_deployment({S::Sleeping, S::Transferring, S::Transferring});
    const ChannelSample ch(3, 1, {9e-3, 1e-5, 8e-3});
    const CoopGroup g = form_group(0, 1.0, Direction::Downlink, dep, ch, cfg, nullptr);
    CHECK(g.members == std::vector<BsId>{1});
    CHECK(g.best_effort);

    const Deployment asleep = line_deployment({S::Sleeping, S::Sleeping});
    CHECK_THROWS_AS(form_group(0, 1.0, Direction::Downlink, asleep, ChannelSample(2, 1, {1e-3, 1e-3}), cfg, nullptr),
                    NoBsAvailable);
}

TEST_CASE("form_group: input errors") {
    const ScenarioConfig cfg;
    const Deployment dep = line_deployment(kFourReady);
    const ChannelSample ch(4, 1, {1e-5, 4e-5, 2e-5, 3e-5});
    CHECK_THROWS_AS(form_group(0, -1.0, Direction::Downlink, dep, ch, cfg, nullptr), DomainError);
    CHECK_THROWS_AS(form_group(0, NAN, Direction::Downlink, dep, ch, cfg, nullptr), DomainError);
    CHECK_THROWS_AS(form_group(3, 0.0, Direction::Downlink, dep, ch, cfg, nullptr), DomainError);
    CHECK_THROWS_AS(form_group(0, 0.0, Direction::Downlink, dep, ch, cfg, nullptr, 0), DomainError);
}

TEST_CASE("form_group matches a brute-force minimum on random instances") {
    const ScenarioConfig cfg;
    for (std::uint64_t trial = 0; trial < 300; ++trial) {
        RandomStream s(cfg.seed, "controller-oracle", trial);
        const Deployment dep = generate_deployment(cfg, s);
        const ChannelSample ch = ChannelSample::draw(dep, cfg, s);
        const Direction d = trial % 2 == 0 ? Direction::Downlink : Direction::Uplink;

        std::vector<BsId> idle;
        for (BsId b : nearest_candidates(dep, 0, cfg.n_candidates)) {
            if (is_idle(dep, b)) idle.push_back(b);
        }
        if (idle.empty()) continue;
        const CoopGroup widest = form_group(0, kMaximizeRate, d, dep, ch, cfg, nullptr);
        const double demand = s.uniform(0.0, 1.25) * widest.achieved_rate;

        const CoopGroup g = form_group(0, demand, d, dep, ch, cfg, nullptr);
        const std::size_t best = brute_force_size(idle, demand, d, dep, ch, cfg);
        if (best == 0) {
            CHECK(g.best_effort);
        } else {
            CHECK_FALSE(g.best_effort);
            CHECK(g.members.size() == best);
            CHECK(g.achieved_rate >= demand);
        }
        for (BsId b : g.members) CHECK(dep.bs_states[b] != BsState::Sleeping);
    }
}

TEST_CASE("form_group: reported rate round-trips through the link model") {
    const ScenarioConfig cfg;
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        RandomStream s(cfg.seed, "roundtrip", trial);
        const Deployment dep = generate_deployment(cfg, s);
        const ChannelSample ch = ChannelSample::draw(dep, cfg, s);
        const CoopGroup g = form_group(0, 2.0, Direction::Downlink, dep, ch, cfg, nullptr);
        const double recomputed = std::log2(1.0 + downlink_sinr(0, g.members, dep, ch, cfg));
        CHECK(g.achieved_rate == doctest::Approx(recomputed).epsilon(1e-12));
        CHECK(g.best_effort == (g.achieved_rate < 2.0));
    }
}

TEST_CASE("PreGroupCache: hit in the same cell, miss elsewhere") {
    const ScenarioConfig cfg;
    Deployment dep = line_deployment(kFourReady);
    const ChannelSample ch(4, 1, {1e-5, 4e-5, 2e-5, 3e-5});
    PreGroupCache cache;

    const CoopGroup first = form_group(0, 0.0, Direction::Downlink, dep, ch, cfg, &cache);
    CHECK_FALSE(first.from_cache);
    CHECK(cache.size() == 1);

    const CoopGroup second = form_group(0, 0.0, Direction::Downlink, dep, ch, cfg, &cache);
    CHECK(second.from_cache);
    CHECK(second.members == first.members);
    CHECK(cache.hits() == 1);

    // Other direction is a separate entry.
    const CoopGroup up = form_group(0, 0.0, Direction::Uplink, dep, ch, cfg, &cache);
    CHECK_FALSE(up.from_cache);
    CHECK(cache.size() == 2);

    // Another cell misses.
    CHECK_FALSE(cache.lookup({41.0, 41.0}, Direction::Downlink, dep).has_value());
    CHECK(cache.lookup({25.9, 24.1}, Direction::Downlink, dep).has_value());
}

TEST_CASE("PreGroupCache: cached groups are re-verified") {
    const ScenarioConfig cfg;
    Deployment dep = line_deployment(kFourReady);
    const ChannelSample ch(4, 1, {1e-5, 4e-5, 2e-5, 3e-5});
    PreGroupCache cache;
    form_group(0, 0.0, Direction::Downlink, dep, ch, cfg, &cache);  // caches {1}

    // A higher demand than the cached group delivers is recomputed.
    const CoopGroup higher = form_group(0, kMaximizeRate, Direction::Downlink, dep, ch, cfg, &cache);
    CHECK_FALSE(higher.from_cache);
    CHECK(higher.members.size() == 3);

    // A cached member gone to sleep invalidates the entry.
    form_group(0, 0.0, Direction::Downlink, dep, ch, cfg, &cache);
    apply_transition(dep, 1, BsState::Sleeping);
    CHECK_FALSE(cache.lookup(dep.mt_positions[0], Direction::Downlink, dep).has_value());
    const CoopGroup after = form_group(0, 0.0, Direction::Downlink, dep, ch, cfg, &cache);
    CHECK_FALSE(after.from_cache);
    CHECK(after.members == std::vector<BsId>{3});
}

TEST_CASE("PreGroupCache: least recently used entry is evicted") {
    const Deployment dep = line_deployment(kFourReady);
    PreGroupCache cache(2.0, 2);
    CoopGroup g;
    g.members = {0};
    cache.store({1, 1}, g);
    cache.store({5, 5}, g);
    CHECK(cache.lookup({1, 1}, Direction::Downlink, dep).has_value());  // refresh {1,1}
    cache.store({9, 9}, g);                                             // evicts {5,5}
    CHECK(cache.size() == 2);
    CHECK(cache.lookup({1, 1}, Direction::Downlink, dep).has_value());
    CHECK_FALSE(cache.lookup({5, 5}, Direction::Downlink, dep).has_value());
    CHECK(cache.lookup({9, 9}, Direction::Downlink, dep).has_value());
    cache.clear();
    CHECK(cache.size() == 0);
}

TEST_CASE("unify_ul_dl") {
    const ScenarioConfig cfg;
    const Deployment dep = line_deployment(kFourReady);
    const ChannelSample ch(4, 1, {1e-5, 4e-5, 2e-5, 3e-5});

    CoopGroup ul;
    ul.direction = Direction::Uplink;
    CoopGroup dl;
    dl.direction = Direction::Downlink;

    SUBCASE("identical member sets pass through") {
        ul.members = {1, 3};
        dl.members = {3, 1};
        ul.demand_rate = 100.0;
        const auto [u, d] = unify_ul_dl(ul, dl, dep, ch, cfg);
        CHECK(u.members == ul.members);
        CHECK(d.members == dl.members);
    }
    SUBCASE("a downlink superset takes over the uplink") {
        ul.members = {1};
        ul.demand_rate = rate_of(Direction::Uplink, {1}, dep, ch, cfg);
        dl.members = {1, 3, 2};
        const auto [u, d] = unify_ul_dl(ul, dl, dep, ch, cfg);
        CHECK(u.members == dl.members);
        CHECK(u.direction == Direction::Uplink);
        CHECK(u.achieved_rate >= ul.demand_rate);
        CHECK(d.members == dl.members);
    }
    SUBCASE("a downlink group too weak for the uplink demand leaves both unchanged") {
        ul.members = {1, 3};
        ul.demand_rate = rate_of(Direction::Uplink, {1, 3}, dep, ch, cfg);
        dl.members = {0};
        const auto [u, d] = unify_ul_dl(ul, dl, dep, ch, cfg);
        CHECK(u.members == ul.members);
        CHECK(d.members == dl.members);
    }
    SUBCASE("mismatched inputs") {
        ul.members = {1};
        dl.members = {1};
        CoopGroup other = dl;
        other.served_mt = 1;
        CHECK_THROWS_AS(unify_ul_dl(ul, other, dep, ch, cfg), MtMismatch);
        CHECK_THROWS_AS(unify_ul_dl(dl, ul, dep, ch, cfg), WrongDirection);
    }
}

TEST_CASE("state machine: legal and illegal transitions") {
    const ScenarioConfig cfg;
    using S = BsState;
    Deployment dep = line_deployment({S::Ready, S::Sleeping, S::Transferring, S::Listening});

    const Deployment moved = transition(0, S::Transferring, dep);
    CHECK(moved.bs_states[0] == S::Transferring);
    CHECK(dep.bs_states[0] == S::Ready);  // input untouched

    CHECK_THROWS_AS(transition(1, S::Transferring, dep), IllegalTransition);
    CHECK_THROWS_AS(transition(3, S::Transferring, dep), IllegalTransition);
    CHECK_THROWS_AS(transition(0, S::Ready, dep), IllegalTransition);
    CHECK_THROWS_AS(transition(2, S::Sleeping, dep), BusyBs);
    CHECK_THROWS_AS(transition(2, S::Ready, dep), BusyBs);
    CHECK_THROWS_AS(transition(9, S::Ready, dep), DomainError);

    release_load(dep, 2);
    CHECK_THROWS_AS(transition(2, S::Sleeping, dep), IllegalTransition);
    apply_transition(dep, 2, S::Ready);
    apply_transition(dep, 2, S::Listening);
    apply_transition(dep, 2, S::Sleeping);
    CHECK(dep.bs_states[2] == S::Sleeping);

    CHECK(is_legal_transition(S::Sleeping, S::Listening));
    CHECK(is_legal_transition(S::Listening, S::Sleeping));
    CHECK(is_legal_transition(S::Ready, S::Sleeping));
    CHECK_FALSE(is_legal_transition(S::Transferring, S::Listening));
    CHECK_FALSE(is_legal_transition(S::Sleeping, S::Sleeping));
}

TEST_CASE("state machine: power accounting and load") {
    const ScenarioConfig cfg;
    using S = BsState;
    Deployment dep = line_deployment({S::Sleeping, S::Listening, S::Ready, S::Transferring});
    CHECK(total_power_mw(dep, cfg) == 10.0 + 50.0 + 80.0 + 200.0);
    CHECK_THROWS_AS(assign_load(dep, 2), IllegalTransition);
    assign_load(dep, 3);
    CHECK(dep.bs_load[3] == 2);
}

TEST_CASE("backhaul_messages") {
    CoopGroup g;
    g.direction = Direction::Downlink;
    g.members = {4, 5, 6};
    CHECK(backhaul_messages(g, true) == 1);
    CHECK(backhaul_messages(g, false) == 3);
    g.members = {4};
    CHECK(backhaul_messages(g, false) == 1);
    g.direction = Direction::Uplink;
    CHECK_THROWS_AS(backhaul_messages(g, true), WrongDirection);
    g.direction = Direction::Downlink;
    g.members.clear();
    CHECK_THROWS_AS(backhaul_messages(g, true), EmptyGroup);
}

TEST_CASE("Controller: commit, events and mobility hook") {
    ScenarioConfig cfg;
    using S = BsState;
    Deployment dep = line_deployment({S::Listening, S::Ready, S::Ready, S::Ready});
    const ChannelSample ch(4, 1, {5e-5, 4e-5, 2e-5, 3e-5});

    struct CapOne : MobilityPredictor {
        std::size_t adjust_group_cap(MtId, const Deployment&, std::size_t) const override { return 1; }
    } cap_one;

    std::vector<GroupEvent> events;
    ControllerOptions options;
    options.use_cache = false;
    options.multicast = false;
    Controller controller(cfg, options);
    controller.set_event_sink(&events);
    controller.set_trial(7);

    const CoopGroup g = controller.form_group(0, kMaximizeRate, Direction::Downlink, dep, ch);
    CHECK(g.members == std::vector<BsId>{0, 1, 3});
    controller.commit(g, dep);
    for (BsId b : g.members) {
        CHECK(dep.bs_states[b] == S::Transferring);
        CHECK(dep.bs_load[b] == 1);
    }

    controller.set_mobility_predictor(&cap_one);
    const CoopGroup single = controller.form_group(0, kMaximizeRate, Direction::Uplink, dep, ch);
    CHECK(single.members == std::vector<BsId>{2});

    REQUIRE(events.size() == 2);
    std::ostringstream log;
    for (const auto& e : events) write_event(log, e);
    CHECK(log.str() ==
          "trial=7 mt=0 dir=downlink members=0,1,3 best_effort=1 cache=0 messages=3\n"
          "trial=7 mt=0 dir=uplink members=2 best_effort=1 cache=0 messages=0\n");
}
