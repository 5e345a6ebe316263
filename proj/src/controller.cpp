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

#include "cellless/controller.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "cellless/errors.hpp"

namespace cellless {

std::string_view to_string(Direction direction) noexcept {
    return direction == Direction::Uplink ? "uplink" : "downlink";
}

std::vector<BsId> CoopGroup::sorted_members() const {
    std::vector<BsId> out = members;
    std::sort(out.begin(), out.end());
    return out;
}

// ---- power-state machine --------------------------------------------------

bool is_legal_transition(BsState from, BsState to) noexcept {
    using S = BsState;
    switch (from) {
    case S::Sleeping: return to == S::Listening;
    case S::Listening: return to == S::Sleeping || to == S::Ready;
    case S::Ready: return to == S::Listening || to == S::Transferring || to == S::Sleeping;
    case S::Transferring: return to == S::Ready;
    }
    return false;
}

void apply_transition(Deployment& dep, BsId bs, BsState new_state) {
    if (bs >= dep.n_bs()) throw DomainError("unknown BS " + std::to_string(bs));
    const BsState from = dep.bs_states[bs];
    const bool guarded = from == BsState::Transferring || new_state == BsState::Sleeping;
    if (guarded && new_state != from && dep.bs_load[bs] > 0) {
        throw BusyBs("BS " + std::to_string(bs) + " still serves " + std::to_string(dep.bs_load[bs]) +
                     " MT(s); cannot go " + std::string(to_string(from)) + " -> " +
                     std::string(to_string(new_state)));
    }
    if (!is_legal_transition(from, new_state)) {
        throw IllegalTransition("BS " + std::to_string(bs) + ": " + std::string(to_string(from)) +
                                " -> " + std::string(to_string(new_state)) + " is not allowed");
    }
    dep.bs_states[bs] = new_state;
}

Deployment transition(BsId bs, BsState new_state, const Deployment& dep) {
    Deployment out = dep;
    apply_transition(out, bs, new_state);
    return out;
}

void assign_load(Deployment& dep, BsId bs) {
    if (bs >= dep.n_bs()) throw DomainError("unknown BS " + std::to_string(bs));
    if (dep.bs_states[bs] != BsState::Transferring) {
        throw IllegalTransition("BS " + std::to_string(bs) + " must be transferring to serve an MT");
    }
    ++dep.bs_load[bs];
}

void release_load(Deployment& dep, BsId bs) {
    if (bs >= dep.n_bs()) throw DomainError("unknown BS " + std::to_string(bs));
    if (dep.bs_load[bs] == 0) throw DomainError("BS " + std::to_string(bs) + " has no load to release");
    --dep.bs_load[bs];
}

double total_power_mw(const Deployment& dep, const ScenarioConfig& cfg) {
    double total = 0.0;
    for (BsState s : dep.bs_states) total += cfg.state_power_mw.of(s);
    return total;
}

// ---- grouping -------------------------------------------------------------

bool is_idle(const Deployment& dep, BsId bs) noexcept {
    const BsState s = dep.bs_states[bs];
    return (s == BsState::Ready || s == BsState::Listening) && dep.bs_load[bs] == 0;
}

double group_rate(Direction direction, MtId mt, std::span<const BsId> members, const Deployment& dep,
                  const ChannelSample& ch, const ScenarioConfig& cfg) {
    const double sinr = direction == Direction::Downlink
                            ? downlink_sinr(mt, members, dep, ch, cfg)
                            : uplink_joint_snr(cfg.mt_tx_power_mw, mt, members, dep, ch, cfg);
    return spectral_efficiency(sinr);
}

PreGroupCache::PreGroupCache(double cell_m, std::size_t capacity) : cell_m_(cell_m), capacity_(capacity) {
    if (!(cell_m > 0.0)) throw DomainError("PreGroupCache: cell size must be > 0");
}

PreGroupCache::Key PreGroupCache::key_for(Point p, Direction direction) const noexcept {
    return {static_cast<std::int64_t>(std::floor(p.x / cell_m_)),
            static_cast<std::int64_t>(std::floor(p.y / cell_m_)), direction};
}

std::optional<CoopGroup> PreGroupCache::lookup(Point mt_position, Direction direction, const Deployment& dep) {
    const auto it = entries_.find(key_for(mt_position, direction));
    if (it == entries_.end()) {
        ++misses_;
        return std::nullopt;
    }
    for (BsId b : it->second.group.members) {
        if (b >= dep.n_bs() || dep.bs_states[b] == BsState::Sleeping) {
            ++misses_;
            return std::nullopt;
        }
    }
    ++hits_;
    it->second.stamp = ++clock_;
    return it->second.group;
}

void PreGroupCache::store(Point mt_position, const CoopGroup& group) {
    if (capacity_ == 0) return;
    const Key key = key_for(mt_position, group.direction);
    auto it = entries_.find(key);
    if (it != entries_.end()) {
        it->second = {group, ++clock_};
        return;
    }
    if (entries_.size() >= capacity_) {
        const auto oldest = std::min_element(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
            return a.second.stamp < b.second.stamp;
        });
        entries_.erase(oldest);
    }
    entries_.emplace(key, Entry{group, ++clock_});
}

void PreGroupCache::clear() noexcept {
    entries_.clear();
    hits_ = misses_ = 0;
}

namespace {

BsId nearest_awake_bs(const Deployment& dep, MtId mt) {
    for (BsId b : nearest_candidates(dep, mt, dep.n_bs())) {
        if (dep.bs_states[b] != BsState::Sleeping) return b;
    }
    throw NoBsAvailable("every BS is sleeping");
}

} // namespace

CoopGroup form_group(MtId mt, double demand_rate, Direction direction, const Deployment& dep,
                     const ChannelSample& ch, const ScenarioConfig& cfg, PreGroupCache* cache,
                     std::optional<std::size_t> size_cap) {
    if (std::isnan(demand_rate) || demand_rate < 0.0) throw DomainError("form_group: demand must be >= 0");
    if (mt >= dep.n_mt()) throw DomainError("form_group: unknown MT " + std::to_string(mt));
    const std::size_t cap = size_cap.value_or(cfg.max_group_size);
    if (cap == 0) throw DomainError("form_group: group size cap must be >= 1");

    CoopGroup group;
    group.direction = direction;
    group.served_mt = mt;
    group.demand_rate = demand_rate;

    const std::vector<BsId> candidates = nearest_candidates(dep, mt, cfg.n_candidates);
    std::vector<BsId> idle;
    for (BsId b : candidates) {
        if (is_idle(dep, b)) idle.push_back(b);
    }

    const Point where = dep.mt_positions[mt];
    if (cache != nullptr && !idle.empty()) {
        if (auto cached = cache->lookup(where, direction, dep)) {
            const bool subset = std::all_of(cached->members.begin(), cached->members.end(), [&](BsId b) {
                return std::find(idle.begin(), idle.end(), b) != idle.end();
            });
            if (subset && !cached->members.empty() && cached->members.size() <= cap) {
                const double rate = group_rate(direction, mt, cached->members, dep, ch, cfg);
                if (rate >= demand_rate) {
                    group.members = cached->members;
                    group.achieved_rate = rate;
                    group.best_effort = false;
                    group.from_cache = true;
                    cache->store(where, group);
                    return group;
                }
            }
        }
    }

    if (idle.empty()) {
        group.members = {nearest_awake_bs(dep, mt)};
        group.achieved_rate = group_rate(direction, mt, group.members, dep, ch, cfg);
        group.best_effort = true;
    } else {
        std::stable_sort(idle.begin(), idle.end(), [&](BsId a, BsId b) {
            const double ga = ch.gain(a, mt);
            const double gb = ch.gain(b, mt);
            return ga != gb ? ga > gb : a < b;
        });
        for (BsId b : idle) {
            group.members.push_back(b);
            group.achieved_rate = group_rate(direction, mt, group.members, dep, ch, cfg);
            if (group.achieved_rate >= demand_rate || group.members.size() == cap) break;
        }
        group.best_effort = group.achieved_rate < demand_rate;
    }

    if (cache != nullptr) cache->store(where, group);
    return group;
}

std::pair<CoopGroup, CoopGroup> unify_ul_dl(const CoopGroup& ul_group, const CoopGroup& dl_group,
                                            const Deployment& dep, const ChannelSample& ch,
                                            const ScenarioConfig& cfg) {
    if (ul_group.served_mt != dl_group.served_mt) {
        throw MtMismatch("uplink group serves MT " + std::to_string(ul_group.served_mt) +
                         ", downlink group serves MT " + std::to_string(dl_group.served_mt));
    }
    if (ul_group.direction != Direction::Uplink || dl_group.direction != Direction::Downlink) {
        throw WrongDirection("unify_ul_dl expects an uplink group and a downlink group");
    }
    if (ul_group.sorted_members() == dl_group.sorted_members()) return {ul_group, dl_group};

    const double ul_rate = group_rate(Direction::Uplink, ul_group.served_mt, dl_group.members, dep, ch, cfg);
    if (ul_rate < ul_group.demand_rate) return {ul_group, dl_group};

    CoopGroup unified = ul_group;
    unified.members = dl_group.members;
    unified.achieved_rate = ul_rate;
    unified.best_effort = false;
    unified.from_cache = false;
    return {unified, dl_group};
}

std::size_t backhaul_messages(const CoopGroup& group, bool multicast_enabled) {
    if (group.members.empty()) throw EmptyGroup("cooperative group is empty");
    if (group.direction != Direction::Downlink) {
        throw WrongDirection("backhaul delivery applies to downlink groups only");
    }
    return multicast_enabled ? 1 : group.members.size();
}

void write_event(std::ostream& out, const GroupEvent& event) {
    out << "trial=" << event.trial << " mt=" << event.mt << " dir=" << to_string(event.direction)
        << " members=";
    for (std::size_t i = 0; i < event.members.size(); ++i) {
        if (i > 0) out << ',';
        out << event.members[i];
    }
    out << " best_effort=" << (event.best_effort ? 1 : 0) << " cache=" << (event.from_cache ? 1 : 0)
        << " messages=" << event.messages << '\n';
}

// ---- controller -----------------------------------------------------------

Controller::Controller(ScenarioConfig cfg, ControllerOptions options)
    : cfg_(std::move(cfg)), options_(options), cache_(options.cache_cell_m, options.cache_capacity) {
    if (options_.n_candidates) cfg_.n_candidates = *options_.n_candidates;
    if (options_.max_group_size) cfg_.max_group_size = *options_.max_group_size;
    cfg_.validate();
}

CoopGroup Controller::form_group(MtId mt, double demand_rate, Direction direction, const Deployment& dep,
                                 const ChannelSample& ch) {
    std::size_t cap = cfg_.max_group_size;
    if (predictor_ != nullptr) cap = std::max<std::size_t>(1, predictor_->adjust_group_cap(mt, dep, cap));

    CoopGroup group = cellless::form_group(mt, demand_rate, direction, dep, ch, cfg_,
                                           options_.use_cache ? &cache_ : nullptr, cap);
    if (sink_ != nullptr) {
        sink_->push_back({trial_, mt, direction, group.members, group.best_effort, group.from_cache,
                          direction == Direction::Downlink ? backhaul_messages(group, options_.multicast) : 0});
    }
    return group;
}

std::pair<CoopGroup, CoopGroup> Controller::unify_ul_dl(const CoopGroup& ul_group, const CoopGroup& dl_group,
                                                        const Deployment& dep, const ChannelSample& ch) const {
    return cellless::unify_ul_dl(ul_group, dl_group, dep, ch, cfg_);
}

void Controller::commit(const CoopGroup& group, Deployment& dep) const {
    for (BsId b : group.members) {
        if (dep.bs_states[b] == BsState::Listening) apply_transition(dep, b, BsState::Ready);
        if (dep.bs_states[b] == BsState::Ready) apply_transition(dep, b, BsState::Transferring);
        assign_load(dep, b);
    }
}

} // namespace cellless
