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
#include <functional>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cellless/channel.hpp"
#include "cellless/scenario.hpp"

namespace cellless {

enum class Direction : std::uint8_t { Uplink, Downlink };

std::string_view to_string(Direction direction) noexcept;

// Demand that no finite group meets: the greedy fills to the size cap.
inline constexpr double kMaximizeRate = std::numeric_limits<double>::infinity();

struct CoopGroup {
    std::vector<BsId> members;  // selection order
    Direction direction = Direction::Downlink;
    MtId served_mt = kTypicalUser;
    double demand_rate = 0.0;    // bit/s/Hz
    double achieved_rate = 0.0;  // bit/s/Hz
    bool best_effort = false;    // demand unmet at the cap, or fallback used
    bool from_cache = false;

    std::vector<BsId> sorted_members() const;
};

// ---- power-state machine --------------------------------------------------

// Adjacent steps Sleeping<->Listening<->Ready<->Transferring plus
// Ready->Sleeping. Self-transitions are not in the set.
bool is_legal_transition(BsState from, BsState to) noexcept;

// Checks the load guard first (BusyBs when leaving Transferring or entering
// Sleeping with load > 0), then adjacency (IllegalTransition).
void apply_transition(Deployment& dep, BsId bs, BsState new_state);

Deployment transition(BsId bs, BsState new_state, const Deployment& dep);

// Adds or removes one served MT. assign requires Transferring.
void assign_load(Deployment& dep, BsId bs);
void release_load(Deployment& dep, BsId bs);

double total_power_mw(const Deployment& dep, const ScenarioConfig& cfg);

// ---- grouping -------------------------------------------------------------

// Ready or Listening with zero load.
bool is_idle(const Deployment& dep, BsId bs) noexcept;

// Rate the group achieves in its direction: downlink SINR with the BS TX
// power, or uplink MRC SNR with the config's MT power.
double group_rate(Direction direction, MtId mt, std::span<const BsId> members, const Deployment& dep,
                  const ChannelSample& ch, const ScenarioConfig& cfg);

// Position-quantised memo of recent group decisions, LRU eviction.
class PreGroupCache {
public:
    explicit PreGroupCache(double cell_m = 2.0, std::size_t capacity = 1024);

    // Cached group for the MT's cell, or nothing when absent or when any
    // member is now Sleeping. Refreshes the entry's recency on a hit.
    std::optional<CoopGroup> lookup(Point mt_position, Direction direction, const Deployment& dep);

    void store(Point mt_position, const CoopGroup& group);

    std::size_t size() const noexcept { return entries_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }
    double cell_m() const noexcept { return cell_m_; }
    std::uint64_t hits() const noexcept { return hits_; }
    std::uint64_t misses() const noexcept { return misses_; }
    void clear() noexcept;

private:
    struct Key {
        std::int64_t ix;
        std::int64_t iy;
        Direction direction;
        auto operator<=>(const Key&) const = default;
    };
    struct Entry {
        CoopGroup group;
        std::uint64_t stamp;
    };

    Key key_for(Point p, Direction direction) const noexcept;

    double cell_m_;
    std::size_t capacity_;
    std::uint64_t clock_ = 0;
    std::uint64_t hits_ = 0;
    std::uint64_t misses_ = 0;
    std::map<Key, Entry> entries_;
};

// Economy-criterion group formation:
//   1. candidates = nearest n_candidates BSs;
//   2. idle = candidates that are Ready/Listening with zero load;
//   3. reuse the cached group if it is a subset of idle and still meets demand;
//   4. else add idle candidates by descending gain (ties: ascending id) until
//      the rate meets demand or the size reaches max_group_size;
//   5. no idle candidate: the nearest non-sleeping BS, regardless of load;
//   6. store the result in the cache.
// Throws NoBsAvailable when every BS is Sleeping. `cache` may be null.
// `size_cap`, when set, replaces cfg.max_group_size.
CoopGroup form_group(MtId mt, double demand_rate, Direction direction, const Deployment& dep,
                     const ChannelSample& ch, const ScenarioConfig& cfg, PreGroupCache* cache,
                     std::optional<std::size_t> size_cap = std::nullopt);

// Keeps one group for both directions when the downlink members also meet
// the uplink demand. Throws MtMismatch when the groups serve different MTs.
std::pair<CoopGroup, CoopGroup> unify_ul_dl(const CoopGroup& ul_group, const CoopGroup& dl_group,
                                            const Deployment& dep, const ChannelSample& ch,
                                            const ScenarioConfig& cfg);

// Backhaul payload deliveries for a downlink group.
std::size_t backhaul_messages(const CoopGroup& group, bool multicast_enabled);

// ---- controller -----------------------------------------------------------

struct GroupEvent {
    std::uint64_t trial = 0;
    MtId mt = 0;
    Direction direction = Direction::Downlink;
    std::vector<BsId> members;
    bool best_effort = false;
    bool from_cache = false;
    std::size_t messages = 0;  // 0 for uplink groups
};

void write_event(std::ostream& out, const GroupEvent& event);

// Hook for mobility prediction of adjacent terminals. No procedure is
// modelled; the default leaves the size cap untouched.
class MobilityPredictor {
public:
    virtual ~MobilityPredictor() = default;
    virtual std::size_t adjust_group_cap(MtId /*mt*/, const Deployment& /*dep*/, std::size_t cap) const {
        return cap;
    }
};

struct ControllerOptions {
    bool use_cache = true;
    double cache_cell_m = 2.0;
    std::size_t cache_capacity = 1024;
    bool multicast = true;
    // Overrides for experiments that need a wider pool or a fixed size.
    std::optional<std::size_t> n_candidates;
    std::optional<std::size_t> max_group_size;
};

// The centralised decision point. One instance per trial; not thread safe.
class Controller {
public:
    explicit Controller(ScenarioConfig cfg, ControllerOptions options = {});

    CoopGroup form_group(MtId mt, double demand_rate, Direction direction, const Deployment& dep,
                         const ChannelSample& ch);

    std::pair<CoopGroup, CoopGroup> unify_ul_dl(const CoopGroup& ul_group, const CoopGroup& dl_group,
                                                const Deployment& dep, const ChannelSample& ch) const;

    // Moves every member Ready/Listening -> ... -> Transferring and adds load.
    void commit(const CoopGroup& group, Deployment& dep) const;

    void set_trial(std::uint64_t trial) noexcept { trial_ = trial; }
    void set_mobility_predictor(const MobilityPredictor* predictor) noexcept { predictor_ = predictor; }
    void set_event_sink(std::vector<GroupEvent>* sink) noexcept { sink_ = sink; }

    const ScenarioConfig& config() const noexcept { return cfg_; }
    const ControllerOptions& options() const noexcept { return options_; }
    PreGroupCache& cache() noexcept { return cache_; }

private:
    ScenarioConfig cfg_;
    ControllerOptions options_;
    PreGroupCache cache_;
    std::uint64_t trial_ = 0;
    const MobilityPredictor* predictor_ = nullptr;
    std::vector<GroupEvent>* sink_ = nullptr;
};

} // namespace cellless
