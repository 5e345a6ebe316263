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

#include "cellless/config_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

#include "cellless/errors.hpp"

namespace cellless {

namespace {

constexpr std::array<ConfigField, 14> kFields{{
    {"area_side_m", "m", "side of the square deployment area"},
    {"n_bs", "count", "number of base stations"},
    {"n_busy_bs", "count", "BSs already serving other users' groups (interferers)"},
    {"n_candidates", "count", "nearest BSs eligible for the user's group"},
    {"max_group_size", "count", "cooperative group size cap"},
    {"state_power_mw", "mW", "consumed power sleeping,listening,ready,transferring"},
    {"bs_tx_power_mw", "mW", "downlink radiated power of a transferring BS"},
    {"mt_tx_power_mw", "mW", "baseline uplink MT power"},
    {"path_loss_exponent", "unitless", "log-distance path-loss exponent"},
    {"reference_distance_m", "m", "path-loss reference distance"},
    {"noise_power_mw", "mW", "receiver noise power"},
    {"min_distance_m", "m", "placement exclusion radius"},
    {"n_trials", "count", "Monte Carlo trials"},
    {"seed", "uint64", "root random seed"},
}};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
    throw ConfigError(std::string(key), "invalid value '" + std::string(value) + "' for key '" +
                                            std::string(key) + "': expected " + expected);
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double out = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (text.empty() || ec != std::errc{} || ptr != end) bad_value(key, text, "a number");
    return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
    text = trim(text);
    std::uint64_t out = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (text.empty() || ec != std::errc{} || ptr != end) bad_value(key, text, "a non-negative integer");
    return out;
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

StatePower parse_state_power(std::string_view key, std::string_view text) {
    std::vector<double> values;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        values.push_back(parse_double(key, text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (values.size() != kBsStateCount) bad_value(key, text, "four comma-separated powers");
    return {values[0], values[1], values[2], values[3]};
}

} // namespace

std::span<const ConfigField> config_fields() noexcept { return kFields; }

void set_config_field(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
    if (key == "area_side_m") cfg.area_side_m = parse_double(key, value);
    else if (key == "n_bs") cfg.n_bs = parse_u64(key, value);
    else if (key == "n_busy_bs") cfg.n_busy_bs = parse_u64(key, value);
    else if (key == "n_candidates") cfg.n_candidates = parse_u64(key, value);
    else if (key == "max_group_size") cfg.max_group_size = parse_u64(key, value);
    else if (key == "state_power_mw") cfg.state_power_mw = parse_state_power(key, value);
    else if (key == "bs_tx_power_mw") cfg.bs_tx_power_mw = parse_double(key, value);
    else if (key == "mt_tx_power_mw") cfg.mt_tx_power_mw = parse_double(key, value);
    else if (key == "path_loss_exponent") cfg.path_loss_exponent = parse_double(key, value);
    else if (key == "reference_distance_m") cfg.reference_distance_m = parse_double(key, value);
    else if (key == "noise_power_mw") cfg.noise_power_mw = parse_double(key, value);
    else if (key == "min_distance_m") cfg.min_distance_m = parse_double(key, value);
    else if (key == "n_trials") cfg.n_trials = parse_u64(key, value);
    else if (key == "seed") cfg.seed = parse_u64(key, value);
    else throw ConfigError(std::string(key), "unknown config key '" + std::string(key) + "'");
}

std::string get_config_field(const ScenarioConfig& cfg, std::string_view key) {
    if (key == "area_side_m") return format_double(cfg.area_side_m);
    if (key == "n_bs") return std::to_string(cfg.n_bs);
    if (key == "n_busy_bs") return std::to_string(cfg.n_busy_bs);
    if (key == "n_candidates") return std::to_string(cfg.n_candidates);
    if (key == "max_group_size") return std::to_string(cfg.max_group_size);
    if (key == "state_power_mw") {
        const auto& p = cfg.state_power_mw;
        return format_double(p.sleeping_mw) + "," + format_double(p.listening_mw) + "," +
               format_double(p.ready_mw) + "," + format_double(p.transferring_mw);
    }
    if (key == "bs_tx_power_mw") return format_double(cfg.bs_tx_power_mw);
    if (key == "mt_tx_power_mw") return format_double(cfg.mt_tx_power_mw);
    if (key == "path_loss_exponent") return format_double(cfg.path_loss_exponent);
    if (key == "reference_distance_m") return format_double(cfg.reference_distance_m);
    if (key == "noise_power_mw") return format_double(cfg.noise_power_mw);
    if (key == "min_distance_m") return format_double(cfg.min_distance_m);
    if (key == "n_trials") return std::to_string(cfg.n_trials);
    if (key == "seed") return std::to_string(cfg.seed);
    throw ConfigError(std::string(key), "unknown config key '" + std::string(key) + "'");
}

ScenarioConfig parse_config(std::istream& in, ScenarioConfig base) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        set_config_field(base, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
    }
    base.validate();
    return base;
}

ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file " + path.string());
    return parse_config(in, base);
}

std::string canonical_config_text(const ScenarioConfig& cfg) {
    std::ostringstream out;
    for (const auto& field : kFields) {
        out << field.key << " = " << get_config_field(cfg, field.key) << '\n';
    }
    return out.str();
}

} // namespace cellless
