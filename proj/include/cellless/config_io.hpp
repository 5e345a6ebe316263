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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "cellless/scenario.hpp"

namespace cellless {

// Flat `key = value` schema, one key per ScenarioConfig field.
// `#` starts a comment; blank lines are ignored; unknown keys are errors.
struct ConfigField {
    std::string_view key;
    std::string_view unit;
    std::string_view description;
};

std::span<const ConfigField> config_fields() noexcept;

// Parses `value` into the named field. Throws ConfigError naming the key on
// an unknown key or a malformed value. Does not run validate().
void set_config_field(ScenarioConfig& cfg, std::string_view key, std::string_view value);

// Shortest text that parses back to the identical value.
std::string get_config_field(const ScenarioConfig& cfg, std::string_view key);

// Applies every line of the stream on top of `base` and validates.
ScenarioConfig parse_config(std::istream& in, ScenarioConfig base = {});
ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base = {});

// Every field as `key = value\n`, registry order.
std::string canonical_config_text(const ScenarioConfig& cfg);

} // namespace cellless
