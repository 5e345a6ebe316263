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

#include <iosfwd>
#include <string>
#include <vector>

namespace cellless {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitConfigError = 2;

// Entry point of `cellless-sim`. Subcommands: coverage, bs-energy,
// mt-energy, validate. Reports go to --output (stdout when absent); the
// summary and diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "lo:hi:step" (inclusive) or a comma-separated list.
std::vector<double> parse_double_list(const std::string& text);
std::vector<std::size_t> parse_count_list(const std::string& text);

} // namespace cellless
