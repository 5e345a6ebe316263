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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace cellless {

// Philox4x32-10 block function (Salmon et al., SC'11). Stateless.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter counter, Key key) noexcept;
};

std::uint32_t fnv1a32(std::string_view text) noexcept;

// Counter-based random substream keyed by (seed, label, trial).
//
// The draw sequence is a pure function of the triple, so trials can be
// generated in any order or on any number of workers with identical
// results. Counter layout: [block index, trial lo, trial hi, hash(label)],
// key: the two halves of the seed.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::string_view label, std::uint64_t trial);

    std::uint64_t seed() const noexcept { return seed_; }
    const std::string& label() const noexcept { return label_; }
    std::uint64_t trial() const noexcept { return trial_; }

    std::uint32_t next_u32() noexcept;
    std::uint64_t next_u64() noexcept;

    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    // Exponential with unit mean.
    double exponential() noexcept;

    // Unbiased integer in [0, n); n must be > 0.
    std::uint64_t below(std::uint64_t n) noexcept;

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::string label_;
    std::uint64_t trial_;
    Philox4x32::Key key_;
    std::uint32_t label_hash_;
    std::uint32_t block_index_ = 0;
    Philox4x32::Counter buffer_{};
    std::size_t used_ = 4;
};

} // namespace cellless
