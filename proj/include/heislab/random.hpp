/*
   Copyright 2026 The heislab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

/**
 * @file random.hpp
 * @brief Seeded streams for reproducible trials.
 *
 * Each trial draws from mt19937_64 seeded by SplitMix64 over
 * (master seed, scenario, case, trial), so results do not depend on scheduling.
 */

#include "heislab/field.hpp"
#include "heislab/group.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace heislab {

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() noexcept;
};

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view text) noexcept;

std::uint64_t derive_seed(std::uint64_t master, std::string_view scenario, std::string_view case_label,
                          std::uint64_t trial) noexcept;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, n) by rejection; identical across standard libraries.
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi);
    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// k distinct values of [0, universe), reservoir sampled, returned ascending.
std::vector<std::uint64_t> reservoir_sample(Rng& rng, std::uint64_t universe, std::uint64_t k);
std::vector<ElementCode> sample_codes(Rng& rng, const Group& g, std::uint64_t k);
std::vector<Residue> sample_residues(Rng& rng, std::uint32_t p, std::uint64_t k, bool nonzero = false);

}  // namespace heislab
