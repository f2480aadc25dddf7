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
 * @file scenarios.hpp
 * @brief Verification scenarios driven by a ScenarioConfig.
 *
 * Constant-free claims are asserted and counted as failures; claims with unspecified
 * constants only produce ratio rows.
 */

#include "heislab/rational.hpp"
#include "heislab/report.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace heislab {

/// Invalid or unsatisfiable configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ScenarioConfig {
    std::string scenario;
    std::vector<std::uint32_t> primes;  // empty: scenario default
    unsigned n = 0;                     // 0: scenario default
    std::uint64_t trials = 0;           // 0: scenario default
    std::uint64_t seed = 1;
    unsigned k = 0;
    std::optional<Rational> alpha;
    std::vector<int> signs;
    std::string group;                  // "H", "Aff" or empty for the scenario's own list
    std::uint64_t size = 0;             // |A| override
    std::vector<std::uint32_t> brick;   // factor sizes
    std::string convention = "dilate";  // mixed sums fiber convention
    unsigned workers = 1;
    bool inject_fault = false;
};

/// Accepts "+-+-", "+1,-1,+1,-1" or "1 -1 1 -1".
std::vector<int> parse_signs(const std::string& text);
std::vector<std::uint32_t> parse_uint_list(const std::string& text);

ScenarioConfig config_from_json(const std::string& text);
std::string config_to_json(const ScenarioConfig& cfg);

/// Names accepted by run_scenario (with the run_ prefix).
const std::vector<std::string>& scenario_names();

ScenarioReport run_commutator_cover(const ScenarioConfig& cfg);
ScenarioReport run_signed_cover(const ScenarioConfig& cfg);
ScenarioReport run_growth_bounds(const ScenarioConfig& cfg);
ScenarioReport run_brick_energy(const ScenarioConfig& cfg);
ScenarioReport run_coset_cover(const ScenarioConfig& cfg);
ScenarioReport run_freiman_scenario(const ScenarioConfig& cfg);
ScenarioReport run_mixed_sums(const ScenarioConfig& cfg);
ScenarioReport run_incidence(const ScenarioConfig& cfg);
ScenarioReport run_selftest(const ScenarioConfig& cfg);

/// Dispatches on cfg.scenario; the run_ prefix is optional. Throws ConfigError for unknown names.
ScenarioReport run_scenario(const ScenarioConfig& cfg);

}  // namespace heislab
