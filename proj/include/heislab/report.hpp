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
 * @file report.hpp
 * @brief Scenario reports: fixed columns per scenario, CSV and JSON-lines rendering.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace heislab {

/// Empty cells (monostate) mark "not applicable", e.g. the pass flag of a ratio-only row.
using Cell = std::variant<std::monostate, bool, std::int64_t, std::uint64_t, double, std::string>;

/// Shortest round-trip decimal; rejects non-finite values.
std::string format_double(double v);
std::string format_cell(const Cell& c);

struct ScenarioReport {
    std::string scenario;
    std::uint64_t seed = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::uint64_t failures = 0;
    std::vector<std::string> failure_messages;
    std::optional<double> min_ratio;

    /// Throws std::logic_error if the row width does not match the columns.
    void add_row(std::vector<Cell> row);
    /// Records a failed constant-free assertion.
    void fail(std::string message);
    void note_ratio(double r);
    std::size_t column(const std::string& name) const;

    std::string csv() const;
    std::string jsonl() const;
    /// {"scenario":..,"seed":..,"rows":..,"failures":..,"min_ratio":..,"messages":[..]}
    std::string summary_json() const;
};

}  // namespace heislab
