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

#include "heislab/report.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace heislab {

std::string format_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite value in report");
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
    return std::string(buf, end);
}

std::string format_cell(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(std::uint64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

nlohmann::ordered_json cell_json(const Cell& c) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(bool b) const { return b; }
        nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
        nlohmann::ordered_json operator()(std::uint64_t v) const { return v; }
        // keep the CSV spelling so both formats agree digit for digit
        nlohmann::ordered_json operator()(double v) const { return nlohmann::ordered_json::parse(format_double(v)); }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

}  // namespace

void ScenarioReport::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::logic_error(scenario + ": row has " + std::to_string(row.size()) + " cells, expected " +
                               std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

void ScenarioReport::fail(std::string message) {
    ++failures;
    if (failure_messages.size() < 32) failure_messages.push_back(std::move(message));
}

void ScenarioReport::note_ratio(double r) {
    if (!std::isfinite(r) || r < 0) throw std::domain_error(scenario + ": ratio must be finite and nonnegative");
    if (!min_ratio || r < *min_ratio) min_ratio = r;
}

std::size_t ScenarioReport::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::out_of_range("no column '" + name + "'");
}

std::string ScenarioReport::csv() const {
    std::string out = "scenario,seed";
    for (const auto& c : columns) out += "," + c;
    out += "\n";
    for (const auto& row : rows) {
        out += scenario + "," + std::to_string(seed);
        for (const auto& cell : row) out += "," + csv_escape(format_cell(cell));
        out += "\n";
    }
    return out;
}

std::string ScenarioReport::jsonl() const {
    std::string out;
    for (const auto& row : rows) {
        nlohmann::ordered_json j;
        j["scenario"] = scenario;
        j["seed"] = seed;
        for (std::size_t i = 0; i < columns.size(); ++i) j[columns[i]] = cell_json(row[i]);
        out += j.dump() + "\n";
    }
    return out;
}

std::string ScenarioReport::summary_json() const {
    nlohmann::ordered_json j;
    j["scenario"] = scenario;
    j["seed"] = seed;
    j["rows"] = rows.size();
    j["failures"] = failures;
    j["min_ratio"] = min_ratio ? cell_json(*min_ratio) : nlohmann::ordered_json(nullptr);
    j["messages"] = failure_messages;
    return j.dump();
}

}  // namespace heislab
