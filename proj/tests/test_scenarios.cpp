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

#include "heislab/scenarios.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace heislab;

namespace {

ScenarioConfig config(const std::string& name, std::uint64_t trials) {
    ScenarioConfig cfg;
    cfg.scenario = name;
    cfg.trials = trials;
    cfg.seed = 3;
    return cfg;
}

std::string cell(const ScenarioReport& r, std::size_t row, const std::string& column) {
    return format_cell(r.rows.at(row).at(r.column(column)));
}

// pass column holds only true or n/a, numbers are finite, ratios nonnegative
void check_clean(const ScenarioReport& r) {
    CHECK(r.failures == 0);
    for (const auto& m : r.failure_messages) MESSAGE(m);
    REQUIRE_FALSE(r.rows.empty());
    const std::size_t pass = r.column("pass");
    for (const auto& row : r.rows) {
        CHECK(row.size() == r.columns.size());
        const std::string v = format_cell(row[pass]);
        CHECK((v == "true" || v.empty()));
        for (std::size_t i = 0; i < row.size(); ++i)
            if (const double* d = std::get_if<double>(&row[i])) {
                CHECK(std::isfinite(*d));
                if (r.columns[i].find("ratio") != std::string::npos) CHECK(*d >= 0.0);
            }
    }
}

std::size_t find_row(const ScenarioReport& r, const std::string& column, const std::string& value) {
    for (std::size_t i = 0; i < r.rows.size(); ++i)
        if (cell(r, i, column) == value) return i;
    return r.rows.size();
}

}  // namespace

TEST_CASE("config parsing") {
    CHECK(parse_signs("+-+-") == std::vector<int>{1, -1, 1, -1});
    CHECK(parse_signs("+1,-1") == std::vector<int>{1, -1});
    CHECK(parse_signs("1 -1 -1 1") == std::vector<int>{1, -1, -1, 1});
    CHECK_THROWS_AS(parse_signs("+2"), ConfigError);
    CHECK(parse_uint_list("3,5,7") == std::vector<std::uint32_t>{3, 5, 7});
    CHECK_THROWS_AS(parse_uint_list("3,x"), ConfigError);
    const ScenarioConfig cfg = config_from_json(R"({"scenario":"run_incidence","p":[5],"alpha":"2/5","signs":"+-","seed":8})");
    CHECK(cfg.primes == std::vector<std::uint32_t>{5});
    CHECK(cfg.alpha == Rational(2, 5));
    CHECK(cfg.signs == std::vector<int>{1, -1});
    CHECK(config_from_json(config_to_json(cfg)).seed == 8);
    CHECK_THROWS_AS(config_from_json("{"), ConfigError);
    CHECK_THROWS_AS(run_scenario(config("nope", 1)), ConfigError);
    CHECK(scenario_names().size() == 9);
}

TEST_CASE("commutator cover") {
    auto r = run_commutator_cover(config("run_commutator_cover", 30));
    check_clean(r);
    CHECK(r.rows.size() == 30 * 5);
    auto cfg = config("run_commutator_cover", 5);
    cfg.group = "Aff";
    cfg.primes = {7};
    cfg.size = 19;
    r = run_commutator_cover(cfg);
    check_clean(r);
    CHECK(cell(r, 0, "size_a") == "19");
    cfg.size = 18;
    CHECK_THROWS_AS(run_commutator_cover(cfg), ConfigError);
    cfg = config("run_commutator_cover", 1);
    cfg.primes = {17};
    cfg.group = "H";
    CHECK_THROWS_AS(run_commutator_cover(cfg), ConfigError);
}

TEST_CASE("signed cover") {
    auto r = run_signed_cover(config("run_signed_cover", 30));
    check_clean(r);
    const std::size_t w = find_row(r, "case", "witness");
    REQUIRE(w < r.rows.size());
    CHECK(cell(r, w, "covered") != "3");
    CHECK(cell(r, 0, "min_size") == "16");
    auto cfg = config("run_signed_cover", 5);
    cfg.signs = {1, 1, -1};
    CHECK_THROWS_AS(run_signed_cover(cfg), ConfigError);
    cfg.signs = {1, 1, -1, 1};
    CHECK_THROWS_AS(run_signed_cover(cfg), ConfigError);
    cfg.signs = {1, 1, -1, -1, 1, -1};
    cfg.group = "Aff";
    cfg.primes = {5};
    r = run_signed_cover(cfg);
    check_clean(r);
    CHECK(cell(r, 0, "k") == "3");
}

TEST_CASE("growth bounds") {
    auto r = run_growth_bounds(config("run_growth_bounds", 10));
    check_clean(r);
    const std::size_t full = find_row(r, "case", "full_group");
    REQUIRE(full < r.rows.size());
    CHECK(cell(r, full, "pass") == "true");
    const std::size_t brick = find_row(r, "case", "brick_full");
    REQUIRE(brick < r.rows.size());
    CHECK(cell(r, brick, "pass") == "true");
    CHECK(find_row(r, "case", "brick_random") < r.rows.size());
    CHECK(r.min_ratio.has_value());
}

TEST_CASE("brick energy") {
    auto cfg = config("run_brick_energy", 4);
    cfg.primes = {3, 5};
    auto r = run_brick_energy(cfg);
    check_clean(r);
    const std::size_t full = find_row(r, "case", "full");
    CHECK(cell(r, full, "energy_group") == "19683");
    const std::size_t zz = find_row(r, "case", "z_zero");
    REQUIRE(zz < r.rows.size());
    CHECK(cell(r, zz, "e_term") == "0");
    cfg.primes = {7};
    cfg.brick = {4, 4, 4};
    r = run_brick_energy(cfg);
    check_clean(r);
    CHECK(cell(r, 1, "size") == "64");
    cfg.brick = {8, 1, 1};
    CHECK_THROWS_AS(run_brick_energy(cfg), ConfigError);
}

TEST_CASE("coset cover") {
    auto cfg = config("run_coset_cover", 3);
    cfg.primes = {3};
    auto r = run_coset_cover(cfg);
    check_clean(r);
    CHECK(cell(r, 0, "coverage") == "81");
    CHECK(cell(r, 0, "pass") == "true");
    cfg.n = 3;
    CHECK_THROWS_AS(run_coset_cover(cfg), ConfigError);
    cfg.n = 2;
    cfg.brick = {1, 3, 1, 1, 2};
    CHECK_THROWS_AS(run_coset_cover(cfg), ConfigError);
}

TEST_CASE("freiman scenario") {
    auto cfg = config("run_freiman_scenario", 8);
    cfg.primes = {5, 7};
    auto r = run_freiman_scenario(cfg);
    check_clean(r);
    CHECK(cell(r, 0, "case") == "doubling");
    CHECK(cell(r, 0, "value") == cell(r, 0, "expected"));
    cfg.primes = {7};
    cfg.alpha = Rational(1, 2);
    r = run_freiman_scenario(cfg);
    check_clean(r);
    CHECK(cell(r, 0, "value") == "343");
    cfg.primes = {5};
    CHECK_THROWS_AS(run_freiman_scenario(cfg), ConfigError);
}

TEST_CASE("mixed sums") {
    auto cfg = config("run_mixed_sums", 10);
    cfg.primes = {13, 31};
    auto r = run_mixed_sums(cfg);
    check_clean(r);
    cfg.convention = "dilate_inverse";
    check_clean(run_mixed_sums(cfg));
    cfg.convention = "other";
    CHECK_THROWS_AS(run_mixed_sums(cfg), ConfigError);
}

TEST_CASE("incidence scenario") {
    auto cfg = config("run_incidence", 10);
    cfg.primes = {5, 7};
    auto r = run_incidence(cfg);
    check_clean(r);
    CHECK(cell(r, 0, "case") == "sdz_full");
    CHECK(cell(r, 0, "ratio") == "0");
    CHECK(find_row(r, "case", "point_plane") < r.rows.size());
}

TEST_CASE("selftest and fault injection") {
    auto cfg = config("run_selftest", 0);
    auto r = run_selftest(cfg);
    CHECK(r.failures == 0);
    CHECK(r.rows.size() == 7);
    cfg.inject_fault = true;
    r = run_selftest(cfg);
    CHECK(r.failures == 1);
    REQUIRE(r.failure_messages.size() == 1);
    CHECK(r.failure_messages[0] == "rep_fourier/parseval_residual");
}

TEST_CASE("determinism across worker counts") {
    for (const std::string name : {"run_signed_cover", "run_growth_bounds", "run_incidence"}) {
        auto cfg = config(name, 6);
        cfg.workers = 1;
        const std::string one = run_scenario(cfg).csv();
        cfg.workers = 3;
        CHECK(run_scenario(cfg).csv() == one);
        cfg.seed = 4;
        CHECK(run_scenario(cfg).csv() != one);
    }
}

TEST_CASE("seed is recorded in every row") {
    auto cfg = config("incidence", 2);
    cfg.primes = {5};
    cfg.seed = 12345;
    const std::string csv = run_scenario(cfg).csv();
    std::size_t lines = 0, pos = csv.find('\n') + 1;
    while (pos < csv.size()) {
        CHECK(csv.compare(pos, 20, "run_incidence,12345,") == 0);
        pos = csv.find('\n', pos) + 1;
        ++lines;
    }
    CHECK(lines > 0);
}
