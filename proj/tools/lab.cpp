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

// lab: command-line driver for the heislab scenarios.

#include "heislab/heislab.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

namespace {

struct StringDeleter {
    void operator()(char* s) const { hl_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

unsigned worker_count() {
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LAB_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) workers = static_cast<unsigned>(v);
        } catch (const std::exception&) {
            std::cerr << "lab: ignoring malformed LAB_WORKERS='" << env << "'\n";
        }
    }
    return workers;
}

std::vector<unsigned> parse_list(const std::string& text) {
    std::vector<unsigned> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const std::string item = text.substr(start, end - start);
        if (!item.empty()) {
            std::size_t used = 0;
            const unsigned long v = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument("bad list entry '" + item + "'");
            out.push_back(static_cast<unsigned>(v));
        }
        start = end + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heislab experiment harness"};
    app.set_version_flag("--version", std::string(hl_version()));

    std::string scenario, primes, alpha, signs, out_path, format = "csv", group, brick, convention = "dilate";
    unsigned n = 0, k = 0;
    std::uint64_t trials = 0, seed = 1, size = 0;
    bool inject_fault = false;

    app.add_option("scenario", scenario, "run_selftest, run_commutator_cover, run_signed_cover, run_growth_bounds, "
                                         "run_brick_energy, run_coset_cover, run_freiman_scenario, run_mixed_sums, run_incidence")
        ->required();
    app.add_option("--p", primes, "comma-separated primes");
    app.add_option("--n", n, "Heisenberg dimension");
    app.add_option("--trials", trials, "trials per case")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "master seed");
    app.add_option("--k", k, "product length parameter");
    app.add_option("--alpha", alpha, "exponent as a/b or decimal");
    app.add_option("--signs", signs, "sign pattern such as +-+- or +1,-1,+1,-1");
    app.add_option("--group", group, "restrict to H or Aff");
    app.add_option("--size", size, "fixed |A|");
    app.add_option("--brick", brick, "comma-separated brick factor sizes");
    app.add_option("--convention", convention, "mixed-sum fibers: dilate or dilate_inverse");
    app.add_flag("--inject-fault", inject_fault, "corrupt a Fourier bundle in run_selftest");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    nlohmann::ordered_json cfg;
    try {
        cfg["scenario"] = scenario;
        if (!primes.empty()) cfg["p"] = parse_list(primes);
        cfg["n"] = n;
        cfg["trials"] = trials;
        cfg["seed"] = seed;
        cfg["k"] = k;
        if (!alpha.empty()) cfg["alpha"] = alpha;
        if (!signs.empty()) cfg["signs"] = signs;
        if (!group.empty()) cfg["group"] = group;
        cfg["size"] = size;
        if (!brick.empty()) cfg["brick"] = parse_list(brick);
        cfg["convention"] = convention;
        cfg["workers"] = worker_count();
        cfg["inject_fault"] = inject_fault;
    } catch (const std::exception& e) {
        std::cerr << "lab: configuration error: " << e.what() << "\n";
        return 1;
    }

    hl_report* raw = nullptr;
    const hl_status st = hl_run_scenario(cfg.dump().c_str(), &raw);
    if (st != HL_OK) {
        std::cerr << "lab: " << (st == HL_ERR_CONFIG ? "configuration error" : "error") << " (" << hl_status_name(st)
                  << "): " << hl_last_error() << "\n";
        return 1;
    }
    std::unique_ptr<hl_report, decltype(&hl_report_free)> report(raw, hl_report_free);

    char* body_raw = nullptr;
    if ((format == "csv" ? hl_report_csv(report.get(), &body_raw) : hl_report_jsonl(report.get(), &body_raw)) != HL_OK) {
        std::cerr << "lab: " << hl_last_error() << "\n";
        return 1;
    }
    OwnedString body(body_raw);
    char* summary_raw = nullptr;
    hl_report_summary(report.get(), &summary_raw);
    OwnedString summary(summary_raw);
    std::uint64_t failures = 0;
    hl_report_failures(report.get(), &failures);

    if (out_path.empty()) {
        std::cout << body.get();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "lab: cannot open " << out_path << "\n";
            return 1;
        }
        out << body.get();
    }
    std::cerr << summary.get() << "\n";
    return failures > 0 ? 2 : 0;
}
