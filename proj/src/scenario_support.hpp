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

#include "heislab/report.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace heislab::detail {

/// Output of one trial, merged into the report in trial order.
struct TrialResult {
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> failures;
    std::vector<double> ratios;

    void fail(std::string message) { failures.push_back(std::move(message)); }
};

inline void merge(ScenarioReport& rep, TrialResult&& r) {
    for (auto& row : r.rows) rep.add_row(std::move(row));
    for (auto& m : r.failures) rep.fail(std::move(m));
    for (double x : r.ratios) rep.note_ratio(x);
}

/// Runs fn(t, out) for t in [0, trials) on up to `workers` threads.
template <class Fn>
void run_trials(ScenarioReport& rep, std::uint64_t trials, unsigned workers, Fn&& fn) {
    std::vector<TrialResult> results(trials);
    const unsigned w = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), std::max<std::uint64_t>(trials, 1)));
    if (w == 1) {
        for (std::uint64_t t = 0; t < trials; ++t) fn(t, results[t]);
    } else {
        std::vector<std::exception_ptr> errors(w);
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < w; ++i) {
            pool.emplace_back([&, i] {
                try {
                    for (std::uint64_t t = i; t < trials; t += w) fn(t, results[t]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    for (auto& r : results) merge(rep, std::move(r));
}

}  // namespace heislab::detail
