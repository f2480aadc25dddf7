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

#include "heislab/random.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace heislab {

std::uint64_t SplitMix64::next() noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view scenario, std::string_view case_label,
                          std::uint64_t trial) noexcept {
    SplitMix64 sm{master};
    sm.state ^= fnv1a(scenario);
    sm.next();
    sm.state ^= fnv1a(case_label);
    sm.next();
    sm.state ^= trial;
    return sm.next();
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do v = engine_();
    while (v >= limit);
    return v % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("empty range");
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::vector<std::uint64_t> reservoir_sample(Rng& rng, std::uint64_t universe, std::uint64_t k) {
    if (k > universe) throw std::invalid_argument("sample larger than universe");
    std::vector<std::uint64_t> r(k);
    for (std::uint64_t i = 0; i < k; ++i) r[i] = i;
    for (std::uint64_t i = k; i < universe; ++i) {
        const std::uint64_t j = rng.below(i + 1);
        if (j < k) r[j] = i;
    }
    std::sort(r.begin(), r.end());
    return r;
}

std::vector<ElementCode> sample_codes(Rng& rng, const Group& g, std::uint64_t k) {
    std::vector<ElementCode> out;
    for (auto v : reservoir_sample(rng, g.order(), k)) out.push_back({v});
    return out;
}

std::vector<Residue> sample_residues(Rng& rng, std::uint32_t p, std::uint64_t k, bool nonzero) {
    std::vector<Residue> out;
    const std::uint32_t shift = nonzero ? 1 : 0;
    for (auto v : reservoir_sample(rng, p - shift, k)) out.push_back(static_cast<Residue>(v + shift));
    return out;
}

}  // namespace heislab
