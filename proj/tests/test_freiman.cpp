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

#include "heislab/freiman.hpp"
#include "heislab/random.hpp"

#include <doctest.h>

#include <map>
#include <vector>

using namespace heislab;

namespace {

// all sign patterns and all tuple pairs, no hashing
bool oracle_hom(const PartialMap& rho, unsigned s) {
    const Group& g = rho.source();
    const Group& h = rho.target();
    const std::size_t n = rho.size();
    std::vector<std::size_t> idx(s);
    for (unsigned mask = 0; mask < (1u << s); ++mask) {
        std::map<std::uint64_t, std::uint64_t> seen;
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
            ElementCode a = g.identity(), b = h.identity();
            for (unsigned j = 0; j < s; ++j) {
                const bool neg = mask >> j & 1;
                const ElementCode x = rho.domain()[idx[j]], y = rho.image()[idx[j]];
                a = g.mul(a, neg ? g.inverse(x) : x);
                b = h.mul(b, neg ? h.inverse(y) : y);
            }
            const auto [it, fresh] = seen.emplace(a.index, b.index);
            if (!fresh && it->second != b.index) return false;
            std::size_t j = 0;
            while (j < s && ++idx[j] == n) idx[j++] = 0;
            if (j == s) break;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("identity maps") {
    const Group z = Group::cyclic(11);
    const PartialMap id = PartialMap::identity(z, {{0}, {3}, {4}, {9}});
    for (unsigned s : {2u, 3u, 4u, 5u}) {
        CHECK(is_freiman_hom(id, s).ok);
        CHECK(is_freiman_iso(id, s));
    }
    const Group h = Group::heisenberg(3, 1);
    const PartialMap idh = PartialMap::identity(h, {{1}, {5}, {13}, {20}, {26}});
    CHECK(is_freiman_iso(idh, 5));
}

TEST_CASE("conjugation is a homomorphism") {
    const Group g = Group::heisenberg(3, 1);
    const ElementCode c{14};
    std::vector<ElementCode> dom = {{0}, {2}, {7}, {11}, {25}}, img;
    for (auto a : dom) img.push_back(g.mul(g.mul(c, a), g.inverse(c)));
    const PartialMap conj(g, g, dom, img);
    CHECK(is_freiman_hom(conj, 3).ok);
    CHECK(is_freiman_iso(conj, 3));
}

TEST_CASE("violations carry witnesses") {
    const Group z7 = Group::cyclic(7);
    const PartialMap bad(z7, z7, {{0}, {1}, {2}}, {{0}, {1}, {3}});
    const auto v = is_freiman_hom(bad, 2);
    REQUIRE_FALSE(v.ok);
    REQUIRE(v.witness.has_value());
    const auto& w = *v.witness;
    // recompute both products from the witness
    auto product = [&](const Group& g, const std::vector<ElementCode>& vals, const std::vector<std::size_t>& ix) {
        ElementCode acc = g.identity();
        for (std::size_t j = 0; j < ix.size(); ++j) acc = g.mul(acc, w.signs[j] > 0 ? vals[ix[j]] : g.inverse(vals[ix[j]]));
        return acc;
    };
    CHECK(product(z7, bad.domain(), w.first) == product(z7, bad.domain(), w.second));
    CHECK(product(z7, bad.image(), w.first) != product(z7, bad.image(), w.second));
    CHECK_FALSE(is_freiman_iso(bad, 2));
    const std::string text = witness_to_json(w);
    CHECK(text.find("signs") != std::string::npos);
}

TEST_CASE("dilation between two-element sets") {
    const Group z5 = Group::cyclic(5);
    const PartialMap dil(z5, z5, {{0}, {1}}, {{0}, {2}});
    CHECK(is_freiman_iso(dil, 2));
}

TEST_CASE("agreement with the unhashed oracle") {
    Rng rng(41);
    for (int t = 0; t < 40; ++t) {
        const Group g = t % 2 ? Group::cyclic(13) : Group::heisenberg(3, 1);
        const auto dom = sample_codes(rng, g, rng.between(2, 5));
        std::vector<ElementCode> img;
        for (auto d : dom) img.push_back(t % 4 < 2 ? sample_codes(rng, g, 1)[0] : g.mul(d, d));
        const PartialMap rho(g, g, dom, img);
        for (unsigned s : {2u, 3u}) CHECK(is_freiman_hom(rho, s).ok == oracle_hom(rho, s));
        CHECK(is_freiman_hom(rho, 3, 1).ok == is_freiman_hom(rho, 3, 3).ok);
    }
}

TEST_CASE("parallel search reports the same first witness") {
    const Group z11 = Group::cyclic(11);
    const PartialMap bad(z11, z11, {{0}, {1}, {2}, {5}, {7}}, {{0}, {1}, {3}, {5}, {7}});
    const auto one = is_freiman_hom(bad, 3, 1), four = is_freiman_hom(bad, 3, 4);
    REQUIRE(one.witness.has_value());
    REQUIRE(four.witness.has_value());
    CHECK(one.witness->signs == four.witness->signs);
    CHECK(one.witness->first == four.witness->first);
    CHECK(one.witness->second == four.witness->second);
}

TEST_CASE("composition and inverses") {
    const Group z7 = Group::cyclic(7);
    const PartialMap f(z7, z7, {{1}, {2}, {3}}, {{2}, {4}, {6}});
    const PartialMap g(z7, z7, {{2}, {4}}, {{1}, {2}});
    const PartialMap c = compose(g, f);
    CHECK(c.domain() == std::vector<ElementCode>{{1}, {2}});
    CHECK(c.image() == std::vector<ElementCode>{{1}, {2}});
    CHECK(f.inverse()(ElementCode{4}) == ElementCode{2});
    CHECK_FALSE(f(ElementCode{0}).has_value());
    const PartialMap collapse(z7, z7, {{1}, {2}}, {{3}, {3}});
    CHECK_FALSE(collapse.injective());
    CHECK_THROWS_AS(collapse.inverse(), std::invalid_argument);
    CHECK_THROWS_AS(is_freiman_iso(collapse, 2), std::invalid_argument);
}

TEST_CASE("validation") {
    const Group z7 = Group::cyclic(7);
    CHECK_THROWS_AS(PartialMap(z7, z7, {{1}, {1}}, {{2}, {3}}), std::invalid_argument);
    CHECK_THROWS_AS(PartialMap(z7, z7, {{1}}, {{2}, {3}}), std::invalid_argument);
    CHECK_THROWS_AS(PartialMap(z7, z7, {{9}}, {{2}}), std::out_of_range);
    const PartialMap id = PartialMap::identity(z7, {{1}});
    CHECK_THROWS_AS(is_freiman_hom(id, 1), std::invalid_argument);
    std::vector<ElementCode> many;
    for (std::uint64_t i = 0; i < 101; ++i) many.push_back({i});
    const PartialMap big = PartialMap::identity(Group::cyclic(101), many);
    CHECK_THROWS_AS(is_freiman_hom(big, 5), std::out_of_range);
}

TEST_CASE("json round trip") {
    const Group z7 = Group::cyclic(7);
    const PartialMap f(z7, Group::heisenberg(3, 1), {{1}, {2}}, {{4}, {26}});
    const PartialMap g = partial_map_from_json(partial_map_to_json(f));
    CHECK(g.domain() == f.domain());
    CHECK(g.image() == f.image());
    CHECK(g.target() == f.target());
    CHECK_THROWS(partial_map_from_json("{\"source\":{}}"));
}
