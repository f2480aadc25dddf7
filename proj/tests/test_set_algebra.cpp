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

#include "heislab/group_set.hpp"
#include "heislab/random.hpp"

#include <doctest.h>

#include <set>
#include <vector>

using namespace heislab;

namespace {

GroupSet make(const Group& g, std::vector<ElementCode> codes) { return GroupSet::from_codes(g, codes); }

ElementCode hc(const Group& g, Residue x, Residue y, Residue z) {
    HElement e = h_identity(g.n());
    e.x[0] = x;
    e.y[0] = y;
    e.z = z;
    return g.encode(e);
}

ElementCode ac(const Group& g, Residue a, Residue b) { return g.encode(AffElement{a, b}); }

std::set<ElementCode> oracle_signed(const GroupSet& a, const std::vector<int>& signs) {
    const Group& g = a.group();
    std::set<ElementCode> acc = {g.identity()};
    for (int e : signs) {
        std::set<ElementCode> next;
        for (auto x : acc)
            for (auto y : a.codes()) next.insert(g.mul(x, e > 0 ? y : g.inverse(y)));
        acc = std::move(next);
    }
    return acc;
}

std::set<ElementCode> as_set(const GroupSet& s) { return {s.codes().begin(), s.codes().end()}; }

}  // namespace

TEST_CASE("product sets") {
    const Group h3 = Group::heisenberg(3, 1);
    const GroupSet b = make(h3, {hc(h3, 1, 2, 0), hc(h3, 0, 1, 1)});
    CHECK(product_set(make(h3, {h3.identity()}), b) == b);
    CHECK(product_set(GroupSet::whole(h3), GroupSet::whole(h3)).size() == 27);
    const Group a5 = Group::affine(5);
    const GroupSet a = make(a5, {ac(a5, 1, 1), ac(a5, 2, 0)});
    CHECK(product_set(a, a) == make(a5, {ac(a5, 1, 2), ac(a5, 2, 1), ac(a5, 2, 2), ac(a5, 4, 0)}));
    CHECK_THROWS_AS(product_set(a, b), std::invalid_argument);
}

TEST_CASE("signed products") {
    const Group h3 = Group::heisenberg(3, 1);
    const std::vector<int> pm = {1, -1}, plus = {1};
    CHECK(signed_product(make(h3, {h3.identity()}), pm).size() == 1);
    const GroupSet a = make(h3, {hc(h3, 1, 0, 0), hc(h3, 0, 1, 0)});
    CHECK(signed_product(a, plus) == a);
    const GroupSet s = signed_product(a, pm);
    CHECK(s.contains(h3.identity()));
    // [1,0,0][0,2,0] = [1,2,1*2]
    CHECK(s.contains(hc(h3, 1, 2, 2)));
    CHECK(s.size() <= 4);
    CHECK_THROWS_AS(signed_product(a, std::vector<int>{1, 2}), std::invalid_argument);

    Rng rng(5);
    for (const Group& g : {Group::heisenberg(3, 1), Group::heisenberg(3, 2), Group::affine(7)}) {
        for (int t = 0; t < 10; ++t) {
            const GroupSet r = GroupSet::from_codes(g, sample_codes(rng, g, rng.between(1, 6)));
            const std::vector<int> signs = t % 2 ? std::vector<int>{1, -1, 1, -1} : std::vector<int>{-1, 1, 1};
            CHECK(as_set(signed_product(r, signs)) == oracle_signed(r, signs));
        }
    }
}

TEST_CASE("commutator sets") {
    const Group h3 = Group::heisenberg(3, 1);
    const GroupSet whole = GroupSet::whole(h3);
    CHECK(commutator_set(whole, make(h3, {h3.identity()})).size() == 1);
    const GroupSet c = commutator_set(whole, whole);
    CHECK(c == center_line(h3));
    const Group a5 = Group::affine(5);
    std::vector<ElementCode> u;
    for (Residue b = 0; b < 5; ++b) u.push_back(ac(a5, 1, b));
    CHECK(commutator_set(make(a5, u), make(a5, u)) == make(a5, {a5.identity()}));
}

TEST_CASE("bricks") {
    const Group h5 = Group::heisenberg(5, 1);
    const std::vector<Residue> all = {0, 1, 2, 3, 4};
    CHECK(brick(h5, BrickShape{{all}, {all}, all}) == GroupSet::whole(h5));
    const std::vector<Residue> a = {1, 3, 4};
    const GroupSet z0 = brick(h5, BrickShape{{a}, {a}, {0}});
    CHECK(z0.size() == 9);
    for (auto e : z0.codes()) CHECK(h5.decode_heisenberg(e).z == 0);
    const GroupSet named = brick(h5, BrickShape{{{0, 1}}, {{2}}, {0, 3}});
    CHECK(named == make(h5, {hc(h5, 0, 2, 0), hc(h5, 0, 2, 3), hc(h5, 1, 2, 0), hc(h5, 1, 2, 3)}));
    CHECK(BrickShape{{{0, 1}}, {{2}}, {0, 3}}.size() == 4);
    CHECK_THROWS_AS(brick(h5, BrickShape{{{0}, {1}}, {{2}}, {0}}), std::invalid_argument);
}

TEST_CASE("center and coset coverage") {
    for (std::uint32_t p : {3u, 5u}) {
        const Group g = Group::heisenberg(p, 1);
        const auto full = center_coverage(GroupSet::whole(g));
        CHECK(full.count == p);
        CHECK(full.full);
        const auto one = center_coverage(make(g, {g.identity()}));
        CHECK(one.count == 1);
        CHECK_FALSE(one.full);
        CHECK(coset_coverage(GroupSet::whole(g)) == std::uint64_t{p} * p);
        CHECK(coset_coverage(center_line(g)) == 1);
    }
    const Group h3 = Group::heisenberg(3, 1);
    const auto cc = center_coverage(commutator_set(GroupSet::whole(h3), GroupSet::whole(h3)));
    CHECK(cc.count == 3);
    CHECK(cc.full);
    CHECK(coset_coverage(brick(h3, BrickShape{{{0}}, {{0, 1}}, {0, 1, 2}})) == 2);
    CHECK(center_coverage(GroupSet::whole(Group::affine(5))).count == 5);
}

TEST_CASE("freiman base set") {
    CHECK(ceil_prime_power(5, Rational(1, 2)) == 3);
    CHECK(ceil_prime_power(7, Rational(1, 2)) == 3);
    CHECK(ceil_prime_power(4 * 4 + 1, Rational(1, 2)) == 5);
    const GroupSet a5 = freiman_base_set(5, Rational(2, 5));
    CHECK(a5.size() == 3 * 25);
    CHECK(product_set(a5, a5).size() == 2 * a5.size() - 25);
    const GroupSet a7 = freiman_base_set(7, Rational(1, 2));
    CHECK(a7.size() == 196);
    CHECK(product_set(a7, a7).size() == 343);
    CHECK_THROWS_AS(freiman_base_set(5, Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(freiman_base_set(5, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(freiman_base_set(5, Rational(0)), std::invalid_argument);
}

TEST_CASE("extremal witnesses") {
    const GroupSet w7 = extremal_witness(WitnessKind::heisenberg_progression, 7, 1, 2);
    CHECK(w7.size() == 7 * witness_progression_length(7, 2));
    CHECK(witness_progression_length(7, 2) == 3);
    const auto sq = product_set(w7, w7);
    CHECK_FALSE(center_coverage(sq).full);
    for (auto e : sq.codes()) CHECK(sq.group().decode_heisenberg(e).z <= 4);

    const GroupSet d5 = extremal_witness(WitnessKind::affine_diagonal, 5, 1, 2);
    CHECK(d5.size() == 4);
    const auto cov = center_coverage(product_set(d5, d5));
    CHECK(cov.count == 1);
    CHECK_FALSE(cov.full);

    const GroupSet w3 = extremal_witness(WitnessKind::heisenberg_progression, 3, 2, 2);
    const auto c3 = center_coverage(product_set(w3, w3));
    CHECK(c3.count == 1);
}

TEST_CASE("json round trip") {
    const Group a7 = Group::affine(7);
    const GroupSet s = make(a7, {ac(a7, 2, 3), ac(a7, 1, 0)});
    const std::string text = set_to_json(s);
    CHECK(text == "{\"group\":\"Aff\",\"p\":7,\"n\":0,\"codes\":[0,10]}");
    CHECK(set_from_json(text) == s);
    CHECK_THROWS(set_from_json("{\"group\":\"Aff\",\"p\":7,\"n\":1,\"codes\":[42]}"));
    CHECK_THROWS(set_from_json("not json"));
}

TEST_CASE("sets are deduplicated and validated") {
    const Group g = Group::heisenberg(3, 1);
    CHECK(make(g, {{1}, {1}, {2}}).size() == 2);
    CHECK_THROWS_AS(make(g, {{27}}), std::out_of_range);
    CHECK(GroupSet::whole(g).inverse() == GroupSet::whole(g));
}
