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

#include "heislab/energy.hpp"
#include "heislab/random.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

using namespace heislab;

namespace {

std::uint64_t oracle_energy(const FieldSet& a, const FieldSet& b, EnergyLaw law) {
    const PrimeField f(a.p());
    auto op = [&](Residue x, Residue y) { return law == EnergyLaw::add ? f.add(x, y) : f.mul(x, y); };
    std::uint64_t count = 0;
    for (auto a1 : a.elements())
        for (auto b1 : b.elements())
            for (auto a2 : a.elements())
                for (auto b2 : b.elements()) count += op(a1, b1) == op(a2, b2);
    return count;
}

std::uint64_t oracle_t_k(const FieldSet& a, unsigned k) {
    // count 2k-tuples with equal k-fold sums via explicit tuple enumeration
    const std::uint32_t p = a.p();
    const auto el = a.elements();
    std::map<Residue, std::uint64_t> sums;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        std::uint64_t s = 0;
        for (auto i : idx) s += el[i];
        ++sums[static_cast<Residue>(s % p)];
        std::size_t j = 0;
        while (j < k && ++idx[j] == el.size()) idx[j++] = 0;
        if (j == k) break;
    }
    std::uint64_t total = 0;
    for (const auto& [s, c] : sums) total += c * c;
    return total;
}

std::uint64_t oracle_group_energy(const GroupSet& a, const GroupSet& b) {
    const Group& g = a.group();
    std::uint64_t count = 0;
    for (auto a1 : a.codes())
        for (auto b1 : b.codes())
            for (auto a2 : a.codes())
                for (auto b2 : b.codes()) count += g.mul(a1, g.inverse(b1)) == g.mul(a2, g.inverse(b2));
    return count;
}

// sum_g r_{AA}(g)^2 from the defining system, by quadruple enumeration of the brick
std::uint64_t oracle_brick_system(const Group& g, const FieldSet& x, const FieldSet& y, const FieldSet& z) {
    std::vector<ElementCode> a;
    for (auto xv : x.elements())
        for (auto yv : y.elements())
            for (auto zv : z.elements()) {
                HElement e = h_identity(1);
                e.x[0] = xv;
                e.y[0] = yv;
                e.z = zv;
                a.push_back(g.encode(e));
            }
    std::map<std::uint64_t, std::uint64_t> r;
    for (auto u : a)
        for (auto v : a) ++r[g.mul(u, v).index];
    std::uint64_t total = 0;
    for (const auto& [k, c] : r) total += c * c;
    return total;
}

std::uint64_t oracle_sigma2(const FieldSet& x, const FieldSet& y) {
    const PrimeField f(x.p());
    std::uint64_t total = 0;
    for (auto x0 : x.elements())
        for (auto y0 : y.elements()) {
            if (y0 == 0) continue;
            const Residue w = f.div(x0, y0);
            for (auto x1 : x.elements())
                for (auto x2 : x.elements())
                    for (auto y1 : y.elements())
                        for (auto y2 : y.elements())
                            if (y1 != y2 && f.div(f.sub(x1, x2), f.sub(y1, y2)) == w) ++total;
        }
    return total;
}

MixedEnergySums oracle_mixed(const FieldSet& a, FiberConvention conv) {
    const PrimeField f(a.p());
    MixedEnergySums out;
    for (Residue lambda = 0; lambda < a.p(); ++lambda) {
        std::vector<Residue> fiber;
        for (auto v : a.elements())
            if (a.contains(f.sub(lambda, v))) fiber.push_back(v);
        out.sum_add_fibers += oracle_energy(FieldSet(a.p(), fiber), FieldSet(a.p(), fiber), EnergyLaw::mul);
    }
    for (Residue lambda = 1; lambda < a.p(); ++lambda) {
        std::vector<Residue> fiber;
        for (auto v : a.elements()) {
            bool in = false;
            for (auto w : a.elements()) {
                if (conv == FiberConvention::dilate) in |= v == f.mul(lambda, w);
                else if (w != 0) in |= v == f.mul(lambda, f.inv(w));
            }
            if (in) fiber.push_back(v);
        }
        out.sum_mul_fibers += oracle_energy(FieldSet(a.p(), fiber), FieldSet(a.p(), fiber), EnergyLaw::add);
    }
    return out;
}

FieldSet random_field_set(Rng& rng, std::uint32_t p, bool nonzero = false) {
    return FieldSet(p, sample_residues(rng, p, rng.between(1, nonzero ? p - 1 : p), nonzero));
}

}  // namespace

TEST_CASE("representation histograms") {
    const auto r0 = rep_histogram(FieldSet(7, {0}), FieldSet(7, {0}), Law::add).entries();
    CHECK(r0 == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{0, 1}});
    const FieldSet a(7, {0, 1, 2});
    CHECK(rep_histogram(a, a, Law::add).entries() ==
          std::vector<std::pair<std::uint64_t, std::uint64_t>>{{0, 1}, {1, 2}, {2, 3}, {3, 2}, {4, 1}});
    const FieldSet b(7, {1, 2});
    CHECK(rep_histogram(b, b, Law::div).entries() == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{1, 2}, {2, 1}, {4, 1}});
    CHECK(rep_histogram(FieldSet(7, {1}), FieldSet(7, {0, 1}), Law::div).total() == 1);
}

TEST_CASE("energies") {
    CHECK(energy(FieldSet(7, {0}), FieldSet(7, {0}), EnergyLaw::add) == 1);
    CHECK(energy(FieldSet(7, {0, 1, 2}), FieldSet(7, {0, 1, 2}), EnergyLaw::add) == 19);
    CHECK(energy(FieldSet(5, {1, 2}), FieldSet(5, {1, 2}), EnergyLaw::mul) == 6);
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
        const std::uint32_t p = t % 3 == 0 ? 3 : (t % 3 == 1 ? 5 : 7);
        const FieldSet x = random_field_set(rng, p), y = random_field_set(rng, p);
        CHECK(energy(x, y, EnergyLaw::add) == oracle_energy(x, y, EnergyLaw::add));
        CHECK(energy(x, y, EnergyLaw::mul) == oracle_energy(x, y, EnergyLaw::mul));
    }
}

TEST_CASE("T_k") {
    Histogram w(7);
    w.add(0);
    CHECK(t_k(w, 2) == 1);
    CHECK(t_k(w, 5) == 1);
    CHECK(t_k(indicator(FieldSet(101, {0, 1})), 3) == 20);
    CHECK(t_k(indicator(FieldSet(7, {0, 1, 2})), 2) == 19);
    CHECK_THROWS_AS(t_k(w, 1), std::invalid_argument);
    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
        const std::uint32_t p = t % 2 ? 5 : 7;
        const unsigned k = 2 + t % 3;
        const FieldSet a = random_field_set(rng, p);
        CHECK(t_k(indicator(a), k) == oracle_t_k(a, k));
    }
}

TEST_CASE("group energy") {
    const Group h = Group::heisenberg(3, 1);
    const std::vector<ElementCode> e = {h.identity()};
    CHECK(group_energy(GroupSet::from_codes(h, e), GroupSet::from_codes(h, e)) == 1);
    for (std::uint32_t p : {3u, 5u}) {
        const GroupSet c = center_line(Group::heisenberg(p, 1));
        CHECK(group_energy(c, c) == std::uint64_t{p} * p * p);
    }
    const GroupSet whole = GroupSet::whole(h);
    CHECK(group_energy(whole, whole) == 27ull * 27 * 27);
    Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        const Group g = t % 2 ? Group::heisenberg(3, 1) : Group::affine(7);
        const GroupSet a = GroupSet::from_codes(g, sample_codes(rng, g, rng.between(1, 9)));
        const GroupSet b = GroupSet::from_codes(g, sample_codes(rng, g, rng.between(1, 9)));
        CHECK(group_energy(a, b) == oracle_group_energy(a, b));
    }
}

TEST_CASE("brick system count") {
    for (std::uint32_t p : {3u, 5u}) {
        const Group g = Group::heisenberg(p, 1);
        const FieldSet full = FieldSet::full(p);
        const std::uint64_t n9 = static_cast<std::uint64_t>(std::pow(p, 9) + 0.5);
        CHECK(brick_system_count(full, full, full) == n9);
        Rng rng(p);
        for (int t = 0; t < 10; ++t) {
            const FieldSet x = random_field_set(rng, p), y = random_field_set(rng, p), z = random_field_set(rng, p);
            CHECK(brick_system_count(x, y, z) == oracle_brick_system(g, x, y, z));
        }
    }
    CHECK_THROWS(brick_system_count(FieldSet(103, {0}), FieldSet(103, {0}), FieldSet(103, {0})));
}

TEST_CASE("brick parameter K") {
    const Group h5 = Group::heisenberg(5, 1);
    CHECK(brick_parameter_K(GroupSet::whole(h5)) == Rational(25));
    CHECK(brick_parameter_K(brick(h5, BrickShape{{{0, 1}}, {{0, 1, 2}}, {0, 1, 2, 3}})) == Rational(6));
    auto code = [&](Residue x, Residue y, Residue z) {
        HElement e = h_identity(1);
        e.x[0] = x;
        e.y[0] = y;
        e.z = z;
        return h5.encode(e);
    };
    const std::vector<ElementCode> a = {code(0, 0, 0), code(0, 0, 1), code(1, 0, 0)};
    CHECK(brick_parameter_K(GroupSet::from_codes(h5, a)) == Rational(3, 2));
    const Histogram m = marginal_weight(GroupSet::from_codes(h5, a));
    CHECK(m.count(0) == 2);
    CHECK(m.count(5) == 1);
}

TEST_CASE("sigma2 correlation") {
    CHECK(sigma2_correlation(FieldSet(7, {1}), FieldSet(7, {1})) == 0);
    CHECK(sigma2_correlation(FieldSet(7, {1, 2}), FieldSet(7, {1, 3})) == oracle_sigma2(FieldSet(7, {1, 2}), FieldSet(7, {1, 3})));
    CHECK(sigma2_correlation(FieldSet::nonzero(5), FieldSet::nonzero(5)) == oracle_sigma2(FieldSet::nonzero(5), FieldSet::nonzero(5)));
    Rng rng(14);
    for (int t = 0; t < 20; ++t) {
        const FieldSet x = random_field_set(rng, 7), y = random_field_set(rng, 7);
        CHECK(sigma2_correlation(x, y) == oracle_sigma2(x, y));
    }
}

TEST_CASE("mixed energy sums") {
    const auto z = mixed_energy_sums(FieldSet(5, {0}));
    CHECK(z.sum_add_fibers == 1);
    const FieldSet a(5, {1, 2});
    CHECK(mixed_energy_sums(a).sum_add_fibers == 8);
    CHECK(mixed_energy_sums(a).sum_mul_fibers == oracle_mixed(a, FiberConvention::dilate).sum_mul_fibers);
    Rng rng(15);
    for (int t = 0; t < 30; ++t) {
        const std::uint32_t p = t % 2 ? 7 : 11;
        const FieldSet s = random_field_set(rng, p);
        for (auto conv : {FiberConvention::dilate, FiberConvention::dilate_inverse}) {
            const auto got = mixed_energy_sums(s, conv), want = oracle_mixed(s, conv);
            CHECK(got.sum_add_fibers == want.sum_add_fibers);
            CHECK(got.sum_mul_fibers == want.sum_mul_fibers);
        }
    }
}

TEST_CASE("set operations on F_p") {
    const FieldSet a(7, {1, 2, 5});
    CHECK(dilate(a, 3) == FieldSet(7, {3, 6, 1}));
    CHECK(reflect(a, 0) == FieldSet(7, {6, 5, 2}));
    CHECK(reciprocals(FieldSet(7, {0, 2, 3})) == FieldSet(7, {4, 5}));
    CHECK(intersect(a, FieldSet(7, {2, 3, 5})) == FieldSet(7, {2, 5}));
    CHECK_THROWS(FieldSet(7, {7}));
}

TEST_CASE("histograms") {
    Histogram dense(10), sparse(1ull << 40);
    for (std::uint64_t k : {1u, 3u, 3u, 9u}) {
        dense.add(k);
        sparse.add(k << 30);
    }
    CHECK(dense.dense());
    CHECK_FALSE(sparse.dense());
    CHECK(dense.sum_squares() == 6);
    CHECK(sparse.sum_squares() == 6);
    CHECK(dense.total() == 4);
    CHECK(dense.dot(dense) == 6);
    CHECK_THROWS_AS(dense.add(10), std::out_of_range);
    Histogram big(2);
    big.add(0, 1ull << 33);
    CHECK_THROWS_AS(big.sum_squares(), std::overflow_error);
}
