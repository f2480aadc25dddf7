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
#include "heislab/rep_fourier.hpp"

#include <doctest.h>

#include <complex>
#include <map>
#include <vector>

using namespace heislab;

namespace {

ElementCode hc(const Group& g, Residue x, Residue y, Residue z) {
    HElement e = h_identity(1);
    e.x[0] = x;
    e.y[0] = y;
    e.z = z;
    return g.encode(e);
}

GroupFunction random_function(Rng& rng, const Group& g) {
    GroupFunction f(g);
    for (auto& v : f.values) v = rng.between(-3, 3);
    return f;
}

// sum_y f(y) g(y^{-1} x) by direct enumeration
GroupFunction oracle_convolve(const GroupFunction& f, const GroupFunction& h) {
    const Group& g = f.group;
    GroupFunction out(g);
    for (std::uint64_t x = 0; x < g.order(); ++x)
        for (std::uint64_t y = 0; y < g.order(); ++y) out.values[x] += f.values[y] * h.values[g.mul(g.inverse({y}), {x}).index];
    return out;
}

std::int64_t sum_squares(const GroupFunction& f) {
    std::int64_t s = 0;
    for (auto v : f.values) s += v * v;
    return s;
}

RepMatrix scalar(std::uint32_t dim, std::uint32_t order, const CycloElement& c) {
    return c * RepMatrix::identity(dim, order);
}

}  // namespace

TEST_CASE("convention selftest picks a working W") {
    const WSelfTest& w = w_convention_selftest();
    REQUIRE_FALSE(w.heisenberg.empty());
    REQUIRE_FALSE(w.affine.empty());
    CHECK(w.heisenberg_choice.pattern == ShiftPattern::standard);
    for (std::uint32_t p : {3u, 5u, 7u}) {
        const auto h = check_heisenberg_convention(p, w.heisenberg_choice);
        CHECK(h.commutation_identity);
        CHECK(h.homomorphism);
        const auto a = check_affine_convention(p, w.affine_choice);
        CHECK(a.commutation_identity);
        CHECK(a.homomorphism);
    }
}

TEST_CASE("heisenberg representation") {
    const Group g = Group::heisenberg(3, 1);
    CHECK(pi_heisenberg(g, h_identity(1)) == RepMatrix::identity(3, 3));
    CHECK(pi_heisenberg(g, g.decode_heisenberg(hc(g, 0, 0, 1))) == scalar(3, 3, CycloElement::zeta_power(3, 1)));
    const HElement x = g.decode_heisenberg(hc(g, 1, 0, 0)), y = g.decode_heisenberg(hc(g, 0, 1, 0));
    CHECK(h_mul(g, x, y) == g.decode_heisenberg(hc(g, 1, 1, 1)));
    CHECK(pi_heisenberg(g, x) * pi_heisenberg(g, y) == pi_heisenberg(g, h_mul(g, x, y)));
    // all 729 pairs, every Galois conjugate
    for (std::uint32_t c = 1; c < 3; ++c)
        for (std::uint64_t a = 0; a < 27; ++a)
            for (std::uint64_t b = 0; b < 27; ++b) {
                const HElement u = g.decode_heisenberg({a}), v = g.decode_heisenberg({b});
                CHECK(pi_heisenberg_monomial(g, u, c) * pi_heisenberg_monomial(g, v, c) == pi_heisenberg_monomial(g, h_mul(g, u, v), c));
            }
}

TEST_CASE("affine representation") {
    const Group g3 = Group::affine(3);
    CHECK(pi_affine(g3, {1, 0}) == RepMatrix::identity(2, 3));
    RepMatrix d(2, 3);
    d.at(0, 0) = CycloElement::zeta_power(3, 1);
    d.at(1, 1) = CycloElement::zeta_power(3, 2);
    CHECK(pi_affine(g3, {1, 1}) == d);
    const Group g5 = Group::affine(5);
    CHECK(pi_affine(g5, {2, 3}) * pi_affine(g5, {4, 0}) == pi_affine(g5, aff_mul(g5, {2, 3}, {4, 0})));
    for (std::uint64_t a = 0; a < g3.order(); ++a)
        for (std::uint64_t b = 0; b < g3.order(); ++b)
            CHECK(pi_affine_monomial(g3, g3.decode_affine({a})) * pi_affine_monomial(g3, g3.decode_affine({b})) ==
                  pi_affine_monomial(g3, g3.decode_affine(g3.mul({a}, {b}))));
}

TEST_CASE("irreducibles are complete homomorphisms") {
    for (const Group& g : {Group::heisenberg(3, 1), Group::heisenberg(5, 1), Group::affine(5), Group::affine(7)}) {
        const auto irreps = irreducibles(g);
        std::uint64_t dims = 0;
        for (const auto& rho : irreps) dims += std::uint64_t{rho.dim} * rho.dim;
        CHECK(dims == g.order());
        if (g.order() > 60) continue;
        for (const auto& rho : irreps)
            for (std::uint64_t a = 0; a < g.order(); ++a)
                for (std::uint64_t b = 0; b < g.order(); ++b)
                    CHECK(evaluate(g, rho, g.mul({a}, {b})) == evaluate(g, rho, {a}) * evaluate(g, rho, {b}));
    }
    const auto h = irreducibles(Group::heisenberg(5, 1));
    CHECK(h.size() == 25 + 4);
    CHECK(irreducibles(Group::affine(7)).size() == 7);
}

TEST_CASE("fourier transform examples") {
    const Group g = Group::heisenberg(3, 1);
    const auto delta = fourier_transform(GroupFunction::delta(g, g.identity()));
    for (const auto& e : delta.entries) CHECK(e.value == RepMatrix::identity(e.irrep.dim, e.irrep.order));
    GroupFunction ones(g);
    for (auto& v : ones.values) v = 1;
    const auto fo = fourier_transform(ones);
    for (const auto& e : fo.entries) {
        const bool trivial = e.irrep.kind == IrrepKind::character && e.irrep.param[0] == 0 && e.irrep.param[1] == 0;
        if (trivial) {
            CHECK(e.value.at(0, 0) == CycloElement::integer(e.value.order(), 27));
        } else {
            CHECK(e.value.is_zero());
            CHECK(op_norm(e.value) == doctest::Approx(0.0).epsilon(1e-9));
        }
    }
    // the center sums zeta^z over z, which vanishes for the dimension-p representations
    const auto fc = fourier_transform(GroupFunction::indicator(center_line(g)));
    for (const auto& e : fc.entries)
        if (e.irrep.kind == IrrepKind::standard) CHECK(e.value.is_zero());
}

TEST_CASE("fourier identities on random functions") {
    Rng rng(21);
    for (const Group& g : {Group::heisenberg(3, 1), Group::heisenberg(5, 1), Group::affine(5), Group::affine(7)}) {
        for (int t = 0; t < 5; ++t) {
            const GroupFunction f = random_function(rng, g), h = random_function(rng, g);
            const auto ff = fourier_transform(f);
            CHECK(fourier_invert(ff) == f);
            CHECK(parseval_residual(f) == 0);
            if (g.kind() == GroupKind::heisenberg) CHECK(validate_split_form(f, ff));
            const GroupFunction conv = convolve(f, h);
            CHECK(conv == oracle_convolve(f, h));
            const auto fh = fourier_transform(h), fc = fourier_transform(conv);
            for (std::size_t i = 0; i < fc.entries.size(); ++i) CHECK(fc.entries[i].value == ff.entries[i].value * fh.entries[i].value);
            // Parseval against the direct sum of squares; single terms need not be rational,
            // the sum over each ring is
            std::map<std::uint32_t, CycloElement> by_order;
            for (const auto& e : ff.entries) {
                auto it = by_order.try_emplace(e.value.order(), CycloElement(e.value.order())).first;
                it->second += hs_norm_sq(e.value) * static_cast<std::int64_t>(e.irrep.dim);
            }
            std::int64_t spectral = 0;
            for (const auto& [order, v] : by_order) {
                REQUIRE(v.to_integer().has_value());
                spectral += *v.to_integer();
            }
            CHECK(spectral == static_cast<std::int64_t>(g.order()) * sum_squares(f));
        }
    }
}

TEST_CASE("inversion rejects non-integral bundles") {
    const Group g = Group::heisenberg(3, 1);
    auto bundle = fourier_transform(GroupFunction::delta(g, g.identity()));
    bundle.entries.front().value.at(0, 0) += CycloElement::integer(bundle.entries.front().value.order(), 1);
    CHECK_THROWS_AS(fourier_invert(bundle), std::domain_error);
    CHECK(parseval_residual(GroupFunction::delta(g, g.identity()), bundle) != 0);
}

TEST_CASE("convolution examples") {
    const Group g = Group::heisenberg(3, 1);
    Rng rng(22);
    const GroupFunction f = random_function(rng, g);
    CHECK(convolve(GroupFunction::delta(g, g.identity()), f) == f);
    const ElementCode a = hc(g, 1, 2, 0), b = hc(g, 2, 2, 1);
    CHECK(convolve(GroupFunction::delta(g, a), GroupFunction::delta(g, b)) == GroupFunction::delta(g, g.mul(a, b)));
    const GroupSet sa = GroupSet::from_codes(g, sample_codes(rng, g, 6)), sb = GroupSet::from_codes(g, sample_codes(rng, g, 7));
    const GroupFunction ab = convolve(GroupFunction::indicator(sa), GroupFunction::indicator(sb));
    const Histogram r = group_rep_histogram(sa, sb, GroupLaw::product);
    for (std::uint64_t x = 0; x < g.order(); ++x) CHECK(ab.values[x] == static_cast<std::int64_t>(r.count(x)));
}

TEST_CASE("parseval examples") {
    for (const Group& g : {Group::heisenberg(3, 1), Group::affine(5)}) {
        CHECK(parseval_residual(GroupFunction::delta(g, g.identity())) == 0);
        GroupFunction ones(g);
        for (auto& v : ones.values) v = 1;
        CHECK(parseval_residual(ones) == 0);
    }
    Rng rng(23);
    const Group g5 = Group::heisenberg(5, 1);
    for (int t = 0; t < 100; ++t) CHECK(parseval_residual(random_function(rng, g5)) == 0);
}

TEST_CASE("norms") {
    const Group g = Group::heisenberg(3, 1);
    CHECK(hs_norm_sq_integer(RepMatrix::identity(3, 3)) == 3);
    CHECK(op_norm(RepMatrix::identity(3, 3)) == doctest::Approx(1.0).epsilon(1e-9));
    for (std::uint64_t c = 0; c < 27; c += 5) {
        const RepMatrix m = pi_heisenberg(g, g.decode_heisenberg({c}));
        CHECK(hs_norm_sq_integer(m) == 3);
        CHECK(op_norm(m) == doctest::Approx(1.0).epsilon(1e-9));
    }
    const std::vector<ElementCode> two = {g.identity(), hc(g, 1, 0, 0)};
    const auto fa = fourier_transform(GroupFunction::indicator(GroupSet::from_codes(g, two)));
    for (const auto& e : fa.entries) {
        if (e.irrep.kind != IrrepKind::standard) continue;
        const auto v = hs_norm_sq(e.value).to_integer();
        REQUIRE(v.has_value());
        CHECK(*v >= 0);
        CHECK(*v <= 18);
        // ||I + pi([1,0,0])||^2 = 2p because the trace of the shift vanishes
        CHECK(*v == 6);
    }
}

TEST_CASE("energy through the spectrum") {
    const Group h3 = Group::heisenberg(3, 1);
    const std::vector<ElementCode> e = {h3.identity()};
    CHECK(group_energy_via_fourier(GroupSet::from_codes(h3, e)) == 1);
    CHECK(group_energy_via_fourier(center_line(h3)) == 27);
    Rng rng(24);
    const Group h5 = Group::heisenberg(5, 1);
    for (int t = 0; t < 50; ++t) {
        const GroupSet a = GroupSet::from_codes(h5, sample_codes(rng, h5, t == 0 ? 20 : rng.between(1, 40)));
        CHECK(group_energy_via_fourier(a) == group_energy(a, a));
    }
    const Group a7 = Group::affine(7);
    for (int t = 0; t < 10; ++t) {
        const GroupSet a = GroupSet::from_codes(a7, sample_codes(rng, a7, rng.between(1, 30)));
        CHECK(group_energy_via_fourier(a) == group_energy(a, a));
    }
}

TEST_CASE("unsupported groups are rejected") {
    CHECK_THROWS_AS(require_fourier_group(Group::heisenberg(3, 2)), std::invalid_argument);
    CHECK_THROWS_AS(require_fourier_group(Group::heisenberg(37, 1)), std::invalid_argument);
    CHECK_THROWS_AS(require_fourier_group(Group::cyclic(5)), std::invalid_argument);
}
