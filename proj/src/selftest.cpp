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
#include "heislab/freiman.hpp"
#include "heislab/group_set.hpp"
#include "heislab/incidence.hpp"
#include "heislab/random.hpp"
#include "heislab/rep_fourier.hpp"
#include "heislab/scenarios.hpp"

#include <set>
#include <string>
#include <vector>

namespace heislab {

namespace {

struct Suite {
    std::string name;
    std::uint64_t checks = 0;
    std::vector<std::string> failures;

    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok) failures.push_back(name + "/" + what);
    }
};

GroupFunction random_function(Rng& rng, const Group& g) {
    GroupFunction f(g);
    for (auto& v : f.values) v = rng.between(-2, 2);
    return f;
}

std::uint64_t brute_field_energy(const FieldSet& a, EnergyLaw law) {
    const PrimeField f(a.p());
    std::uint64_t count = 0;
    for (auto a1 : a.elements())
        for (auto a2 : a.elements())
            for (auto a3 : a.elements())
                for (auto a4 : a.elements())
                    count += law == EnergyLaw::add ? f.add(a1, a2) == f.add(a3, a4) : f.mul(a1, a2) == f.mul(a3, a4);
    return count;
}

std::uint64_t brute_group_energy(const GroupSet& a, const GroupSet& b) {
    const Group& g = a.group();
    std::uint64_t count = 0;
    for (auto a1 : a.codes())
        for (auto b1 : b.codes())
            for (auto a2 : a.codes())
                for (auto b2 : b.codes())
                    count += g.mul(a1, g.inverse(b1)) == g.mul(a2, g.inverse(b2));
    return count;
}

Suite group_suite(Rng& rng) {
    Suite s{"group", 0, {}};
    for (const Group& g : {Group::heisenberg(3, 1), Group::heisenberg(3, 2), Group::affine(5), Group::affine(7)}) {
        bool assoc = true, unit = true, inv = true, comm = true;
        for (int t = 0; t < 200; ++t) {
            const auto c = sample_codes(rng, g, 3);
            const ElementCode a = c[0], b = c[1], d = c[2];
            assoc &= g.mul(g.mul(a, b), d) == g.mul(a, g.mul(b, d));
            unit &= g.mul(a, g.identity()) == a && g.mul(g.identity(), a) == a;
            inv &= g.mul(a, g.inverse(a)) == g.identity();
            comm &= g.commutator(a, b) == g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b)));
            if (g.kind() == GroupKind::heisenberg) {
                const HElement x = g.decode_heisenberg(a), y = g.decode_heisenberg(b);
                const PrimeField& f = g.field();
                Residue z = 0;
                for (unsigned i = 0; i < g.n(); ++i) z = f.add(z, f.sub(f.mul(x.x[i], y.y[i]), f.mul(y.x[i], x.y[i])));
                HElement expect = h_identity(g.n());
                expect.z = z;
                comm &= g.decode_heisenberg(g.commutator(a, b)) == expect;
            } else {
                comm &= g.decode_affine(g.commutator(a, b)) == aff_commutator(g, g.decode_affine(a), g.decode_affine(b));
            }
        }
        s.check(assoc, g.name() + "/associativity");
        s.check(unit, g.name() + "/identity");
        s.check(inv, g.name() + "/inverse");
        s.check(comm, g.name() + "/commutator");
    }
    s.check(conjugacy_class_count(Group::heisenberg(3, 1)) == 11, "H_1(F_3)/classes");
    s.check(conjugacy_class_count(Group::affine(5)) == 5, "Aff(F_5)/classes");
    s.check(conjugacy_class_count(Group::heisenberg(3, 2)) == 83, "H_2(F_3)/classes");
    return s;
}

Suite set_suite(Rng& rng) {
    Suite s{"set_algebra", 0, {}};
    for (const Group& g : {Group::heisenberg(3, 1), Group::affine(5)}) {
        for (int t = 0; t < 10; ++t) {
            const GroupSet a = GroupSet::from_codes(g, sample_codes(rng, g, rng.between(1, 8)));
            const GroupSet b = GroupSet::from_codes(g, sample_codes(rng, g, rng.between(1, 8)));
            std::set<ElementCode> prod, comm, signed3;
            for (auto x : a.codes())
                for (auto y : b.codes()) {
                    prod.insert(g.mul(x, y));
                    comm.insert(g.commutator(x, y));
                }
            for (auto x : a.codes())
                for (auto y : a.codes())
                    for (auto z : a.codes()) signed3.insert(g.mul(g.mul(x, g.inverse(y)), z));
            auto same = [](const GroupSet& got, const std::set<ElementCode>& want) {
                return got.size() == want.size() && std::equal(got.codes().begin(), got.codes().end(), want.begin());
            };
            const std::vector<int> signs = {1, -1, 1};
            s.check(same(product_set(a, b), prod), g.name() + "/product_set");
            s.check(same(commutator_set(a, b), comm), g.name() + "/commutator_set");
            s.check(same(signed_product(a, signs), signed3), g.name() + "/signed_product");
        }
    }
    return s;
}

Suite representation_suite() {
    Suite s{"representation", 0, {}};
    const WSelfTest& w = w_convention_selftest();
    s.check(!w.heisenberg.empty() && !w.affine.empty(), "convention_selftest");
    for (std::uint32_t p : {3u, 5u, 7u}) {
        const auto h = check_heisenberg_convention(p, w.heisenberg_choice);
        s.check(h.commutation_identity && h.homomorphism, "heisenberg_identities/p" + std::to_string(p));
        const auto a = check_affine_convention(p, w.affine_choice);
        s.check(a.commutation_identity && a.homomorphism, "affine_identities/p" + std::to_string(p));
    }
    for (const Group& g : {Group::heisenberg(3, 1), Group::affine(5)}) {
        std::uint64_t dims = 0;
        bool hom = true;
        for (const Irrep& rho : irreducibles(g)) {
            dims += std::uint64_t{rho.dim} * rho.dim;
            for (std::uint64_t x = 0; x < g.order(); ++x)
                for (std::uint64_t y = 0; y < g.order(); ++y)
                    hom &= evaluate(g, rho, g.mul({x}, {y})) == evaluate(g, rho, {x}) * evaluate(g, rho, {y});
        }
        s.check(dims == g.order(), g.name() + "/dimension_sum");
        s.check(hom, g.name() + "/homomorphism");
    }
    return s;
}

Suite fourier_suite(Rng& rng, bool inject_fault) {
    Suite s{"rep_fourier", 0, {}};
    for (const Group& g : {Group::heisenberg(3, 1), Group::heisenberg(5, 1), Group::affine(5), Group::affine(7)}) {
        for (int t = 0; t < 3; ++t) {
            const GroupFunction f = random_function(rng, g), h = random_function(rng, g);
            const SpectrumBundle ff = fourier_transform(f), fh = fourier_transform(h);
            s.check(parseval_residual(f) == 0, g.name() + "/parseval");
            s.check(fourier_invert(ff) == f, g.name() + "/inversion");
            if (g.kind() == GroupKind::heisenberg) s.check(validate_split_form(f, ff), g.name() + "/split_form");
            const SpectrumBundle fc = fourier_transform(convolve(f, h));
            bool conv = true;
            for (std::size_t i = 0; i < fc.entries.size(); ++i) conv &= fc.entries[i].value == ff.entries[i].value * fh.entries[i].value;
            s.check(conv, g.name() + "/convolution");
        }
    }
    const Group g = Group::heisenberg(3, 1);
    const GroupFunction f = random_function(rng, g);
    SpectrumBundle bundle = fourier_transform(f);
    if (inject_fault) {
        RepMatrix& m = bundle.entries.back().value;
        m.at(0, 0) += CycloElement::integer(m.order(), 1);
    }
    s.check(parseval_residual(f, bundle) == 0, "parseval_residual");
    return s;
}

Suite energy_suite(Rng& rng) {
    Suite s{"energy", 0, {}};
    for (std::uint32_t p : {5u, 7u, 11u}) {
        for (int t = 0; t < 5; ++t) {
            const FieldSet a(p, sample_residues(rng, p, rng.between(1, p)));
            s.check(energy(a, a, EnergyLaw::add) == brute_field_energy(a, EnergyLaw::add), "additive/p" + std::to_string(p));
            s.check(energy(a, a, EnergyLaw::mul) == brute_field_energy(a, EnergyLaw::mul), "multiplicative/p" + std::to_string(p));
        }
    }
    for (const Group& g : {Group::heisenberg(3, 1), Group::affine(5)}) {
        for (int t = 0; t < 5; ++t) {
            const GroupSet a = GroupSet::from_codes(g, sample_codes(rng, g, rng.between(1, 10)));
            const GroupSet b = GroupSet::from_codes(g, sample_codes(rng, g, rng.between(1, 10)));
            s.check(group_energy(a, b) == brute_group_energy(a, b), g.name() + "/group_energy");
            s.check(group_energy(a, a) == group_energy_via_fourier(a), g.name() + "/fourier_energy");
        }
    }
    return s;
}

Suite incidence_suite(Rng& rng) {
    Suite s{"incidence", 0, {}};
    for (std::uint32_t p : {5u, 7u}) {
        for (int t = 0; t < 5; ++t) {
            std::vector<Point2> pts;
            for (auto c : reservoir_sample(rng, std::uint64_t{p} * p, rng.between(1, p * p)))
                pts.push_back({static_cast<Residue>(c / p), static_cast<Residue>(c % p)});
            const LineSet all = LineSet::all(p);
            std::uint64_t brute = 0;
            for (const auto& l : all.lines())
                for (const auto& r : pts) brute += incident(p, r, l);
            s.check(count_incidences(pts, all) == brute, "lines/p" + std::to_string(p));
            s.check(brute == pts.size() * (p + 1), "pencil/p" + std::to_string(p));
        }
    }
    return s;
}

Suite freiman_suite(Rng& rng) {
    Suite s{"freiman", 0, {}};
    const Group z7 = Group::cyclic(7);
    // 0 + 2 = 1 + 1 but 0 + 3 != 1 + 1
    const PartialMap bad(z7, z7, {{0}, {1}, {2}}, {{0}, {1}, {3}});
    const auto v = is_freiman_hom(bad, 2);
    s.check(!v.ok && v.witness.has_value(), "witness");
    const PartialMap id = PartialMap::identity(z7, {{0}, {1}, {2}, {4}});
    s.check(is_freiman_iso(id, 3), "identity_iso");
    const Group h = Group::heisenberg(3, 1);
    std::vector<ElementCode> dom;
    for (auto c : sample_codes(rng, h, 6)) dom.push_back(c);
    s.check(is_freiman_iso(PartialMap::identity(h, dom), 2), "heisenberg_identity");
    const PartialMap back = partial_map_from_json(partial_map_to_json(bad));
    s.check(back.domain() == bad.domain() && back.image() == bad.image(), "json_roundtrip");
    return s;
}

}  // namespace

ScenarioReport run_selftest(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    rep.scenario = "run_selftest";
    rep.seed = cfg.seed;
    rep.columns = {"suite", "checks", "failures", "pass"};
    Rng rng(derive_seed(cfg.seed, rep.scenario, "all", 0));
    std::vector<Suite> suites;
    suites.push_back(group_suite(rng));
    suites.push_back(set_suite(rng));
    suites.push_back(representation_suite());
    suites.push_back(fourier_suite(rng, cfg.inject_fault));
    suites.push_back(energy_suite(rng));
    suites.push_back(incidence_suite(rng));
    suites.push_back(freiman_suite(rng));
    for (auto& s : suites) {
        rep.add_row({s.name, s.checks, std::uint64_t{s.failures.size()}, s.failures.empty()});
        for (auto& m : s.failures) rep.fail(std::move(m));
    }
    return rep;
}

}  // namespace heislab
