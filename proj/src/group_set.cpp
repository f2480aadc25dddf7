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

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace heislab {

namespace detail {

MembershipStore::MembershipStore(std::uint64_t universe) : dense_(universe <= kDenseSetLimit) {
    if (dense_) words_.assign((universe + 63) / 64, 0);
}

bool MembershipStore::insert(std::uint64_t code) {
    if (dense_) {
        std::uint64_t& w = words_[code >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (code & 63);
        if (w & bit) return false;
        w |= bit;
        ++count_;
        return true;
    }
    const bool added = hashed_.insert(code).second;
    count_ += added;
    return added;
}

bool MembershipStore::contains(std::uint64_t code) const noexcept {
    if (dense_) return (code >> 6) < words_.size() && ((words_[code >> 6] >> (code & 63)) & 1);
    return hashed_.count(code) != 0;
}

std::vector<ElementCode> MembershipStore::sorted() const {
    std::vector<ElementCode> out;
    out.reserve(count_);
    if (dense_) {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                out.push_back(ElementCode{w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits))});
                bits &= bits - 1;
            }
        }
    } else {
        for (auto c : hashed_) out.push_back(ElementCode{c});
        std::sort(out.begin(), out.end());
    }
    return out;
}

}  // namespace detail

GroupSet::GroupSet(Group group) : group_(group), store_(group.order()) {}

GroupSet::GroupSet(Group group, detail::MembershipStore store)
    : group_(std::move(group)), store_(std::move(store)), sorted_(store_.sorted()) {}

GroupSet GroupSet::from_codes(Group group, std::span<const ElementCode> codes) {
    GroupSetBuilder b(group);
    for (auto c : codes) {
        group.check(c);
        b.insert(c);
    }
    return std::move(b).build();
}

GroupSet GroupSet::whole(Group group) {
    if (group.order() > kEnumerationLimit) throw std::out_of_range("group " + group.name() + " too large to enumerate");
    GroupSetBuilder b(group);
    for (std::uint64_t i = 0; i < group.order(); ++i) b.insert(ElementCode{i});
    return std::move(b).build();
}

GroupSet GroupSet::inverse() const {
    GroupSetBuilder b(group_);
    for (auto c : sorted_) b.insert(group_.inverse(c));
    return std::move(b).build();
}

bool GroupSet::is_subset_of(const GroupSet& other) const {
    if (!(group_ == other.group_)) return false;
    for (auto c : sorted_)
        if (!other.contains(c)) return false;
    return true;
}

GroupSetBuilder::GroupSetBuilder(Group group) : group_(group), store_(group.order()) {}

GroupSet GroupSetBuilder::build() && { return GroupSet(std::move(group_), std::move(store_)); }

namespace {

std::vector<HElement> decode_all_heisenberg(const GroupSet& s) {
    std::vector<HElement> out;
    out.reserve(s.size());
    for (auto c : s.codes()) out.push_back(s.group().decode_heisenberg(c));
    return out;
}

}  // namespace

GroupSet product_set(const GroupSet& a, const GroupSet& b) {
    a.group().require_same(b.group());
    const Group& g = a.group();
    GroupSetBuilder out(g);
    if (g.kind() == GroupKind::heisenberg) {
        const auto ea = decode_all_heisenberg(a);
        const auto eb = decode_all_heisenberg(b);
        for (const auto& x : ea)
            for (const auto& y : eb) out.insert(g.encode(h_mul(g, x, y)));
    } else {
        for (auto x : a.codes())
            for (auto y : b.codes()) out.insert(g.mul(x, y));
    }
    return std::move(out).build();
}

GroupSet signed_product(const GroupSet& a, std::span<const int> signs) {
    if (signs.empty()) throw std::invalid_argument("signed_product needs at least one sign");
    for (int s : signs)
        if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
    if (a.empty()) return GroupSet(a.group());
    const GroupSet inv = a.inverse();
    GroupSet acc = signs[0] == 1 ? a : inv;
    for (std::size_t i = 1; i < signs.size(); ++i) acc = product_set(acc, signs[i] == 1 ? a : inv);
    return acc;
}

GroupSet commutator_set(const GroupSet& a, const GroupSet& b) {
    a.group().require_same(b.group());
    const Group& g = a.group();
    GroupSetBuilder out(g);
    if (g.kind() == GroupKind::heisenberg) {
        const auto ea = decode_all_heisenberg(a);
        const auto eb = decode_all_heisenberg(b);
        for (const auto& x : ea)
            for (const auto& y : eb) out.insert(g.encode(h_commutator(g, x, y)));
    } else {
        for (auto x : a.codes())
            for (auto y : b.codes()) out.insert(g.commutator(x, y));
    }
    return std::move(out).build();
}

std::uint64_t BrickShape::size() const {
    std::uint64_t s = z.size();
    for (const auto& f : x) s *= f.size();
    for (const auto& f : y) s *= f.size();
    return s;
}

GroupSet brick(const Group& group, const BrickShape& shape) {
    if (group.kind() != GroupKind::heisenberg) throw std::invalid_argument("bricks live in a Heisenberg group");
    const unsigned n = group.n();
    if (shape.x.size() != n || shape.y.size() != n)
        throw std::invalid_argument("brick has " + std::to_string(shape.x.size()) + " x-factors for n = " +
                                    std::to_string(n));
    const Residue p = group.p();
    auto check_factor = [p](const std::vector<Residue>& f) {
        for (Residue v : f)
            if (v >= p) throw std::out_of_range("brick coordinate " + std::to_string(v) + " outside F_p");
    };
    for (const auto& f : shape.x) check_factor(f);
    for (const auto& f : shape.y) check_factor(f);
    check_factor(shape.z);

    GroupSetBuilder out(group);
    if (shape.size() == 0) return std::move(out).build();
    // odometer over the 2n coordinate factors
    std::vector<const std::vector<Residue>*> factors;
    for (const auto& f : shape.x) factors.push_back(&f);
    for (const auto& f : shape.y) factors.push_back(&f);
    std::vector<std::size_t> idx(factors.size(), 0);
    HElement e = h_identity(n);
    while (true) {
        for (unsigned i = 0; i < n; ++i) {
            e.x[i] = (*factors[i])[idx[i]];
            e.y[i] = (*factors[n + i])[idx[n + i]];
        }
        for (Residue z : shape.z) {
            e.z = z;
            out.insert(group.encode(e));
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == factors[k]->size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return std::move(out).build();
}

GroupSet center_line(const Group& group) {
    GroupSetBuilder out(group);
    switch (group.kind()) {
        case GroupKind::heisenberg:
            for (Residue z = 0; z < group.p(); ++z) out.insert(ElementCode{z});
            break;
        case GroupKind::affine:
            for (Residue b = 0; b < group.p(); ++b) out.insert(group.encode(AffElement{1, b}));
            break;
        case GroupKind::cyclic:
            throw std::invalid_argument("center line is defined for Heisenberg and affine groups");
    }
    return std::move(out).build();
}

CenterCoverage center_coverage(const GroupSet& s) {
    const Group& g = s.group();
    CenterCoverage cov;
    switch (g.kind()) {
        case GroupKind::heisenberg:
            for (Residue z = 0; z < g.p(); ++z) cov.count += s.contains(ElementCode{z});
            break;
        case GroupKind::affine:
            for (Residue b = 0; b < g.p(); ++b) cov.count += s.contains(g.encode(AffElement{1, b}));
            break;
        case GroupKind::cyclic:
            throw std::invalid_argument("center coverage is defined for Heisenberg and affine groups");
    }
    cov.full = cov.count == g.p();
    return cov;
}

std::uint64_t coset_coverage(const GroupSet& s) {
    const Group& g = s.group();
    if (g.kind() != GroupKind::heisenberg) throw std::invalid_argument("coset coverage needs a Heisenberg group");
    const std::uint64_t p = g.p();
    // codes of one fiber are consecutive: fiber * p + z
    std::uint64_t full = 0, run = 0, current = ~std::uint64_t{0};
    for (auto c : s.codes()) {
        const std::uint64_t fiber = c.index / p;
        if (fiber != current) {
            current = fiber;
            run = 0;
        }
        if (++run == p) ++full;
    }
    return full;
}

std::uint64_t ceil_prime_power(std::uint32_t p, const Rational& alpha) {
    using boost::multiprecision::cpp_int;
    if (alpha.num() < 0) throw std::invalid_argument("negative exponent");
    const auto a = static_cast<unsigned>(alpha.num());
    const auto b = static_cast<unsigned>(alpha.den());
    const cpp_int target = boost::multiprecision::pow(cpp_int(p), a);
    auto covers = [&](std::uint64_t m) { return boost::multiprecision::pow(cpp_int(m), b) >= target; };
    auto m = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(p), alpha.to_double())));
    if (m == 0) m = 1;
    while (m > 1 && covers(m - 1)) --m;
    while (!covers(m)) ++m;
    return m;
}

GroupSet freiman_base_set(std::uint32_t p, const Rational& alpha) {
    if (!(alpha > Rational(0)) || !(alpha < Rational(1)))
        throw std::invalid_argument("alpha must lie in (0, 1), got " + alpha.to_string());
    const Group g = Group::heisenberg(p, 1);
    const std::uint64_t m = ceil_prime_power(p, alpha);
    if (2 * m >= p)
        throw std::invalid_argument("x-interval {0.." + std::to_string(m) + "} wraps around mod " + std::to_string(p) +
                                    " in A*A");
    GroupSetBuilder out(g);
    HElement e = h_identity(1);
    for (Residue x = 0; x <= m; ++x)
        for (Residue y = 0; y < p; ++y)
            for (Residue z = 0; z < p; ++z) {
                e.x[0] = x;
                e.y[0] = y;
                e.z = z;
                out.insert(g.encode(e));
            }
    return std::move(out).build();
}

std::uint32_t witness_progression_length(std::uint32_t p, unsigned k) {
    if (k < 1) throw std::invalid_argument("product length must be positive");
    // signed k-fold sums of {0..L-1} fill an interval of k(L-1)+1 < p residues
    return (p - 2) / k + 1;
}

GroupSet extremal_witness(WitnessKind kind, std::uint32_t p, unsigned n, unsigned k) {
    if (kind == WitnessKind::affine_diagonal) {
        const Group g = Group::affine(p);
        GroupSetBuilder out(g);
        for (Residue a = 1; a < p; ++a) out.insert(g.encode(AffElement{a, 0}));
        return std::move(out).build();
    }
    const Group g = Group::heisenberg(p, n);
    const std::uint32_t len = witness_progression_length(p, k);
    BrickShape shape;
    std::vector<Residue> all(p);
    for (Residue v = 0; v < p; ++v) all[v] = v;
    shape.x.assign(n, std::vector<Residue>{0});
    shape.y.assign(n, all);
    for (Residue z = 0; z < len; ++z) shape.z.push_back(z);
    return brick(g, shape);
}

bool triple_commutator_trivial(const GroupSet& x) {
    const double cube = std::pow(static_cast<double>(x.size()), 3.0);
    if (cube > 1e8) throw std::out_of_range("set too large for the triple commutator check");
    const Group& g = x.group();
    const GroupSet inner = commutator_set(x, x);
    for (auto c : inner.codes())
        for (auto e : x.codes())
            if (g.commutator(c, e) != g.identity()) return false;
    return true;
}

GroupSet centralizer(const Group& group, ElementCode g) {
    group.check(g);
    if (group.order() > kEnumerationLimit) throw std::out_of_range("group " + group.name() + " too large to enumerate");
    GroupSetBuilder out(group);
    for (std::uint64_t h = 0; h < group.order(); ++h)
        if (group.mul(g, ElementCode{h}) == group.mul(ElementCode{h}, g)) out.insert(ElementCode{h});
    return std::move(out).build();
}

std::string group_tag(const Group& g) {
    switch (g.kind()) {
        case GroupKind::heisenberg: return "H";
        case GroupKind::affine: return "Aff";
        case GroupKind::cyclic: return "Z";
    }
    return "?";
}

Group group_from_descriptor(const std::string& tag, std::uint32_t p, unsigned n) {
    if (tag == "H") return Group::heisenberg(p, n == 0 ? 1 : n);
    if (tag == "Aff") return Group::affine(p);
    if (tag == "Z") return Group::cyclic(p);
    throw std::invalid_argument("unknown group tag '" + tag + "' (expected H, Aff or Z)");
}

std::string set_to_json(const GroupSet& s) {
    nlohmann::ordered_json j;
    j["group"] = group_tag(s.group());
    j["p"] = s.group().p();
    j["n"] = s.group().kind() == GroupKind::heisenberg ? s.group().n() : 0;
    auto& codes = j["codes"] = nlohmann::ordered_json::array();
    for (auto c : s.codes()) codes.push_back(c.index);
    return j.dump();
}

GroupSet set_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        const Group g = group_from_descriptor(j.at("group").get<std::string>(), j.at("p").get<std::uint32_t>(),
                                              j.value("n", 1u));
        std::vector<ElementCode> codes;
        for (const auto& c : j.at("codes")) codes.push_back(ElementCode{c.get<std::uint64_t>()});
        return GroupSet::from_codes(g, codes);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed set literal: ") + e.what());
    }
}

}  // namespace heislab
