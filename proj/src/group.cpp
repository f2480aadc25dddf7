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

#include "heislab/group.hpp"

#include <stdexcept>
#include <vector>

namespace heislab {

namespace {

std::uint64_t checked_pow(std::uint64_t base, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > (std::uint64_t{1} << 62) / base) throw std::invalid_argument("group order exceeds 2^62");
        r *= base;
    }
    return r;
}

}  // namespace

Group::Group(GroupKind kind, std::uint32_t p, unsigned n)
    : kind_(kind), n_(n), order_(0), x_stride_(0), field_(std::make_shared<const PrimeField>(p)) {
    switch (kind) {
        case GroupKind::heisenberg:
            if (n < 1 || n > kMaxHeisenbergDim)
                throw std::invalid_argument("Heisenberg dimension must be in [1, " +
                                            std::to_string(kMaxHeisenbergDim) + "]");
            order_ = checked_pow(p, 2 * n + 1);
            x_stride_ = checked_pow(p, n + 1);
            break;
        case GroupKind::affine:
            order_ = static_cast<std::uint64_t>(p) * (p - 1);
            break;
        case GroupKind::cyclic:
            order_ = p;
            break;
    }
}

Group Group::heisenberg(std::uint32_t p, unsigned n) { return Group(GroupKind::heisenberg, p, n); }
Group Group::affine(std::uint32_t p) { return Group(GroupKind::affine, p, 0); }
Group Group::cyclic(std::uint32_t p) { return Group(GroupKind::cyclic, p, 0); }

std::string Group::name() const {
    switch (kind_) {
        case GroupKind::heisenberg: return "H" + std::to_string(n_) + "(F" + std::to_string(p()) + ")";
        case GroupKind::affine: return "Aff(F" + std::to_string(p()) + ")";
        case GroupKind::cyclic: return "Z/" + std::to_string(p());
    }
    return "?";
}

void Group::require_same(const Group& other) const {
    if (!same_group(other)) throw std::invalid_argument("group mismatch: " + name() + " vs " + other.name());
}

void Group::check(ElementCode a) const {
    if (a.index >= order_)
        throw std::out_of_range("element code " + std::to_string(a.index) + " outside " + name());
}

void Group::check(const HElement& g) const {
    if (kind_ != GroupKind::heisenberg || g.n != n_)
        throw std::invalid_argument("element does not belong to " + name());
    const Residue p = this->p();
    for (unsigned i = 0; i < kMaxHeisenbergDim; ++i) {
        const bool active = i < n_;
        if ((active && (g.x[i] >= p || g.y[i] >= p)) || (!active && (g.x[i] != 0 || g.y[i] != 0)))
            throw std::invalid_argument("Heisenberg coordinate out of range");
    }
    if (g.z >= p) throw std::invalid_argument("Heisenberg coordinate out of range");
}

void Group::check(const AffElement& g) const {
    if (kind_ != GroupKind::affine) throw std::invalid_argument("element does not belong to " + name());
    if (g.a == 0 || g.a >= p() || g.b >= p()) throw std::invalid_argument("affine coordinate out of range");
}

// (1,0) in Aff and [0,0,0] in H_n both encode to 0.
ElementCode Group::identity() const noexcept { return ElementCode{0}; }

HElement Group::decode_heisenberg(ElementCode c) const {
    HElement g;
    g.n = n_;
    const std::uint64_t p = this->p();
    std::uint64_t v = c.index;
    g.z = static_cast<Residue>(v % p);
    v /= p;
    for (unsigned i = 0; i < n_; ++i) {
        g.y[i] = static_cast<Residue>(v % p);
        v /= p;
    }
    for (unsigned i = 0; i < n_; ++i) {
        g.x[i] = static_cast<Residue>(v % p);
        v /= p;
    }
    return g;
}

ElementCode Group::encode(const HElement& g) const {
    const std::uint64_t p = this->p();
    std::uint64_t xs = 0, ys = 0;
    for (unsigned i = n_; i-- > 0;) {
        xs = xs * p + g.x[i];
        ys = ys * p + g.y[i];
    }
    return ElementCode{g.z + p * ys + x_stride_ * xs};
}

AffElement Group::decode_affine(ElementCode c) const {
    const std::uint64_t p = this->p();
    return AffElement{static_cast<Residue>(c.index / p + 1), static_cast<Residue>(c.index % p)};
}

ElementCode Group::encode(const AffElement& g) const {
    return ElementCode{g.b + static_cast<std::uint64_t>(p()) * (g.a - 1)};
}

ElementCode Group::mul(ElementCode a, ElementCode b) const {
    switch (kind_) {
        case GroupKind::heisenberg:
            return encode(h_mul(*this, decode_heisenberg(a), decode_heisenberg(b)));
        case GroupKind::affine:
            return encode(aff_mul(*this, decode_affine(a), decode_affine(b)));
        case GroupKind::cyclic:
            return ElementCode{field_->add(static_cast<Residue>(a.index), static_cast<Residue>(b.index))};
    }
    return {};
}

ElementCode Group::inverse(ElementCode a) const {
    switch (kind_) {
        case GroupKind::heisenberg: return encode(h_inv(*this, decode_heisenberg(a)));
        case GroupKind::affine: return encode(aff_inv(*this, decode_affine(a)));
        case GroupKind::cyclic: return ElementCode{field_->neg(static_cast<Residue>(a.index))};
    }
    return {};
}

ElementCode Group::commutator(ElementCode a, ElementCode b) const {
    switch (kind_) {
        case GroupKind::heisenberg:
            return encode(h_commutator(*this, decode_heisenberg(a), decode_heisenberg(b)));
        case GroupKind::affine:
            return encode(aff_commutator(*this, decode_affine(a), decode_affine(b)));
        case GroupKind::cyclic: return identity();
    }
    return {};
}

HElement h_identity(unsigned n) {
    HElement e;
    e.n = n;
    return e;
}

// [x,y,z][x',y',z'] = [x+x', y+y', z+z'+<x,y'>]
HElement h_mul(const Group& g, const HElement& a, const HElement& b) {
    const PrimeField& f = g.field();
    if (a.n != b.n || a.n != g.n()) throw std::invalid_argument("Heisenberg dimension mismatch");
    HElement r;
    r.n = a.n;
    std::uint64_t dot = 0;
    for (unsigned i = 0; i < a.n; ++i) {
        r.x[i] = f.add(a.x[i], b.x[i]);
        r.y[i] = f.add(a.y[i], b.y[i]);
        dot += static_cast<std::uint64_t>(a.x[i]) * b.y[i];
    }
    r.z = static_cast<Residue>((static_cast<std::uint64_t>(a.z) + b.z + dot) % f.p());
    return r;
}

// [x,y,z]^{-1} = [-x, -y, -z + <x,y>]
HElement h_inv(const Group& g, const HElement& a) {
    const PrimeField& f = g.field();
    if (a.n != g.n()) throw std::invalid_argument("Heisenberg dimension mismatch");
    HElement r;
    r.n = a.n;
    std::uint64_t dot = 0;
    for (unsigned i = 0; i < a.n; ++i) {
        r.x[i] = f.neg(a.x[i]);
        r.y[i] = f.neg(a.y[i]);
        dot += static_cast<std::uint64_t>(a.x[i]) * a.y[i];
    }
    r.z = static_cast<Residue>((dot + f.neg(a.z)) % f.p());
    return r;
}

// [a; b] = [0, 0, <x,y'> - <y,x'>]
HElement h_commutator(const Group& g, const HElement& a, const HElement& b) {
    const PrimeField& f = g.field();
    if (a.n != b.n || a.n != g.n()) throw std::invalid_argument("Heisenberg dimension mismatch");
    HElement r = h_identity(a.n);
    std::uint64_t plus = 0, minus = 0;
    for (unsigned i = 0; i < a.n; ++i) {
        plus += static_cast<std::uint64_t>(a.x[i]) * b.y[i];
        minus += static_cast<std::uint64_t>(a.y[i]) * b.x[i];
    }
    r.z = f.sub(static_cast<Residue>(plus % f.p()), static_cast<Residue>(minus % f.p()));
    return r;
}

// (a,b)(c,d) = (ac, ad + b)
AffElement aff_mul(const Group& g, const AffElement& a, const AffElement& b) {
    const PrimeField& f = g.field();
    return AffElement{f.mul(a.a, b.a), f.add(f.mul(a.a, b.b), a.b)};
}

// (a,b)^{-1} = (a^{-1}, -a^{-1} b)
AffElement aff_inv(const Group& g, const AffElement& a) {
    const PrimeField& f = g.field();
    const Residue ai = f.inv(a.a);
    return AffElement{ai, f.neg(f.mul(ai, a.b))};
}

// [(x,y); (x',y')] = (1, y(1-x') - y'(1-x))
AffElement aff_commutator(const Group& g, const AffElement& a, const AffElement& b) {
    const PrimeField& f = g.field();
    const Residue t1 = f.mul(a.b, f.sub(1, b.a));
    const Residue t2 = f.mul(b.b, f.sub(1, a.a));
    return AffElement{1, f.sub(t1, t2)};
}

std::uint64_t conjugacy_class_count(const Group& g) {
    if (g.order() > kConjugacyLimit)
        throw std::out_of_range("group " + g.name() + " too large for conjugacy enumeration");
    const std::uint64_t order = g.order();
    std::vector<bool> seen(order, false);
    std::vector<ElementCode> inverses(order);
    for (std::uint64_t h = 0; h < order; ++h) inverses[h] = g.inverse(ElementCode{h});
    std::uint64_t classes = 0;
    for (std::uint64_t x = 0; x < order; ++x) {
        if (seen[x]) continue;
        ++classes;
        for (std::uint64_t h = 0; h < order; ++h) {
            const ElementCode c = g.mul(g.mul(ElementCode{h}, ElementCode{x}), inverses[h]);
            seen[c.index] = true;
        }
    }
    return classes;
}

}  // namespace heislab
