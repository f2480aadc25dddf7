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

#include "heislab/cyclo.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace heislab {

namespace {

std::uint64_t add_u64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("count exceeds 64 bits");
    return r;
}

std::uint64_t mul_u64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("count exceeds 64 bits");
    return r;
}

void require_same_field(const FieldSet& a, const FieldSet& b) {
    if (a.p() != b.p())
        throw std::invalid_argument("field mismatch: F_" + std::to_string(a.p()) + " vs F_" + std::to_string(b.p()));
}

}  // namespace

FieldSet::FieldSet(std::uint32_t p, std::vector<Residue> elements) : p_(p), elems_(std::move(elements)) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("modulus must be an odd prime");
    for (Residue v : elems_)
        if (v >= p) throw std::out_of_range("element " + std::to_string(v) + " outside F_" + std::to_string(p));
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

FieldSet FieldSet::full(std::uint32_t p) {
    std::vector<Residue> all(p);
    for (Residue v = 0; v < p; ++v) all[v] = v;
    return FieldSet(p, std::move(all));
}

FieldSet FieldSet::nonzero(std::uint32_t p) {
    std::vector<Residue> all;
    for (Residue v = 1; v < p; ++v) all.push_back(v);
    return FieldSet(p, std::move(all));
}

bool FieldSet::contains(Residue v) const { return std::binary_search(elems_.begin(), elems_.end(), v); }

FieldSet intersect(const FieldSet& a, const FieldSet& b) {
    require_same_field(a, b);
    std::vector<Residue> out;
    std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                          std::back_inserter(out));
    return FieldSet(a.p(), std::move(out));
}

FieldSet dilate(const FieldSet& a, Residue lambda) {
    const PrimeField f(a.p());
    std::vector<Residue> out;
    for (Residue v : a.elements()) out.push_back(f.mul(lambda % a.p(), v));
    return FieldSet(a.p(), std::move(out));
}

FieldSet reflect(const FieldSet& a, Residue lambda) {
    const PrimeField f(a.p());
    std::vector<Residue> out;
    for (Residue v : a.elements()) out.push_back(f.sub(lambda % a.p(), v));
    return FieldSet(a.p(), std::move(out));
}

FieldSet reciprocals(const FieldSet& a) {
    const PrimeField f(a.p());
    std::vector<Residue> out;
    for (Residue v : a.elements())
        if (v != 0) out.push_back(f.inv(v));
    return FieldSet(a.p(), std::move(out));
}

Histogram::Histogram(std::uint64_t domain_size, std::uint64_t dense_limit)
    : domain_(domain_size), dense_(domain_size <= dense_limit) {
    if (dense_) dense_counts_.assign(domain_size, 0);
}

void Histogram::add(std::uint64_t key, std::uint64_t count) {
    if (key >= domain_) throw std::out_of_range("histogram key outside domain");
    if (count == 0) return;
    if (dense_)
        dense_counts_[key] = add_u64(dense_counts_[key], count);
    else
        sparse_counts_[key] = add_u64(sparse_counts_[key], count);
}

std::uint64_t Histogram::count(std::uint64_t key) const {
    if (key >= domain_) return 0;
    if (dense_) return dense_counts_[key];
    auto it = sparse_counts_.find(key);
    return it == sparse_counts_.end() ? 0 : it->second;
}

std::uint64_t Histogram::total() const {
    std::uint64_t t = 0;
    for (const auto& [k, v] : entries()) t = add_u64(t, v);
    return t;
}

std::uint64_t Histogram::sum_squares() const {
    std::uint64_t t = 0;
    if (dense_) {
        for (auto v : dense_counts_)
            if (v) t = add_u64(t, mul_u64(v, v));
    } else {
        for (const auto& [k, v] : sparse_counts_) t = add_u64(t, mul_u64(v, v));
    }
    return t;
}

std::uint64_t Histogram::dot(const Histogram& other) const {
    if (other.domain_ != domain_) throw std::invalid_argument("histogram domain mismatch");
    std::uint64_t t = 0;
    for (const auto& [k, v] : entries())
        if (auto w = other.count(k)) t = add_u64(t, mul_u64(v, w));
    return t;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> Histogram::entries() const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    if (dense_) {
        for (std::uint64_t k = 0; k < dense_counts_.size(); ++k)
            if (dense_counts_[k]) out.emplace_back(k, dense_counts_[k]);
    } else {
        out.assign(sparse_counts_.begin(), sparse_counts_.end());
    }
    return out;
}

Histogram rep_histogram(const FieldSet& a, const FieldSet& b, Law law) {
    require_same_field(a, b);
    const PrimeField f(a.p());
    Histogram h(a.p());
    for (Residue x : a.elements())
        for (Residue y : b.elements()) {
            switch (law) {
                case Law::add: h.add(f.add(x, y)); break;
                case Law::sub: h.add(f.sub(x, y)); break;
                case Law::mul: h.add(f.mul(x, y)); break;
                case Law::div:
                    if (y != 0) h.add(f.div(x, y));
                    break;
            }
        }
    return h;
}

Histogram group_rep_histogram(const GroupSet& a, const GroupSet& b, GroupLaw law) {
    a.group().require_same(b.group());
    const Group& g = a.group();
    Histogram h(g.order(), kDenseGroupHistogramLimit);
    const GroupSet rhs = law == GroupLaw::product ? b : b.inverse();
    if (g.kind() == GroupKind::heisenberg) {
        std::vector<HElement> eb;
        for (auto c : rhs.codes()) eb.push_back(g.decode_heisenberg(c));
        for (auto ca : a.codes()) {
            const HElement x = g.decode_heisenberg(ca);
            for (const auto& y : eb) h.add(g.encode(h_mul(g, x, y)).index);
        }
    } else {
        for (auto x : a.codes())
            for (auto y : rhs.codes()) h.add(g.mul(x, y).index);
    }
    return h;
}

std::uint64_t energy(const FieldSet& a, const FieldSet& b, EnergyLaw law) {
    require_same_field(a, b);
    if (law == EnergyLaw::add) {
        const std::uint64_t via_sum = rep_histogram(a, b, Law::add).sum_squares();
        const std::uint64_t via_diff = rep_histogram(a, b, Law::sub).sum_squares();
        if (via_sum != via_diff) throw std::logic_error("additive energy routes disagree");
        return via_sum;
    }
    const std::uint64_t via_product = rep_histogram(a, b, Law::mul).sum_squares();
    if (!a.contains(0) && !b.contains(0)) {
        const std::uint64_t via_quotient = rep_histogram(a, b, Law::div).sum_squares();
        if (via_product != via_quotient) throw std::logic_error("multiplicative energy routes disagree");
    }
    return via_product;
}

Histogram indicator(const FieldSet& a) {
    Histogram h(a.p());
    for (Residue v : a.elements()) h.add(v);
    return h;
}

std::uint64_t t_k(const Histogram& weights, unsigned k) {
    if (k < 2) throw std::invalid_argument("T_k needs k >= 2");
    const std::uint64_t p = weights.domain_size();
    if (p > kMaxFieldPrime) throw std::invalid_argument("weight domain too large");
    const auto support = weights.entries();
    if (support.empty()) return 0;
    std::vector<std::uint64_t> conv(p, 0);
    for (const auto& [key, w] : support) conv[key] = w;
    for (unsigned step = 1; step < k; ++step) {
        std::vector<std::uint64_t> next(p, 0);
        for (std::uint64_t s = 0; s < p; ++s) {
            if (conv[s] == 0) continue;
            for (const auto& [key, w] : support) {
                auto& slot = next[(s + key) % p];
                slot = add_u64(slot, mul_u64(conv[s], w));
            }
        }
        conv = std::move(next);
    }
    std::uint64_t total = 0;
    for (auto v : conv)
        if (v) total = add_u64(total, mul_u64(v, v));
    return total;
}

std::uint64_t group_energy(const GroupSet& a, const GroupSet& b) {
    return group_rep_histogram(a, b, GroupLaw::right_quotient).sum_squares();
}

std::uint64_t brick_system_count(const FieldSet& x, const FieldSet& y, const FieldSet& z) {
    require_same_field(x, y);
    require_same_field(x, z);
    const std::uint32_t p = x.p();
    if (p > kMaxBrickSystemPrime) throw std::invalid_argument("brick system count is limited to p <= 101");
    const PrimeField f(p);
    const std::size_t pp = static_cast<std::size_t>(p);
    // h[(s, t, w)] = #{x + x_* = s, y + y_* = t, x y_* = w}
    std::vector<std::uint64_t> h(pp * pp * pp, 0);
    for (Residue a : x.elements())
        for (Residue a2 : x.elements()) {
            const Residue s = f.add(a, a2);
            for (Residue b : y.elements())
                for (Residue b2 : y.elements()) ++h[(s * pp + f.add(b, b2)) * pp + f.mul(a, b2)];
        }
    const Histogram zz = rep_histogram(z, z, Law::add);
    std::vector<std::uint64_t> rzz(p, 0);
    for (const auto& [key, c] : zz.entries()) rzz[key] = c;
    std::uint64_t total = 0;
    std::vector<std::uint64_t> r(p);
    for (std::size_t st = 0; st < pp * pp; ++st) {
        const std::uint64_t* row = &h[st * pp];
        bool any = false;
        for (std::size_t w = 0; w < pp && !any; ++w) any = row[w] != 0;
        if (!any) continue;
        std::fill(r.begin(), r.end(), 0);
        for (std::size_t w = 0; w < pp; ++w) {
            if (!row[w]) continue;
            for (std::size_t u = 0; u < pp; ++u)
                if (rzz[u]) {
                    auto& slot = r[(w + u) % pp];
                    slot = add_u64(slot, mul_u64(row[w], rzz[u]));
                }
        }
        for (auto v : r)
            if (v) total = add_u64(total, mul_u64(v, v));
    }
    return total;
}

Histogram marginal_weight(const GroupSet& a) {
    const Group& g = a.group();
    if (g.kind() == GroupKind::cyclic) throw std::invalid_argument("marginals are defined for H_n and Aff");
    // both encodings put the fiber coordinate (z resp. b) lowest
    Histogram h(g.order() / g.p(), kDenseGroupHistogramLimit);
    for (auto c : a.codes()) h.add(c.index / g.p());
    return h;
}

Rational brick_parameter_K(const GroupSet& a) {
    if (a.empty()) throw std::invalid_argument("K(A) is undefined for the empty set");
    std::uint64_t max_fiber = 0;
    for (const auto& [k, v] : marginal_weight(a).entries()) max_fiber = std::max(max_fiber, v);
    return Rational(static_cast<std::int64_t>(a.size()), static_cast<std::int64_t>(max_fiber));
}

std::uint64_t sigma2_correlation(const FieldSet& x, const FieldSet& y) {
    require_same_field(x, y);
    const PrimeField f(x.p());
    const auto dx = rep_histogram(x, x, Law::sub).entries();
    const auto dy = rep_histogram(y, y, Law::sub).entries();
    Histogram quotient_of_differences(x.p());
    for (const auto& [e, ce] : dy) {
        if (e == 0) continue;
        const Residue e_inv = f.inv(static_cast<Residue>(e));
        for (const auto& [d, cd] : dx) quotient_of_differences.add(f.mul(static_cast<Residue>(d), e_inv), mul_u64(cd, ce));
    }
    return rep_histogram(x, y, Law::div).dot(quotient_of_differences);
}

MixedEnergySums mixed_energy_sums(const FieldSet& a, FiberConvention convention) {
    MixedEnergySums out;
    const std::uint32_t p = a.p();
    for (Residue lambda = 0; lambda < p; ++lambda) {
        const FieldSet fiber = intersect(a, reflect(a, lambda));
        if (!fiber.empty()) out.sum_add_fibers = add_u64(out.sum_add_fibers, energy(fiber, fiber, EnergyLaw::mul));
    }
    const FieldSet base = convention == FiberConvention::dilate ? a : reciprocals(a);
    for (Residue lambda = 1; lambda < p; ++lambda) {
        const FieldSet fiber = intersect(a, dilate(base, lambda));
        if (!fiber.empty()) out.sum_mul_fibers = add_u64(out.sum_mul_fibers, energy(fiber, fiber, EnergyLaw::add));
    }
    return out;
}

}  // namespace heislab
