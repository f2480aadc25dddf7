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

#include "heislab/cyclo.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace heislab {

namespace checked {

std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
    return r;
}

std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
    return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
    return r;
}

}  // namespace checked

namespace {

using Poly = std::vector<std::int64_t>;

// Exact quotient of num by a monic divisor.
Poly divide_monic(Poly num, const Poly& den) {
    const std::size_t dd = den.size() - 1;
    if (num.size() < den.size()) return {0};
    Poly quot(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
        const std::int64_t c = num[i];
        quot[i - dd] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] = checked::sub(num[i - dd + j], checked::mul(c, den[j]));
    }
    for (std::size_t j = 0; j < dd; ++j)
        if (num[j] != 0) throw std::logic_error("cyclotomic polynomial division left a remainder");
    return quot;
}

Poly multiply(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = checked::add(out[i + j], checked::mul(a[i], b[j]));
    return out;
}

class BasisRegistry {
public:
    const CyclotomicBasis& get(std::uint32_t m) {
        std::lock_guard lock(mutex_);
        return get_locked(m);
    }

private:
    const CyclotomicBasis& get_locked(std::uint32_t m) {
        if (auto it = table_.find(m); it != table_.end()) return *it->second;

        // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
        Poly denom{1};
        for (std::uint32_t d = 1; d < m; ++d)
            if (m % d == 0) denom = multiply(denom, get_locked(d).minimal_polynomial);
        Poly xm(m + 1, 0);
        xm[0] = -1;
        xm[m] = 1;
        Poly phi = divide_monic(std::move(xm), denom);

        auto basis = std::make_unique<CyclotomicBasis>();
        basis->order = m;
        basis->degree = static_cast<std::uint32_t>(phi.size() - 1);
        basis->minimal_polynomial = phi;
        const std::uint32_t deg = basis->degree;
        basis->powers.reserve(m);
        Poly cur(deg, 0);
        if (deg > 0) cur[0] = 1;
        for (std::uint32_t k = 0; k < m; ++k) {
            basis->powers.push_back(cur);
            // cur <- cur * zeta, eliminating zeta^deg via Phi_m
            const std::int64_t top = cur[deg - 1];
            for (std::uint32_t i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
            cur[0] = 0;
            if (top != 0)
                for (std::uint32_t i = 0; i < deg; ++i) cur[i] = checked::sub(cur[i], checked::mul(top, phi[i]));
        }
        auto [it, _] = table_.emplace(m, std::move(basis));
        return *it->second;
    }

    std::mutex mutex_;
    std::map<std::uint32_t, std::unique_ptr<CyclotomicBasis>> table_;
};

BasisRegistry& registry() {
    static BasisRegistry r;
    return r;
}

std::uint32_t reduce_exponent(std::int64_t k, std::uint32_t m) {
    std::int64_t r = k % static_cast<std::int64_t>(m);
    return static_cast<std::uint32_t>(r < 0 ? r + m : r);
}

}  // namespace

const CyclotomicBasis& cyclotomic_basis(std::uint32_t m) {
    if (m < 1 || m > 4096) throw std::invalid_argument("cyclotomic order out of range: " + std::to_string(m));
    return registry().get(m);
}

CycloElement::CycloElement(std::uint32_t order)
    : basis_(&cyclotomic_basis(order)), coeffs_(basis_->degree, 0) {}

CycloElement CycloElement::integer(std::uint32_t order, std::int64_t value) {
    CycloElement e(order);
    e.coeffs_[0] = value;
    return e;
}

CycloElement CycloElement::zeta_power(std::uint32_t order, std::int64_t k) {
    const auto& b = cyclotomic_basis(order);
    return CycloElement(&b, b.powers[reduce_exponent(k, order)]);
}

CycloElement CycloElement::from_powers(std::uint32_t order, std::span<const std::int64_t> coeffs) {
    CycloElement e(order);
    const auto& b = *e.basis_;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        const auto& pw = b.powers[k % order];
        for (std::uint32_t i = 0; i < b.degree; ++i)
            if (pw[i] != 0) e.coeffs_[i] = checked::add(e.coeffs_[i], checked::mul(coeffs[k], pw[i]));
    }
    return e;
}

void CycloElement::require_same_order(const CycloElement& other) const {
    if (basis_->order != other.basis_->order)
        throw std::invalid_argument("cyclotomic elements of different orders: " + std::to_string(basis_->order) +
                                    " vs " + std::to_string(other.basis_->order));
}

bool CycloElement::is_zero() const noexcept {
    for (auto c : coeffs_)
        if (c != 0) return false;
    return true;
}

std::optional<std::int64_t> CycloElement::to_integer() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return std::nullopt;
    return coeffs_[0];
}

CycloElement& CycloElement::operator+=(const CycloElement& rhs) {
    require_same_order(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = checked::add(coeffs_[i], rhs.coeffs_[i]);
    return *this;
}

CycloElement& CycloElement::operator-=(const CycloElement& rhs) {
    require_same_order(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = checked::sub(coeffs_[i], rhs.coeffs_[i]);
    return *this;
}

CycloElement& CycloElement::operator*=(std::int64_t scalar) {
    for (auto& c : coeffs_) c = checked::mul(c, scalar);
    return *this;
}

CycloElement& CycloElement::operator*=(const CycloElement& rhs) { return *this = *this * rhs; }

CycloElement operator*(const CycloElement& a, const CycloElement& b) {
    a.require_same_order(b);
    const auto& basis = *a.basis_;
    const std::uint32_t deg = basis.degree;
    std::vector<std::int64_t> full(2 * deg - 1, 0);
    for (std::uint32_t i = 0; i < deg; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::uint32_t j = 0; j < deg; ++j)
            if (b.coeffs_[j] != 0) full[i + j] = checked::add(full[i + j], checked::mul(a.coeffs_[i], b.coeffs_[j]));
    }
    std::vector<std::int64_t> out(full.begin(), full.begin() + deg);
    for (std::uint32_t k = deg; k < full.size(); ++k) {
        if (full[k] == 0) continue;
        const auto& pw = basis.powers[k % basis.order];
        for (std::uint32_t i = 0; i < deg; ++i)
            if (pw[i] != 0) out[i] = checked::add(out[i], checked::mul(full[k], pw[i]));
    }
    return CycloElement(a.basis_, std::move(out));
}

CycloElement CycloElement::operator-() const {
    CycloElement r = *this;
    for (auto& c : r.coeffs_) c = checked::sub(0, c);
    return r;
}

CycloElement CycloElement::times_zeta_power(std::int64_t k) const {
    const std::uint32_t m = basis_->order;
    std::vector<std::int64_t> lifted(m, 0);
    const std::uint32_t shift = reduce_exponent(k, m);
    for (std::uint32_t i = 0; i < coeffs_.size(); ++i) lifted[(i + shift) % m] = coeffs_[i];
    return from_powers(m, lifted);
}

CycloElement CycloElement::galois(std::int64_t c) const {
    const std::uint32_t m = basis_->order;
    const std::uint32_t cr = reduce_exponent(c, m);
    if (std::gcd(cr, m) != 1) throw std::invalid_argument("Galois exponent must be a unit mod the order");
    std::vector<std::int64_t> lifted(m, 0);
    for (std::uint32_t i = 0; i < coeffs_.size(); ++i) {
        auto& slot = lifted[static_cast<std::uint64_t>(i) * cr % m];
        slot = checked::add(slot, coeffs_[i]);
    }
    return from_powers(m, lifted);
}

CycloElement CycloElement::conjugate() const { return galois(static_cast<std::int64_t>(basis_->order) - 1); }

std::complex<double> CycloElement::to_complex() const {
    const double step = 2.0 * std::numbers::pi / basis_->order;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0) acc += static_cast<double>(coeffs_[k]) * std::polar(1.0, step * static_cast<double>(k));
    return acc;
}

CycloElement cyclo_mul(const CycloElement& a, const CycloElement& b) { return a * b; }

CycloElement cyclo_conj_normsq(const CycloElement& a) { return a * a.conjugate(); }

std::complex<double> cyclo_to_complex(const CycloElement& a) { return a.to_complex(); }

}  // namespace heislab
