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

#pragma once

/**
 * @file cyclo.hpp
 * @brief Exact arithmetic in the cyclotomic ring Z[zeta_m].
 *
 * Elements are stored in the canonical integral basis 1, zeta, ..., zeta^{phi(m)-1};
 * powers zeta^k with k >= phi(m) are eliminated with the minimal polynomial Phi_m.
 * For a prime m = p the basis has p-1 entries and zeta^{p-1} = -(1 + ... + zeta^{p-2}).
 *
 * Coefficients are 64-bit; every operation is overflow-checked and throws
 * std::overflow_error instead of wrapping.
 */

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace heislab {

/// Reduction data for one conductor m; entries live for the whole process.
struct CyclotomicBasis {
    std::uint32_t order = 0;
    std::uint32_t degree = 0;                       // phi(m)
    std::vector<std::int64_t> minimal_polynomial;   // Phi_m, low to high, monic
    std::vector<std::vector<std::int64_t>> powers;  // canonical coords of zeta^k, k in [0, m)
};

/// Shared, lazily built reduction table for Z[zeta_m]; m in [1, 4096].
const CyclotomicBasis& cyclotomic_basis(std::uint32_t m);

class CycloElement {
public:
    /// Zero of Z[zeta_m].
    explicit CycloElement(std::uint32_t order);

    static CycloElement integer(std::uint32_t order, std::int64_t value);
    static CycloElement zeta_power(std::uint32_t order, std::int64_t k);
    /// Interprets coeffs as sum c_k zeta^k (any length) and reduces it.
    static CycloElement from_powers(std::uint32_t order, std::span<const std::int64_t> coeffs);

    std::uint32_t order() const noexcept { return basis_->order; }
    std::uint32_t degree() const noexcept { return basis_->degree; }
    std::span<const std::int64_t> coefficients() const noexcept { return coeffs_; }

    bool is_zero() const noexcept;
    /// Value as a rational integer, if the element lies in Z.
    std::optional<std::int64_t> to_integer() const;

    CycloElement& operator+=(const CycloElement& rhs);
    CycloElement& operator-=(const CycloElement& rhs);
    CycloElement& operator*=(const CycloElement& rhs);
    CycloElement& operator*=(std::int64_t scalar);

    friend CycloElement operator+(CycloElement a, const CycloElement& b) { return a += b; }
    friend CycloElement operator-(CycloElement a, const CycloElement& b) { return a -= b; }
    friend CycloElement operator*(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator*(CycloElement a, std::int64_t s) { return a *= s; }
    CycloElement operator-() const;

    /// Multiplication by zeta^k; cheaper than a general product.
    CycloElement times_zeta_power(std::int64_t k) const;
    /// Complex conjugation zeta -> zeta^{-1}.
    CycloElement conjugate() const;
    /// Galois automorphism zeta -> zeta^c, gcd(c, m) = 1.
    CycloElement galois(std::int64_t c) const;
    /// Evaluation at zeta = exp(2 pi i / m).
    std::complex<double> to_complex() const;

    friend bool operator==(const CycloElement& a, const CycloElement& b) {
        return a.basis_->order == b.basis_->order && a.coeffs_ == b.coeffs_;
    }

private:
    CycloElement(const CyclotomicBasis* basis, std::vector<std::int64_t> coeffs)
        : basis_(basis), coeffs_(std::move(coeffs)) {}
    void require_same_order(const CycloElement& other) const;

    const CyclotomicBasis* basis_;
    std::vector<std::int64_t> coeffs_;
};

CycloElement cyclo_mul(const CycloElement& a, const CycloElement& b);
/// a * conj(a); real, and a rational integer whenever a is fixed by the Galois group.
CycloElement cyclo_conj_normsq(const CycloElement& a);
std::complex<double> cyclo_to_complex(const CycloElement& a);

namespace checked {
std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t sub(std::int64_t a, std::int64_t b);
std::int64_t mul(std::int64_t a, std::int64_t b);
}  // namespace checked

}  // namespace heislab
