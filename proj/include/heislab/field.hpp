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
 * @file field.hpp
 * @brief Arithmetic in the prime field F_p and discrete logarithms.
 *
 * A PrimeField owns exponent/logarithm tables for a fixed odd prime. Residues
 * are plain 32-bit integers in [0, p); the field object is the authority on
 * which modulus they belong to.
 */

#include <cstdint>
#include <vector>

namespace heislab {

using Residue = std::uint32_t;

/// Largest modulus accepted by PrimeField (tables are O(p)).
inline constexpr std::uint32_t kMaxFieldPrime = 1u << 24;

bool is_prime(std::uint64_t n);

struct FpScalar {
    Residue value = 0;
    std::uint32_t modulus = 0;

    friend bool operator==(const FpScalar&, const FpScalar&) = default;
};

class PrimeField {
public:
    /// Throws std::invalid_argument unless p is an odd prime below kMaxFieldPrime.
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const noexcept { return p_; }

    Residue reduce(std::int64_t v) const noexcept {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }
    Residue add(Residue a, Residue b) const noexcept {
        Residue s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
    }
    /// Throws std::domain_error on zero.
    Residue inv(Residue a) const;
    Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }
    Residue pow(Residue a, std::uint64_t e) const noexcept;

    /// Smallest generator of F_p^*.
    Residue primitive_root() const noexcept { return root_; }
    /// Discrete logarithm base primitive_root(); throws std::domain_error on zero.
    std::uint32_t ind(Residue x) const;
    /// primitive_root()^k.
    Residue exp(std::uint64_t k) const noexcept { return exp_[k % (p_ - 1)]; }

private:
    std::uint32_t p_;
    Residue root_;
    std::vector<Residue> exp_;
    std::vector<std::uint32_t> log_;
};

/// Smallest generator of F_p^*; rejects non-prime or even moduli.
FpScalar primitive_root(std::uint32_t p);

/// Multiplicative order of a nonzero residue.
std::uint64_t multiplicative_order(Residue a, std::uint32_t p);

/// Index of x with respect to primitive_root(x.modulus).
std::uint32_t ind(FpScalar x);

}  // namespace heislab
