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
 * @file energy.hpp
 * @brief Representation functions and energies over F_p and over finite groups.
 *
 * Everything here is computed through histograms in O(|A||B|); the
 * quadruple-loop definitions are kept in the test oracles only.
 */

#include "heislab/field.hpp"
#include "heislab/group_set.hpp"
#include "heislab/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace heislab {

/// Subset of F_p, sorted and duplicate free.
class FieldSet {
public:
    FieldSet(std::uint32_t p, std::vector<Residue> elements);
    static FieldSet full(std::uint32_t p);
    static FieldSet nonzero(std::uint32_t p);

    std::uint32_t p() const noexcept { return p_; }
    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    bool contains(Residue v) const;
    std::span<const Residue> elements() const noexcept { return elems_; }

    friend bool operator==(const FieldSet&, const FieldSet&) = default;

private:
    std::uint32_t p_;
    std::vector<Residue> elems_;
};

FieldSet intersect(const FieldSet& a, const FieldSet& b);
/// {lambda * a : a in A}
FieldSet dilate(const FieldSet& a, Residue lambda);
/// {lambda - a : a in A}
FieldSet reflect(const FieldSet& a, Residue lambda);
/// {a^{-1} : a in A, a != 0}
FieldSet reciprocals(const FieldSet& a);

/// Histograms over at most this many keys use a dense array.
inline constexpr std::uint64_t kDenseHistogramLimit = 1ull << 16;
inline constexpr std::uint64_t kDenseGroupHistogramLimit = 1ull << 22;

/// Nonnegative counts over a finite domain [0, domain_size).
class Histogram {
public:
    Histogram(std::uint64_t domain_size, std::uint64_t dense_limit = kDenseHistogramLimit);

    void add(std::uint64_t key, std::uint64_t count = 1);
    std::uint64_t count(std::uint64_t key) const;
    std::uint64_t domain_size() const noexcept { return domain_; }
    bool dense() const noexcept { return dense_; }

    std::uint64_t total() const;
    /// sum_x r(x)^2; throws std::overflow_error if it exceeds 64 bits.
    std::uint64_t sum_squares() const;
    /// sum_x r(x) s(x)
    std::uint64_t dot(const Histogram& other) const;
    /// Positive entries in increasing key order.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries() const;

private:
    std::uint64_t domain_;
    bool dense_;
    std::vector<std::uint64_t> dense_counts_;
    std::map<std::uint64_t, std::uint64_t> sparse_counts_;
};

enum class Law { add, sub, mul, div };

/// r_{A op B}; for div the pairs with b = 0 are dropped.
Histogram rep_histogram(const FieldSet& a, const FieldSet& b, Law law);

enum class GroupLaw { product, right_quotient };

/// r_{AB}(g) or r_{AB^{-1}}(g) over group codes.
Histogram group_rep_histogram(const GroupSet& a, const GroupSet& b, GroupLaw law);

enum class EnergyLaw { add, mul };

/// E^+(A,B) or E^x(A,B). Both evaluation routes are computed and must agree
/// (sum r_{A+B}^2 = sum r_{A-B}^2, and sum r_{AB}^2 = sum r_{A/B}^2 when 0 is in neither set).
std::uint64_t energy(const FieldSet& a, const FieldSet& b, EnergyLaw law);

/// Indicator weights of A on F_p.
Histogram indicator(const FieldSet& a);
/// T_k of a weight function on F_p: number of weighted 2k-tuples with equal k-fold sums.
std::uint64_t t_k(const Histogram& weights, unsigned k);

/// E(A,B) = #{a_1 b_1^{-1} = a_2 b_2^{-1}}.
std::uint64_t group_energy(const GroupSet& a, const GroupSet& b);

/// Solutions of x + x_* = x' + x'_*, y + y_* = y' + y'_*, z + z_* + x y_* = z' + z'_* + x' y'_*
/// over a brick of H_1 (= sum_g r_{AA}(g)^2), counted through the (x, y) marginals.
inline constexpr std::uint32_t kMaxBrickSystemPrime = 101;
std::uint64_t brick_system_count(const FieldSet& x, const FieldSet& y, const FieldSet& z);

/// delta_A(x,y) = sum_z A([x,y,z]) for Heisenberg sets, delta_A(x) = sum_y A((x,y)) for affine sets.
/// Keys: the (x,y) part of the code (code / p) resp. x - 1.
Histogram marginal_weight(const GroupSet& a);
/// K(A) = |A| / max marginal.
Rational brick_parameter_K(const GroupSet& a);

/// sum_w r_{X/Y}(w) r_{(X-X)/(Y-Y)}(w)
std::uint64_t sigma2_correlation(const FieldSet& x, const FieldSet& y);

enum class FiberConvention { dilate, dilate_inverse };

struct MixedEnergySums {
    std::uint64_t sum_add_fibers = 0;  // sum_lambda E^x(A cap (lambda - A))
    std::uint64_t sum_mul_fibers = 0;  // sum_{lambda != 0} E^+(A cap lambda A)  (or A cap lambda A^{-1})
};

MixedEnergySums mixed_energy_sums(const FieldSet& a, FiberConvention convention = FiberConvention::dilate);

}  // namespace heislab
