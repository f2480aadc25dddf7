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
 * @file group.hpp
 * @brief Elements and arithmetic of H_n(F_p), Aff(F_p) and the additive group Z/p.
 *
 * Every group element has a canonical code in [0, |G|):
 *   H_n:  z + p*(y_1 + p*y_2 + ...) + p^{n+1}*(x_1 + p*x_2 + ...)
 *   Aff:  b + p*(a - 1)
 *   Z/p:  the residue itself
 * Sets and histograms are addressed by these codes.
 */

#include "heislab/field.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>

namespace heislab {

inline constexpr unsigned kMaxHeisenbergDim = 4;

struct ElementCode {
    std::uint64_t index = 0;
    friend auto operator<=>(const ElementCode&, const ElementCode&) = default;
};

/// [x, y, z] in H_n; coordinates beyond n are zero.
struct HElement {
    unsigned n = 1;
    std::array<Residue, kMaxHeisenbergDim> x{};
    std::array<Residue, kMaxHeisenbergDim> y{};
    Residue z = 0;

    friend bool operator==(const HElement&, const HElement&) = default;
};

/// (a, b) in Aff(F_p): the map t -> a t + b, a != 0.
struct AffElement {
    Residue a = 1;
    Residue b = 0;

    friend bool operator==(const AffElement&, const AffElement&) = default;
};

enum class GroupKind { heisenberg, affine, cyclic };

class Group {
public:
    static Group heisenberg(std::uint32_t p, unsigned n = 1);
    static Group affine(std::uint32_t p);
    /// Additive group Z/p, used as a model group for Freiman maps between subsets of F_p.
    static Group cyclic(std::uint32_t p);

    GroupKind kind() const noexcept { return kind_; }
    std::uint32_t p() const noexcept { return field_->p(); }
    unsigned n() const noexcept { return n_; }
    std::uint64_t order() const noexcept { return order_; }
    const PrimeField& field() const noexcept { return *field_; }
    std::string name() const;

    ElementCode identity() const noexcept;
    ElementCode mul(ElementCode a, ElementCode b) const;
    ElementCode inverse(ElementCode a) const;
    /// a b a^{-1} b^{-1}
    ElementCode commutator(ElementCode a, ElementCode b) const;
    bool contains(ElementCode a) const noexcept { return a.index < order_; }
    /// Throws std::out_of_range for codes outside [0, |G|).
    void check(ElementCode a) const;

    HElement decode_heisenberg(ElementCode c) const;
    ElementCode encode(const HElement& g) const;
    AffElement decode_affine(ElementCode c) const;
    ElementCode encode(const AffElement& g) const;

    /// Throws std::invalid_argument if the element does not belong to this group.
    void check(const HElement& g) const;
    void check(const AffElement& g) const;

    bool same_group(const Group& other) const noexcept {
        return kind_ == other.kind_ && p() == other.p() && n_ == other.n_;
    }
    /// Throws std::invalid_argument on a group mismatch.
    void require_same(const Group& other) const;

    friend bool operator==(const Group& a, const Group& b) { return a.same_group(b); }

private:
    Group(GroupKind kind, std::uint32_t p, unsigned n);

    GroupKind kind_;
    unsigned n_;
    std::uint64_t order_;
    std::uint64_t x_stride_;  // p^{n+1}
    std::shared_ptr<const PrimeField> field_;
};

HElement h_identity(unsigned n);
HElement h_mul(const Group& g, const HElement& a, const HElement& b);
HElement h_inv(const Group& g, const HElement& a);
HElement h_commutator(const Group& g, const HElement& a, const HElement& b);

AffElement aff_mul(const Group& g, const AffElement& a, const AffElement& b);
AffElement aff_inv(const Group& g, const AffElement& a);
AffElement aff_commutator(const Group& g, const AffElement& a, const AffElement& b);

/// Groups up to this order may be enumerated element by element.
inline constexpr std::uint64_t kEnumerationLimit = 1ull << 22;
/// Orbit enumeration costs |G| * #classes; capped separately.
inline constexpr std::uint64_t kConjugacyLimit = 1ull << 16;

/// Exact number of conjugacy classes by orbit enumeration.
std::uint64_t conjugacy_class_count(const Group& g);

}  // namespace heislab
