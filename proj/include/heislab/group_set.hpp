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
 * @file group_set.hpp
 * @brief Finite subsets of a group and the set operations built on them.
 *
 * A GroupSet is immutable once built. Membership is a dense bitset keyed by
 * element code when |G| <= 2^26 and a hash set otherwise; members are also
 * kept as a sorted code list for iteration.
 */

#include "heislab/group.hpp"
#include "heislab/rational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace heislab {

inline constexpr std::uint64_t kDenseSetLimit = 1ull << 26;

namespace detail {

class MembershipStore {
public:
    explicit MembershipStore(std::uint64_t universe);

    bool insert(std::uint64_t code);
    bool contains(std::uint64_t code) const noexcept;
    std::size_t size() const noexcept { return count_; }
    bool dense() const noexcept { return dense_; }
    std::vector<ElementCode> sorted() const;

private:
    bool dense_;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> words_;
    std::unordered_set<std::uint64_t> hashed_;
};

}  // namespace detail

class GroupSet {
public:
    explicit GroupSet(Group group);

    /// Duplicates are merged; codes outside the group throw std::out_of_range.
    static GroupSet from_codes(Group group, std::span<const ElementCode> codes);
    static GroupSet whole(Group group);

    const Group& group() const noexcept { return group_; }
    std::size_t size() const noexcept { return sorted_.size(); }
    bool empty() const noexcept { return sorted_.empty(); }
    bool contains(ElementCode c) const noexcept { return c.index < group_.order() && store_.contains(c.index); }
    /// Members in ascending code order.
    std::span<const ElementCode> codes() const noexcept { return sorted_; }
    bool dense() const noexcept { return store_.dense(); }

    GroupSet inverse() const;
    bool is_subset_of(const GroupSet& other) const;

    friend bool operator==(const GroupSet& a, const GroupSet& b) {
        return a.group_ == b.group_ && a.sorted_ == b.sorted_;
    }

private:
    friend class GroupSetBuilder;
    GroupSet(Group group, detail::MembershipStore store);

    Group group_;
    detail::MembershipStore store_;
    std::vector<ElementCode> sorted_;
};

class GroupSetBuilder {
public:
    explicit GroupSetBuilder(Group group);

    void insert(ElementCode c) { store_.insert(c.index); }
    bool contains(ElementCode c) const noexcept { return store_.contains(c.index); }
    std::size_t size() const noexcept { return store_.size(); }
    const Group& group() const noexcept { return group_; }
    GroupSet build() &&;

private:
    Group group_;
    detail::MembershipStore store_;
};

/// {ab : a in A, b in B}
GroupSet product_set(const GroupSet& a, const GroupSet& b);
/// All products a_1^{e_1} ... a_m^{e_m} with a_i in A; signs are +1 or -1.
GroupSet signed_product(const GroupSet& a, std::span<const int> signs);
/// {a b a^{-1} b^{-1} : a in A, b in B}
GroupSet commutator_set(const GroupSet& a, const GroupSet& b);

/// Factor sets of a brick {[x,y,z] : x in X_1 x ... x X_n, y in Y_1 x ... x Y_n, z in Z}.
struct BrickShape {
    std::vector<std::vector<Residue>> x;
    std::vector<std::vector<Residue>> y;
    std::vector<Residue> z;

    std::uint64_t size() const;
};

GroupSet brick(const Group& group, const BrickShape& shape);

struct CenterCoverage {
    std::uint64_t count = 0;
    bool full = false;
};

/// Members of S on the center line [0,0,F_p] (Heisenberg) or (1,F_p) (affine).
CenterCoverage center_coverage(const GroupSet& s);
/// The line itself.
GroupSet center_line(const Group& group);
/// Number of (x,y) fibers of H_n whose p z-values all lie in S.
std::uint64_t coset_coverage(const GroupSet& s);

/// ceil(p^alpha), computed exactly.
std::uint64_t ceil_prime_power(std::uint32_t p, const Rational& alpha);
/// {[x,y,z] in H_1(F_p) : x in {0, ..., ceil(p^alpha)}}; rejects alpha outside (0,1)
/// and any alpha for which x-sums would wrap mod p.
GroupSet freiman_base_set(std::uint32_t p, const Rational& alpha);

enum class WitnessKind { heisenberg_progression, affine_diagonal };

/// Length of the progression used by the Heisenberg witness for signed products of length k.
std::uint32_t witness_progression_length(std::uint32_t p, unsigned k);
/// Sets whose signed k-fold products never contain the whole center line:
/// [0, F_p^n, {0..L-1}] in H_n, or the diagonal (F_p^*, 0) in Aff.
GroupSet extremal_witness(WitnessKind kind, std::uint32_t p, unsigned n, unsigned k);

/// True iff [[a;b];c] = e for all a, b, c in X. Requires |X|^3 <= 10^8.
bool triple_commutator_trivial(const GroupSet& x);

/// All elements commuting with g, by enumeration.
GroupSet centralizer(const Group& group, ElementCode g);

/// {"group":"H","p":5,"n":1,"codes":[...]}; codes sorted ascending.
std::string set_to_json(const GroupSet& s);
GroupSet set_from_json(const std::string& text);
Group group_from_descriptor(const std::string& tag, std::uint32_t p, unsigned n);
std::string group_tag(const Group& g);

}  // namespace heislab
