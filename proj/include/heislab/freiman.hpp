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
 * @file freiman.hpp
 * @brief Freiman s-homomorphism and s-isomorphism checks between subsets of finite groups.
 *
 * For each sign vector (e_1, ..., e_s) every s-tuple of the domain is hashed by its
 * signed product a_1^{e_1} ... a_s^{e_s}; tuples sharing a key must share the image product.
 */

#include "heislab/group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace heislab {

/// Cap on |A|^s for a single sign pattern.
inline constexpr std::uint64_t kFreimanTupleLimit = 100'000'000;

class PartialMap {
public:
    /// Throws std::invalid_argument on length mismatch or duplicate domain entries,
    /// std::out_of_range on invalid codes.
    PartialMap(Group source, Group target, std::vector<ElementCode> domain, std::vector<ElementCode> image);

    const Group& source() const noexcept { return source_; }
    const Group& target() const noexcept { return target_; }
    const std::vector<ElementCode>& domain() const noexcept { return domain_; }
    const std::vector<ElementCode>& image() const noexcept { return image_; }
    std::size_t size() const noexcept { return domain_.size(); }

    bool injective() const;
    /// Throws std::invalid_argument unless injective.
    PartialMap inverse() const;
    std::optional<ElementCode> operator()(ElementCode a) const;

    static PartialMap identity(const Group& g, std::vector<ElementCode> domain);

private:
    Group source_;
    Group target_;
    std::vector<ElementCode> domain_;
    std::vector<ElementCode> image_;
};

/// rho2 after rho1, on the elements whose rho1-image lies in the domain of rho2.
PartialMap compose(const PartialMap& rho2, const PartialMap& rho1);

struct FreimanWitness {
    std::vector<int> signs;
    std::vector<std::size_t> first;   // domain indices
    std::vector<std::size_t> second;  // domain indices; same signed product, different image product
};

struct FreimanVerdict {
    bool ok = true;
    std::optional<FreimanWitness> witness;
};

/// Sign patterns are visited in mask order (bit j set means e_j = -1), tuples in
/// lexicographic index order; the first collision found is the witness.
/// Throws std::invalid_argument for s < 2 and std::out_of_range when |A|^s exceeds the cap.
FreimanVerdict is_freiman_hom(const PartialMap& rho, unsigned s, unsigned workers = 1);
/// Throws std::invalid_argument for a non-injective map.
bool is_freiman_iso(const PartialMap& rho, unsigned s, unsigned workers = 1);

/// {"source":{"group":"Z","p":7,"n":1},"target":{...},"domain":[...],"image":[...]}
PartialMap partial_map_from_json(const std::string& text);
std::string partial_map_to_json(const PartialMap& rho);
std::string witness_to_json(const FreimanWitness& w);

}  // namespace heislab
