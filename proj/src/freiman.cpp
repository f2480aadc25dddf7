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

#include "heislab/freiman.hpp"

#include "heislab/group_set.hpp"

#include <json.hpp>

#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace heislab {

namespace {

constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();

struct Slot {
    std::uint64_t image = kUnset;
    std::uint64_t rank = 0;
};

/// Product key -> first (image product, tuple rank); dense when the group is small.
class ProductTable {
public:
    explicit ProductTable(std::uint64_t universe) : dense_(universe <= kEnumerationLimit) {
        if (dense_) slots_.resize(universe);
    }
    Slot& operator[](std::uint64_t key) { return dense_ ? slots_[key] : sparse_[key]; }

private:
    bool dense_;
    std::vector<Slot> slots_;
    std::unordered_map<std::uint64_t, Slot> sparse_;
};

std::vector<std::size_t> unrank(std::uint64_t rank, std::size_t base, unsigned s) {
    std::vector<std::size_t> idx(s);
    for (unsigned j = s; j-- > 0;) {
        idx[j] = rank % base;
        rank /= base;
    }
    return idx;
}

std::optional<FreimanWitness> check_pattern(const PartialMap& rho, unsigned s, std::uint32_t mask) {
    const Group& g1 = rho.source();
    const Group& g2 = rho.target();
    const std::size_t m = rho.size();
    std::vector<int> signs(s);
    for (unsigned j = 0; j < s; ++j) signs[j] = (mask >> j) & 1 ? -1 : 1;

    std::vector<ElementCode> a_pos = rho.domain(), a_neg(m), b_pos = rho.image(), b_neg(m);
    for (std::size_t i = 0; i < m; ++i) {
        a_neg[i] = g1.inverse(a_pos[i]);
        b_neg[i] = g2.inverse(b_pos[i]);
    }
    auto factor = [&](unsigned j, std::size_t i, bool image) {
        if (image) return signs[j] > 0 ? b_pos[i] : b_neg[i];
        return signs[j] > 0 ? a_pos[i] : a_neg[i];
    };

    ProductTable table(g1.order());
    std::vector<std::size_t> idx(s, 0);
    // prefix[j] = product of the first j+1 factors
    std::vector<ElementCode> pa(s), pb(s);
    auto rebuild = [&](unsigned from) {
        for (unsigned j = from; j < s; ++j) {
            pa[j] = j == 0 ? factor(0, idx[0], false) : g1.mul(pa[j - 1], factor(j, idx[j], false));
            pb[j] = j == 0 ? factor(0, idx[0], true) : g2.mul(pb[j - 1], factor(j, idx[j], true));
        }
    };
    rebuild(0);
    for (std::uint64_t rank = 0;; ++rank) {
        Slot& slot = table[pa[s - 1].index];
        if (slot.image == kUnset) {
            slot.image = pb[s - 1].index;
            slot.rank = rank;
        } else if (slot.image != pb[s - 1].index) {
            return FreimanWitness{signs, unrank(slot.rank, m, s), idx};
        }
        unsigned j = s;
        while (j > 0 && ++idx[j - 1] == m) idx[--j] = 0;
        if (j == 0) break;
        rebuild(j - 1);
    }
    return std::nullopt;
}

}  // namespace

PartialMap::PartialMap(Group source, Group target, std::vector<ElementCode> domain, std::vector<ElementCode> image)
    : source_(std::move(source)), target_(std::move(target)), domain_(std::move(domain)), image_(std::move(image)) {
    if (domain_.size() != image_.size()) throw std::invalid_argument("domain and image lengths differ");
    std::unordered_set<std::uint64_t> seen;
    for (auto c : domain_) {
        source_.check(c);
        if (!seen.insert(c.index).second) throw std::invalid_argument("duplicate domain entry " + std::to_string(c.index));
    }
    for (auto c : image_) target_.check(c);
}

bool PartialMap::injective() const {
    std::unordered_set<std::uint64_t> seen;
    for (auto c : image_)
        if (!seen.insert(c.index).second) return false;
    return true;
}

PartialMap PartialMap::inverse() const {
    if (!injective()) throw std::invalid_argument("map is not injective");
    return PartialMap(target_, source_, image_, domain_);
}

std::optional<ElementCode> PartialMap::operator()(ElementCode a) const {
    for (std::size_t i = 0; i < domain_.size(); ++i)
        if (domain_[i] == a) return image_[i];
    return std::nullopt;
}

PartialMap PartialMap::identity(const Group& g, std::vector<ElementCode> domain) {
    auto image = domain;
    return PartialMap(g, g, std::move(domain), std::move(image));
}

PartialMap compose(const PartialMap& rho2, const PartialMap& rho1) {
    rho1.target().require_same(rho2.source());
    std::unordered_map<std::uint64_t, ElementCode> second;
    for (std::size_t i = 0; i < rho2.size(); ++i) second.emplace(rho2.domain()[i].index, rho2.image()[i]);
    std::vector<ElementCode> dom, img;
    for (std::size_t i = 0; i < rho1.size(); ++i)
        if (auto it = second.find(rho1.image()[i].index); it != second.end()) {
            dom.push_back(rho1.domain()[i]);
            img.push_back(it->second);
        }
    return PartialMap(rho1.source(), rho2.target(), std::move(dom), std::move(img));
}

FreimanVerdict is_freiman_hom(const PartialMap& rho, unsigned s, unsigned workers) {
    if (s < 2) throw std::invalid_argument("Freiman order s must be at least 2");
    if (s > 20) throw std::out_of_range("Freiman order too large");
    std::uint64_t tuples = 1;
    for (unsigned j = 0; j < s; ++j) {
        if (rho.size() != 0 && tuples > kFreimanTupleLimit / rho.size())
            throw std::out_of_range("|A|^s exceeds the tuple limit 10^8");
        tuples *= rho.size();
    }
    if (rho.size() == 0) return {};

    const std::uint32_t patterns = 1u << s;
    std::vector<std::optional<FreimanWitness>> found(patterns);
    std::atomic<std::uint32_t> next{0};
    std::atomic<std::uint32_t> first_bad{patterns};
    auto work = [&] {
        for (std::uint32_t mask; (mask = next.fetch_add(1)) < patterns;) {
            if (mask > first_bad.load()) break;
            found[mask] = check_pattern(rho, s, mask);
            if (found[mask]) {
                std::uint32_t cur = first_bad.load();
                while (mask < cur && !first_bad.compare_exchange_weak(cur, mask)) {}
            }
        }
    };
    const unsigned n = std::max(1u, std::min(workers, patterns));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (std::uint32_t mask = 0; mask < patterns; ++mask)
        if (found[mask]) return {false, std::move(found[mask])};
    return {};
}

bool is_freiman_iso(const PartialMap& rho, unsigned s, unsigned workers) {
    if (!rho.injective()) throw std::invalid_argument("Freiman isomorphism needs an injective map");
    return is_freiman_hom(rho, s, workers).ok && is_freiman_hom(rho.inverse(), s, workers).ok;
}

PartialMap partial_map_from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        auto group_of = [](const nlohmann::json& d) {
            return group_from_descriptor(d.at("group").get<std::string>(), d.at("p").get<std::uint32_t>(),
                                         d.value("n", 1u));
        };
        auto codes = [](const nlohmann::json& arr) {
            std::vector<ElementCode> out;
            for (const auto& c : arr) out.push_back({c.get<std::uint64_t>()});
            return out;
        };
        return PartialMap(group_of(j.at("source")), group_of(j.at("target")), codes(j.at("domain")),
                          codes(j.at("image")));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed map literal: ") + e.what());
    }
}

std::string partial_map_to_json(const PartialMap& rho) {
    auto desc = [](const Group& g) { return nlohmann::json{{"group", group_tag(g)}, {"p", g.p()}, {"n", g.n()}}; };
    nlohmann::json j;
    j["source"] = desc(rho.source());
    j["target"] = desc(rho.target());
    j["domain"] = nlohmann::json::array();
    j["image"] = nlohmann::json::array();
    for (auto c : rho.domain()) j["domain"].push_back(c.index);
    for (auto c : rho.image()) j["image"].push_back(c.index);
    return j.dump();
}

std::string witness_to_json(const FreimanWitness& w) {
    return nlohmann::json{{"signs", w.signs}, {"first", w.first}, {"second", w.second}}.dump();
}

}  // namespace heislab
