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

#include "heislab/scenarios.hpp"

#include "heislab/energy.hpp"
#include "heislab/freiman.hpp"
#include "heislab/group_set.hpp"
#include "heislab/incidence.hpp"
#include "heislab/random.hpp"
#include "scenario_support.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace heislab {

using boost::multiprecision::cpp_int;
using detail::TrialResult;

namespace {

cpp_int ipow(std::uint64_t base, unsigned e) { return boost::multiprecision::pow(cpp_int(base), e); }

std::uint64_t trials_or(const ScenarioConfig& cfg, std::uint64_t fallback) { return cfg.trials ? cfg.trials : fallback; }

std::vector<std::uint32_t> primes_or(const ScenarioConfig& cfg, std::vector<std::uint32_t> fallback) {
    return cfg.primes.empty() ? std::move(fallback) : cfg.primes;
}

void require_prime(std::uint32_t p, std::uint32_t lo, std::uint32_t hi, const std::string& what) {
    if (p < 3 || !is_prime(p)) throw ConfigError(what + ": " + std::to_string(p) + " is not an odd prime");
    if (p < lo || p > hi)
        throw ConfigError(what + ": p = " + std::to_string(p) + " outside the supported range [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
}

std::vector<std::string> groups_or(const ScenarioConfig& cfg, std::vector<std::string> fallback) {
    if (cfg.group.empty()) return fallback;
    if (cfg.group != "H" && cfg.group != "Aff") throw ConfigError("group must be H or Aff");
    return {cfg.group};
}

/// Smallest a with a^k > bound.
std::uint64_t smallest_kth_power_above(const cpp_int& bound, unsigned k) {
    std::uint64_t a = static_cast<std::uint64_t>(std::floor(std::pow(bound.convert_to<double>(), 1.0 / k)));
    while (a > 0 && ipow(a, k) > bound) --a;
    while (ipow(a, k) <= bound) ++a;
    return a;
}

GroupSet random_set(Rng& rng, const Group& g, std::uint64_t size) { return GroupSet::from_codes(g, sample_codes(rng, g, size)); }

/// A random set concentrated on a few center fibers (Heisenberg) or x-fibers (affine).
GroupSet clustered_set(Rng& rng, const Group& g) {
    const std::uint64_t fibers = g.order() / g.p();
    const auto chosen = reservoir_sample(rng, fibers, static_cast<std::uint64_t>(rng.between(1, static_cast<std::int64_t>(fibers))));
    std::vector<ElementCode> codes;
    for (auto fiber : chosen) {
        const auto within = reservoir_sample(rng, g.p(), static_cast<std::uint64_t>(rng.between(1, g.p())));
        for (auto z : within) codes.push_back({fiber * g.p() + z});
    }
    return GroupSet::from_codes(g, codes);
}

std::vector<Residue> random_factor(Rng& rng, std::uint32_t p, std::uint64_t size) { return sample_residues(rng, p, size); }

std::vector<Residue> all_residues(std::uint32_t p) {
    std::vector<Residue> v(p);
    for (Residue i = 0; i < p; ++i) v[i] = i;
    return v;
}

std::string signs_text(const std::vector<int>& signs) {
    std::string s;
    for (int e : signs) s += e > 0 ? '+' : '-';
    return s;
}

std::string join_sizes(const std::vector<std::vector<Residue>>& factors) {
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "x" : "") + std::to_string(factors[i].size());
    return s;
}

Group make_group(const std::string& tag, std::uint32_t p, unsigned n) { return tag == "H" ? Group::heisenberg(p, n) : Group::affine(p); }

double ratio_of(double num, double den) { return den > 0 ? num / den : 0.0; }

}  // namespace

// ---- configuration

std::vector<int> parse_signs(const std::string& text) {
    std::vector<int> out;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        if (token == "+1" || token == "1")
            out.push_back(1);
        else if (token == "-1")
            out.push_back(-1);
        else
            throw ConfigError("bad sign '" + token + "'");
        token.clear();
    };
    const bool compact = text.find_first_not_of("+-") == std::string::npos;
    for (char c : text) {
        if (compact) {
            out.push_back(c == '+' ? 1 : -1);
        } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            token += c;
        }
    }
    if (!compact) flush();
    if (out.empty()) throw ConfigError("empty sign pattern");
    return out;
}

std::vector<std::uint32_t> parse_uint_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(static_cast<std::uint32_t>(v));
        } catch (const std::exception&) {
            throw ConfigError("bad integer list entry '" + item + "'");
        }
    }
    return out;
}

ScenarioConfig config_from_json(const std::string& text) {
    ScenarioConfig cfg;
    try {
        const auto j = nlohmann::json::parse(text);
        cfg.scenario = j.value("scenario", std::string{});
        if (j.contains("p")) cfg.primes = j.at("p").get<std::vector<std::uint32_t>>();
        cfg.n = j.value("n", 0u);
        cfg.trials = j.value("trials", std::uint64_t{0});
        cfg.seed = j.value("seed", std::uint64_t{1});
        cfg.k = j.value("k", 0u);
        if (j.contains("alpha") && !j.at("alpha").is_null()) {
            const auto& a = j.at("alpha");
            cfg.alpha = Rational::parse(a.is_string() ? a.get<std::string>() : a.dump());
        }
        if (j.contains("signs")) {
            const auto& s = j.at("signs");
            cfg.signs = s.is_string() ? parse_signs(s.get<std::string>()) : s.get<std::vector<int>>();
        }
        cfg.group = j.value("group", std::string{});
        cfg.size = j.value("size", std::uint64_t{0});
        if (j.contains("brick")) cfg.brick = j.at("brick").get<std::vector<std::uint32_t>>();
        cfg.convention = j.value("convention", std::string{"dilate"});
        cfg.workers = std::max(1u, j.value("workers", 1u));
        cfg.inject_fault = j.value("inject_fault", false);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
    return cfg;
}

std::string config_to_json(const ScenarioConfig& cfg) {
    nlohmann::ordered_json j;
    j["scenario"] = cfg.scenario;
    j["p"] = cfg.primes;
    j["n"] = cfg.n;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["k"] = cfg.k;
    j["alpha"] = cfg.alpha ? nlohmann::ordered_json(cfg.alpha->to_string()) : nlohmann::ordered_json(nullptr);
    j["signs"] = cfg.signs;
    j["group"] = cfg.group;
    j["size"] = cfg.size;
    j["brick"] = cfg.brick;
    j["convention"] = cfg.convention;
    j["workers"] = cfg.workers;
    j["inject_fault"] = cfg.inject_fault;
    return j.dump();
}

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {
        "run_commutator_cover", "run_signed_cover", "run_growth_bounds", "run_brick_energy", "run_coset_cover",
        "run_freiman_scenario", "run_mixed_sums",   "run_incidence",     "run_selftest",
    };
    return names;
}

// ---- commutator cover

ScenarioReport run_commutator_cover(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    rep.scenario = "run_commutator_cover";
    rep.seed = cfg.seed;
    rep.columns = {"group", "p", "trial", "size_a", "size_b", "product", "threshold", "covered", "pass"};
    if (cfg.n > 1) throw ConfigError("commutator cover is stated for H_1");
    const std::uint64_t trials = trials_or(cfg, 1000);

    for (const auto& tag : groups_or(cfg, {"H", "Aff"})) {
        const bool heis = tag == "H";
        for (std::uint32_t p : primes_or(cfg, heis ? std::vector<std::uint32_t>{3, 5} : std::vector<std::uint32_t>{5, 7, 11})) {
            require_prime(p, 3, heis ? 13 : 101, rep.scenario);
            const Group g = make_group(tag, p, 1);
            // |A||B| > p^5 in H_1, |A|^2 > p^3 in Aff
            const cpp_int threshold = heis ? ipow(p, 5) : ipow(p, 3);
            const std::uint64_t lo = heis ? std::uint64_t{p} * p + 1 : smallest_kth_power_above(threshold, 2);
            if (cfg.size && (cfg.size < lo || cfg.size > g.order()))
                throw ConfigError("|A| = " + std::to_string(cfg.size) + " cannot satisfy the size hypothesis in " + g.name());
            const std::string label = tag + std::to_string(p);
            detail::run_trials(rep, trials, cfg.workers, [&](std::uint64_t t, TrialResult& out) {
                Rng rng(derive_seed(cfg.seed, rep.scenario, label, t));
                const std::uint64_t hi = heis ? g.order() : std::min<std::uint64_t>(g.order(), lo + p);
                const std::uint64_t na = cfg.size ? cfg.size : static_cast<std::uint64_t>(rng.between(lo, hi));
                const GroupSet a = random_set(rng, g, na);
                std::uint64_t nb = na;
                GroupSet cover(g);
                if (heis) {
                    nb = static_cast<std::uint64_t>(threshold / na) + 1;
                    cover = commutator_set(a, random_set(rng, g, nb));
                } else {
                    cover = commutator_set(a, a);
                }
                const auto cov = center_coverage(cover);
                const cpp_int prod = cpp_int(na) * nb;
                if (prod <= threshold) throw std::logic_error("size hypothesis violated");
                out.rows.push_back({tag, std::uint64_t{p}, t, na, nb, prod.convert_to<std::uint64_t>(),
                                    threshold.convert_to<std::uint64_t>(), cov.count, cov.full});
                if (!cov.full) out.fail(label + " trial " + std::to_string(t) + ": center line not covered");
            });
        }
    }
    return rep;
}

// ---- signed cover

ScenarioReport run_signed_cover(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    rep.scenario = "run_signed_cover";
    rep.seed = cfg.seed;
    rep.columns = {"case", "group", "p", "n", "k", "signs", "trial", "size", "min_size", "covered", "pass"};

    std::vector<int> signs = cfg.signs;
    unsigned k = cfg.k ? cfg.k : 2;
    if (signs.empty()) {
        for (unsigned j = 0; j < 2 * k; ++j) signs.push_back(j % 2 ? -1 : 1);
    } else {
        if (signs.size() % 2) throw ConfigError("sign vector must have even length 2k");
        if (cfg.k && cfg.k * 2 != signs.size()) throw ConfigError("sign vector length differs from 2k");
        k = static_cast<unsigned>(signs.size() / 2);
    }
    int total = 0;
    for (int e : signs) total += e;
    if (total != 0) throw ConfigError("sign vector is not balanced (sum of signs must be 0)");
    if (k < 2) throw ConfigError("k must be at least 2");
    const std::uint64_t trials = trials_or(cfg, 1000);

    struct Case {
        std::string tag;
        std::uint32_t p;
        unsigned n;
    };
    std::vector<Case> cases;
    if (cfg.primes.empty() && cfg.group.empty()) {
        cases = {{"H", 3, cfg.n ? cfg.n : 1}, {"Aff", 5, 1}};
    } else {
        for (const auto& tag : groups_or(cfg, {"H", "Aff"}))
            for (std::uint32_t p : primes_or(cfg, tag == "H" ? std::vector<std::uint32_t>{3} : std::vector<std::uint32_t>{5}))
                cases.push_back({tag, p, tag == "H" ? (cfg.n ? cfg.n : 1) : 1});
    }

    for (const auto& c : cases) {
        require_prime(c.p, 3, 31, rep.scenario);
        if (c.n < 1 || c.n > kMaxHeisenbergDim) throw ConfigError("n must lie in [1, 4]");
        const Group g = make_group(c.tag, c.p, c.n);
        if (g.order() > (1u << 20)) throw ConfigError(g.name() + " is too large for signed products");
        const bool heis = c.tag == "H";
        // |A| > p^{n+1+n/k}  <=>  |A|^k > p^{k(n+1)+n};  |A| > p^{1+1/k}  <=>  |A|^k > p^{k+1}
        const cpp_int bound = heis ? ipow(c.p, k * (c.n + 1) + c.n) : ipow(c.p, k + 1);
        const std::uint64_t lo = smallest_kth_power_above(bound, k);
        if (lo > g.order()) throw ConfigError("no subset of " + g.name() + " satisfies the size condition");
        if (cfg.size && (cfg.size < lo || cfg.size > g.order()))
            throw ConfigError("|A| = " + std::to_string(cfg.size) + " does not satisfy the size condition");
        const std::string label = c.tag + std::to_string(c.p) + "n" + std::to_string(c.n);
        detail::run_trials(rep, trials, cfg.workers, [&](std::uint64_t t, TrialResult& out) {
            Rng rng(derive_seed(cfg.seed, rep.scenario, label, t));
            const std::uint64_t na = cfg.size ? cfg.size
                                              : static_cast<std::uint64_t>(rng.between(lo, std::min<std::uint64_t>(g.order(), lo + c.p)));
            const auto cov = center_coverage(signed_product(random_set(rng, g, na), signs));
            out.rows.push_back({std::string("random"), c.tag, std::uint64_t{c.p}, std::uint64_t{c.n}, std::uint64_t{k},
                                signs_text(signs), t, na, lo, cov.count, cov.full});
            if (!cov.full) out.fail(label + " trial " + std::to_string(t) + ": center line not covered");
        });
        const GroupSet w = extremal_witness(heis ? WitnessKind::heisenberg_progression : WitnessKind::affine_diagonal, c.p,
                                            c.n, static_cast<unsigned>(signs.size()));
        const auto cov = center_coverage(signed_product(w, signs));
        rep.add_row({std::string("witness"), c.tag, std::uint64_t{c.p}, std::uint64_t{c.n}, std::uint64_t{k},
                     signs_text(signs), std::monostate{}, std::uint64_t{w.size()}, lo, cov.count, !cov.full});
        if (cov.full) rep.fail(label + ": witness set covers the center line");
    }
    return rep;
}

// ---- growth bounds

ScenarioReport run_growth_bounds(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    rep.scenario = "run_growth_bounds";
    rep.seed = cfg.seed;
    rep.columns = {"case", "group", "p", "n", "k", "trial", "size", "K", "product_size", "bound", "ratio", "pass"};
    const std::uint64_t trials = trials_or(cfg, 200);
    std::vector<unsigned> ks = cfg.k ? std::vector<unsigned>{cfg.k} : std::vector<unsigned>{2, 3};
    for (unsigned k : ks)
        if (k < 2 || k > 6) throw ConfigError("k must lie in [2, 6]");
    const unsigned n = cfg.n ? cfg.n : 1;
    if (n > kMaxHeisenbergDim) throw ConfigError("n must lie in [1, 4]");

    for (const auto& tag : groups_or(cfg, {"H", "Aff"})) {
        for (std::uint32_t p : primes_or(cfg, {3, 5})) {
            require_prime(p, 3, 31, rep.scenario);
            const Group g = make_group(tag, p, tag == "H" ? n : 1);
            if (g.order() > 4096) throw ConfigError(g.name() + " is too large for repeated product sets");
            for (unsigned k : ks) {
                const unsigned e = tag == "H" ? (n + 1) * (k - 1) : k - 1;
                const std::string label = tag + std::to_string(p) + "k" + std::to_string(k);
                auto evaluate = [&](const std::string& kase, const GroupSet& a, const Cell& trial, TrialResult& out) {
                    GroupSet power = a;
                    for (unsigned j = 1; j < k; ++j) power = product_set(power, a);
                    const Histogram marg = marginal_weight(a);
                    std::uint64_t delta = 0;
                    for (const auto& [key, v] : marg.entries()) delta = std::max(delta, v);
                    const cpp_int ak = cpp_int(power.size()), na = cpp_int(a.size());
                    // 2|A^k| >= min{K p, |A|^k / p^e} with K = |A| / delta
                    const bool pass = 2 * ak * delta >= na * p || 2 * ak * ipow(p, e) >= boost::multiprecision::pow(na, k);
                    const double kp = static_cast<double>(a.size()) * p / static_cast<double>(delta);
                    const double growth = std::pow(static_cast<double>(a.size()), k) / std::pow(static_cast<double>(p), e);
                    const double bound = 0.5 * std::min(kp, growth);
                    const double ratio = ratio_of(static_cast<double>(power.size()), bound);
                    out.rows.push_back({kase, tag, std::uint64_t{p}, std::uint64_t{g.n()}, std::uint64_t{k}, trial,
                                        std::uint64_t{a.size()}, brick_parameter_K(a).to_string(),
                                        std::uint64_t{power.size()}, bound, ratio, pass});
                    out.ratios.push_back(ratio);
                    if (!pass) out.fail(label + " " + kase + ": |A^k| below the explicit bound");
                };
                TrialResult anchor;
                evaluate("full_group", GroupSet::whole(g), std::monostate{}, anchor);
                detail::merge(rep, std::move(anchor));
                detail::run_trials(rep, trials, cfg.workers, [&](std::uint64_t t, TrialResult& out) {
                    Rng rng(derive_seed(cfg.seed, rep.scenario, label, t));
                    if (t % 2 == 0)
                        evaluate("uniform", random_set(rng, g, static_cast<std::uint64_t>(rng.between(1, static_cast<std::int64_t>(g.order())))), t, out);
                    else
                        evaluate("clustered", clustered_set(rng, g), t, out);
                });
            }
        }
    }

    // |A^2| against min{|A|^{7/4}, p|A|} for the Z = {0} brick over A (ratio only)
    const std::vector<std::uint32_t> brick_primes = cfg.primes.empty() ? std::vector<std::uint32_t>{5, 7} : cfg.primes;
    for (std::uint32_t p : brick_primes) {
        require_prime(p, 3, 31, rep.scenario);
        const Group g = Group::heisenberg(p, 1);
        auto evaluate = [&](const std::string& kase, const std::vector<Residue>& a, const Cell& trial, TrialResult& out) {
            const GroupSet set = brick(g, BrickShape{{a}, {a}, {0}});
            const GroupSet sq = product_set(set, set);
            const double na = static_cast<double>(set.size());
            const double bound = std::min(std::pow(na, 1.75), p * na);
            const double ratio = ratio_of(static_cast<double>(sq.size()), bound);
            Cell pass = std::monostate{};
            if (kase == "brick_full") {
                pass = sq.size() == std::uint64_t{p} * set.size();
                if (!std::get<bool>(pass)) out.fail("full Z={0} brick: |A^2| != p|A|");
            }
            out.rows.push_back({kase, std::string("H"), std::uint64_t{p}, std::uint64_t{1}, std::uint64_t{2}, trial,
                                std::uint64_t{set.size()}, brick_parameter_K(set).to_string(), std::uint64_t{sq.size()},
                                bound, ratio, pass});
            out.ratios.push_back(ratio);
        };
        TrialResult anchor;
        evaluate("brick_full", all_residues(p), std::monostate{}, anchor);
        detail::merge(rep, std::move(anchor));
        const std::string label = "brick" + std::to_string(p);
        detail::run_trials(rep, std::min<std::uint64_t>(trials, 50), cfg.workers, [&](std::uint64_t t, TrialResult& out) {
            Rng rng(derive_seed(cfg.seed, rep.scenario, label, t));
            const auto size = cfg.size ? std::min<std::uint64_t>(cfg.size, p) : static_cast<std::uint64_t>(rng.between(1, p));
            evaluate("brick_random", random_factor(rng, p, size), t, out);
        });
    }
    return rep;
}

// ---- brick energy

ScenarioReport run_brick_energy(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    rep.scenario = "run_brick_energy";
    rep.seed = cfg.seed;
    rep.columns = {"case",      "p",         "trial",   "size_x",    "size_y",    "size_z",  "size",
                   "energy_system", "energy_group", "ex", "ey", "ez", "term_main", "term_mid",
                   "e_branch1", "e_branch2", "e_term", "rhs", "ratio", "sigma2", "pass"};
    const std::uint64_t trials = trials_or(cfg, 20);
    if (!cfg.brick.empty() && cfg.brick.size() != 3) throw ConfigError("brick sizes are |X|,|Y|,|Z|");

    for (std::uint32_t p : primes_or(cfg, {3, 5, 7})) {
        require_prime(p, 3, kMaxBrickSystemPrime, rep.scenario);
        for (auto s : cfg.brick)
            if (s < 1 || s > p) throw ConfigError("brick factor sizes must lie in [1, p]");
        const Group g = Group::heisenberg(p, 1);
        auto evaluate = [&](const std::string& kase, const std::vector<Residue>& xs, const std::vector<Residue>& ys,
                            const std::vector<Residue>& zs, const Cell& trial, TrialResult& out) {
            const GroupSet a = brick(g, BrickShape{{xs}, {ys}, zs});
            const std::uint64_t size = a.size();
            if (cpp_int(size) * size > 1'000'000'000) throw ConfigError("brick exceeds the |A|^2 <= 10^9 budget");
            const FieldSet x(p, xs), y(p, ys), z(p, zs);
            const std::uint64_t sys = brick_system_count(x, y, z);
            const std::uint64_t eg = group_energy(a, a);
            const bool consistent = sys == group_energy(a, a.inverse());
            const cpp_int na = size;
            const bool trivial_bounds = cpp_int(eg) >= na * na && cpp_int(eg) <= na * na * na;
            const double ex = static_cast<double>(energy(x, x, EnergyLaw::add));
            const double ey = static_cast<double>(energy(y, y, EnergyLaw::add));
            const double ez = static_cast<double>(energy(z, z, EnergyLaw::add));
            const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size()), nz = static_cast<double>(z.size());
            const double m = std::max(nx, ny);
            const double term_main = ez * std::pow(nx, 3) * std::pow(ny, 3) / p;
            const double term_mid = ez * nx * ny * (nx * ny * std::sqrt(m) + m * m);
            const double b1 = std::pow(nz, 4) * ex * ey / p + std::pow(nz, 4) * std::pow(nx, 0.25) * std::pow(ny, 2.25) * std::pow(ex, 0.75);
            const double b2 = std::pow(nx, 3) * std::pow(ny, 3) * std::pow(nz, 4) / p + std::pow(nx * ny, 2.5) * nz * nz * std::sqrt(ez);
            // Z = {0}: the first case of the argument is empty
            const bool z_zero = zs.size() == 1 && zs[0] == 0;
            const double e_term = z_zero ? 0.0 : std::min(b1, b2);
            const double rhs = term_main + term_mid + e_term;
            const double ratio = ratio_of(static_cast<double>(sys), rhs);
            bool pass = consistent && trivial_bounds;
            if (kase == "full") {
                pass = pass && cpp_int(eg) == ipow(p, 9);
                if (!pass) out.fail("full brick at p=" + std::to_string(p) + ": energy differs from p^9");
            } else if (!pass) {
                out.fail("brick at p=" + std::to_string(p) + ": energy routes disagree");
            }
            out.rows.push_back({kase, std::uint64_t{p}, trial, std::uint64_t{x.size()}, std::uint64_t{y.size()},
                                std::uint64_t{z.size()}, size, sys, eg, ex, ey, ez, term_main, term_mid, b1, b2, e_term,
                                rhs, ratio, sigma2_correlation(x, y), pass});
            out.ratios.push_back(ratio);
        };
        TrialResult anchor;
        evaluate("full", all_residues(p), all_residues(p), all_residues(p), std::monostate{}, anchor);
        detail::merge(rep, std::move(anchor));
        const std::string label = "p" + std::to_string(p);
        detail::run_trials(rep, trials, cfg.workers, [&](std::uint64_t t, TrialResult& out) {
            Rng rng(derive_seed(cfg.seed, rep.scenario, label, t));
            auto size_of = [&](std::size_t i) {
                return cfg.brick.empty() ? static_cast<std::uint64_t>(rng.between(1, p)) : std::uint64_t{cfg.brick[i]};
            };
            const auto xs = random_factor(rng, p, size_of(0));
            const auto ys = random_factor(rng, p, size_of(1));
            if (cfg.brick.empty() && t % 4 == 3)
                evaluate("z_zero", xs, ys, {0}, t, out);
            else
                evaluate("random", xs, ys, random_factor(rng, p, size_of(2)), t, out);
        });
    }
    return rep;
}

// ---- coset cover

ScenarioReport run_coset_cover(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    rep.scenario = "run_coset_cover";
    rep.seed = cfg.seed;
    rep.columns = {"case", "p", "n", "trial", "x_sizes", "y_sizes", "size_z", "size", "hypotheses", "cond_lhs",
                   "cond_rhs", "cond_ratio", "coverage", "target", "ratio", "pass"};
    const unsigned n = cfg.n ? cfg.n : 2;
    if (n % 2 != 0 || n < 2) throw ConfigError("coset cover needs an even n >= 2");
    if (n > kMaxHeisenbergDim) throw ConfigError("n must lie in [2, 4]");
    const std::uint64_t trials = trials_or(cfg, 10);
    if (!cfg.brick.empty()) {
        if (cfg.brick.size() != 2 * n + 1) throw ConfigError("brick sizes are |X_1|..|X_n|,|Y_1|..|Y_n|,|Z|");
        const auto [lo, hi] = std::minmax_element(cfg.brick.begin(), cfg.brick.end() - 1);
        if (*lo == 0 || *hi > 2 * *lo) throw ConfigError("factor sizes must be comparable (max/min <= 2)");
    }

    for (std::uint32_t p : primes_or(cfg, {3, 5})) {
        require_prime(p, 3, 7, rep.scenario);
        const Group g = Group::heisenberg(p, n);
        if (g.order() > 20000) throw ConfigError(g.name() + " is too large for brick products");
        for (auto s : cfg.brick)
            if (s > p) throw ConfigError("brick factor sizes must lie in [1, p]");
        auto evaluate = [&](const std::string& kase, const BrickShape& shape, const Cell& trial, TrialResult& out) {
            const GroupSet a = brick(g, shape);
            const std::uint64_t coverage = coset_coverage(product_set(a, a));
            double xx = 1, yy = 1;
            cpp_int cx = 1, cy = 1;
            for (const auto& f : shape.x) {
                xx *= static_cast<double>(f.size());
                cx *= f.size();
            }
            for (const auto& f : shape.y) {
                yy *= static_cast<double>(f.size());
                cy *= f.size();
            }
            const std::uint64_t nz = shape.z.size();
            const bool hyp = nz <= cx * cy && cx <= nz * cy && cy <= nz * cx;
            const double lhs = xx * yy;
            const double rhs = std::pow(p, 1.5) * std::pow(lhs / (p * std::sqrt(static_cast<double>(nz))), std::pow(2.0, -static_cast<double>(n) / 2));
            const double target = static_cast<double>(a.size()) / p;
            const double ratio = ratio_of(static_cast<double>(coverage), target);
            Cell pass = std::monostate{};
            if (kase == "full") {
                const bool ok = cpp_int(coverage) == ipow(p, 2 * n) && cpp_int(coverage) * p >= a.size();
                pass = ok;
                if (!ok) out.fail("full brick: coverage differs from p^{2n}");
            }
            out.rows.push_back({kase, std::uint64_t{p}, std::uint64_t{n}, trial, join_sizes(shape.x), join_sizes(shape.y), nz,
                                std::uint64_t{a.size()}, hyp, lhs, rhs, ratio_of(lhs, rhs), coverage, target, ratio, pass});
            out.ratios.push_back(ratio);
        };
        TrialResult anchor;
        BrickShape full{std::vector<std::vector<Residue>>(n, all_residues(p)), std::vector<std::vector<Residue>>(n, all_residues(p)),
                       all_residues(p)};
        evaluate("full", full, std::monostate{}, anchor);
        detail::merge(rep, std::move(anchor));
        const std::string label = "p" + std::to_string(p) + "n" + std::to_string(n);
        detail::run_trials(rep, trials, cfg.workers, [&](std::uint64_t t, TrialResult& out) {
            Rng rng(derive_seed(cfg.seed, rep.scenario, label, t));
            BrickShape shape;
            const auto smin = static_cast<std::uint64_t>(rng.between(1, p));
            auto factor_size = [&](std::size_t i) {
                return cfg.brick.empty() ? static_cast<std::uint64_t>(rng.between(static_cast<std::int64_t>(smin),
                                                                                    static_cast<std::int64_t>(std::min<std::uint64_t>(p, 2 * smin))))
                                         : std::uint64_t{cfg.brick[i]};
            };
            for (unsigned i = 0; i < n; ++i) shape.x.push_back(random_factor(rng, p, factor_size(i)));
            for (unsigned i = 0; i < n; ++i) shape.y.push_back(random_factor(rng, p, factor_size(n + i)));
            if (!cfg.brick.empty())
                shape.z = random_factor(rng, p, cfg.brick[2 * n]);
            else if (t % 3 == 2)
                shape.z = {0, 1};
            else
                shape.z = random_factor(rng, p, static_cast<std::uint64_t>(rng.between(1, p)));
            evaluate("random", shape, t, out);
        });
    }
    return rep;
}

// ---- Freiman construction

ScenarioReport run_freiman_scenario(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    rep.scenario = "run_freiman_scenario";
    rep.seed = cfg.seed;
    rep.columns = {"case", "p", "alpha", "trial", "size", "value", "expected", "pass"};
    const std::uint64_t trials = trials_or(cfg, 100);
    const Rational alpha = cfg.alpha ? *cfg.alpha : Rational(2, 5);

    for (std::uint32_t p : primes_or(cfg, {5, 7, 11})) {
        require_prime(p, 5, 31, rep.scenario);
        GroupSet base(Group::heisenberg(p, 1));
        try {
            base = freiman_base_set(p, alpha);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        const Group& g = base.group();
        const std::string a_text = alpha.to_string();
        const std::uint64_t pp = std::uint64_t{p} * p;
        const GroupSet doubled = product_set(base, base);
        const std::uint64_t expected = 2 * base.size() - pp;
        const bool equal = doubled.size() == expected;
        rep.add_row({std::string("doubling"), std::uint64_t{p}, a_text, std::monostate{}, std::uint64_t{base.size()},
                     std::uint64_t{doubled.size()}, expected, equal});
        if (!equal) rep.fail("p=" + std::to_string(p) + ": |A_*A_*| != 2|A_*| - p^2");

        // |A| > p^{5/2} forces [A,A] to contain the center
        const std::uint64_t lo = smallest_kth_power_above(ipow(p, 5), 2);
        if (lo > base.size()) throw ConfigError("A_* is too small to hold a subset with |A| > p^{5/2}; increase alpha");
        const std::string label = "p" + std::to_string(p);
        const auto codes = base.codes();
        detail::run_trials(rep, trials, cfg.workers, [&](std::uint64_t t, TrialResult& out) {
            Rng rng(derive_seed(cfg.seed, rep.scenario, label, t));
            const auto na = static_cast<std::uint64_t>(rng.between(lo, std::min<std::uint64_t>(base.size(), lo + p)));
            std::vector<ElementCode> pick;
            for (auto i : reservoir_sample(rng, codes.size(), na)) pick.push_back(codes[i]);
            const GroupSet a = GroupSet::from_codes(g, pick);
            const auto cov = center_coverage(commutator_set(a, a));
            out.rows.push_back({std::string("coverage"), std::uint64_t{p}, a_text, t, na, cov.count, std::uint64_t{p}, cov.full});
            if (!cov.full) out.fail(label + " trial " + std::to_string(t) + ": [A,A] misses the center");

            if (t < 5) {
                // identity and conjugation restricted to small subsets are Freiman homomorphisms
                std::vector<ElementCode> small;
                for (auto i : reservoir_sample(rng, codes.size(), 5)) small.push_back(codes[i]);
                const bool iso = is_freiman_iso(PartialMap::identity(g, small), 3);
                const ElementCode c = sample_codes(rng, g, 1)[0];
                std::vector<ElementCode> image;
                for (auto s : small) image.push_back(g.mul(g.mul(c, s), g.inverse(c)));
                const bool hom = is_freiman_hom(PartialMap(g, g, small, image), 3).ok;
                out.rows.push_back({std::string("identity_iso"), std::uint64_t{p}, a_text, t, std::uint64_t{5},
                                    std::uint64_t{iso}, std::uint64_t{1}, iso});
                out.rows.push_back({std::string("conjugation_hom"), std::uint64_t{p}, a_text, t, std::uint64_t{5},
                                    std::uint64_t{hom}, std::uint64_t{1}, hom});
                if (!iso || !hom) out.fail(label + ": Freiman sanity check failed");
            }
        });
    }
    return rep;
}

// ---- mixed sums

ScenarioReport run_mixed_sums(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    rep.scenario = "run_mixed_sums";
    rep.seed = cfg.seed;
    rep.columns = {"p", "trial", "size", "contains_zero", "sum_add", "sum_mul", "energy_add", "bound_mul",
                   "ratio_add", "ratio_mul", "pass"};
    const std::uint64_t trials = trials_or(cfg, 20);
    FiberConvention conv;
    if (cfg.convention == "dilate")
        conv = FiberConvention::dilate;
    else if (cfg.convention == "dilate_inverse")
        conv = FiberConvention::dilate_inverse;
    else
        throw ConfigError("convention must be dilate or dilate_inverse");

    for (std::uint32_t p : primes_or(cfg, {13, 31, 101})) {
        require_prime(p, 3, 1009, rep.scenario);
        const std::string label = "p" + std::to_string(p);
        detail::run_trials(rep, trials, cfg.workers, [&](std::uint64_t t, TrialResult& out) {
            Rng rng(derive_seed(cfg.seed, rep.scenario, label, t));
            // even trials avoid 0 so that the fiber bound applies
            const bool nonzero = t % 2 == 0;
            const std::uint64_t cap = nonzero ? p - 1 : p;
            const auto size = cfg.size ? std::min<std::uint64_t>(cfg.size, cap)
                                       : static_cast<std::uint64_t>(rng.between(1, std::min<std::int64_t>(cap, 40)));
            const FieldSet a(p, sample_residues(rng, p, size, nonzero));
            const MixedEnergySums sums = mixed_energy_sums(a, conv);
            const FieldSet base = conv == FiberConvention::dilate ? a : reciprocals(a);
            const std::uint64_t e = energy(base, base, EnergyLaw::add);
            const cpp_int bound = cpp_int(a.size()) * e;
            const double na = static_cast<double>(a.size());
            const double ratio_add = static_cast<double>(sums.sum_add_fibers) / std::pow(na, 11.0 / 3.0);
            const double ratio_mul = ratio_of(static_cast<double>(sums.sum_mul_fibers), bound.convert_to<double>());
            // the preimage argument needs 0 outside A
            Cell pass = std::monostate{};
            if (!a.contains(0)) {
                const bool ok = cpp_int(sums.sum_mul_fibers) <= bound;
                pass = ok;
                if (!ok) out.fail(label + " trial " + std::to_string(t) + ": sum E+(fibers) exceeds |A| E+");
            }
            out.rows.push_back({std::uint64_t{p}, t, std::uint64_t{a.size()}, a.contains(0), sums.sum_add_fibers,
                                sums.sum_mul_fibers, e, bound.convert_to<std::uint64_t>(), ratio_add, ratio_mul, pass});
            out.ratios.push_back(ratio_add);
        });
    }
    return rep;
}

// ---- incidences

ScenarioReport run_incidence(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    rep.scenario = "run_incidence";
    rep.seed = cfg.seed;
    rep.columns = {"case", "p", "trial", "points", "objects", "lhs", "rhs", "error", "bound", "ratio", "pass"};
    const std::uint64_t trials = trials_or(cfg, 200);

    for (std::uint32_t p : primes_or(cfg, {5, 7, 11})) {
        require_prime(p, 3, 101, rep.scenario);
        {
            const auto all = all_residues(p);
            const auto r = sdz_report(p, all, all, LineSet::all(p));
            rep.add_row({std::string("sdz_full"), std::uint64_t{p}, std::monostate{}, r.points, r.objects, r.incidences,
                         r.main_term, r.error, r.bound, r.ratio, r.error_is_zero && r.ratio == 0.0});
            if (!r.error_is_zero) rep.fail("full grid: incidence count differs from the main term");
        }
        const std::string label = "p" + std::to_string(p);
        const std::uint64_t pp = std::uint64_t{p} * p;
        detail::run_trials(rep, trials, cfg.workers, [&](std::uint64_t t, TrialResult& out) {
            Rng rng(derive_seed(cfg.seed, rep.scenario, label, t));
            std::vector<Point2> pts;
            for (auto c : reservoir_sample(rng, pp, static_cast<std::uint64_t>(rng.between(1, static_cast<std::int64_t>(pp)))))
                pts.push_back({static_cast<Residue>(c / p), static_cast<Residue>(c % p)});
            std::vector<Line> ls;
            for (auto c : reservoir_sample(rng, pp + p, static_cast<std::uint64_t>(rng.between(1, static_cast<std::int64_t>(pp + p)))))
                ls.push_back(c < pp ? Line::graph(static_cast<Residue>(c / p), static_cast<Residue>(c % p))
                                    : Line::vertical_at(static_cast<Residue>(c - pp)));
            const LineSet lines(p, ls);
            const auto tb = trivial_bound_check(pts, lines);
            out.rows.push_back({std::string("trivial"), std::uint64_t{p}, t, std::uint64_t{pts.size()}, std::uint64_t{lines.size()},
                                tb.count, tb.bound, std::monostate{}, std::monostate{}, ratio_of(static_cast<double>(tb.count), tb.bound), tb.pass});
            if (!tb.pass) out.fail(label + " trial " + std::to_string(t) + ": trivial incidence bound violated");

            // mean-zero point weights w - mean(w), arbitrary line weights
            std::vector<WeightedPoint> f;
            std::int64_t total = 0;
            std::vector<std::int64_t> w(pts.size());
            for (auto& v : w) total += v = rng.between(-3, 3);
            for (std::size_t i = 0; i < pts.size(); ++i)
                f.push_back({pts[i], Rational(w[i] * static_cast<std::int64_t>(pts.size()) - total, static_cast<std::int64_t>(pts.size()))});
            std::vector<WeightedLine> gw;
            for (const auto& l : lines.lines()) gw.push_back({l, Rational(rng.between(0, 3))});
            const auto vc = vinh_form_check(p, f, gw);
            out.rows.push_back({std::string("vinh"), std::uint64_t{p}, t, std::uint64_t{pts.size()}, std::uint64_t{lines.size()},
                                vc.lhs, vc.rhs, std::monostate{}, std::monostate{}, ratio_of(vc.lhs, vc.rhs), vc.pass});
            if (!vc.pass) out.fail(label + " trial " + std::to_string(t) + ": Vinh bound violated");

            const auto a = random_factor(rng, p, static_cast<std::uint64_t>(rng.between(1, p)));
            const auto b = random_factor(rng, p, static_cast<std::uint64_t>(rng.between(1, p)));
            const auto sr = sdz_report(p, a, b, lines);
            out.rows.push_back({std::string("sdz"), std::uint64_t{p}, t, sr.points, sr.objects, sr.incidences, sr.main_term,
                                sr.error, sr.bound, sr.ratio, std::monostate{}});
            out.ratios.push_back(sr.ratio);

            if (p <= 7) {
                const std::uint64_t ppp = pp * p, nplanes = p * (pp + p + 1);
                std::vector<Plane> planes;
                const auto np = static_cast<std::uint64_t>(rng.between(1, static_cast<std::int64_t>(nplanes)));
                const auto all_planes = PlaneSet::all(p);
                for (auto i : reservoir_sample(rng, nplanes, np)) planes.push_back(all_planes.planes()[i]);
                std::vector<Point3> p3;
                for (auto c : reservoir_sample(rng, ppp, static_cast<std::uint64_t>(rng.between(1, static_cast<std::int64_t>(std::min(np, ppp))))))
                    p3.push_back({static_cast<Residue>(c / pp), static_cast<Residue>(c / p % p), static_cast<Residue>(c % p)});
                const auto pr = point_plane_report(p3, PlaneSet(p, planes));
                out.rows.push_back({std::string("point_plane"), std::uint64_t{p}, t, pr.points, pr.objects, pr.incidences,
                                    pr.main_term, pr.error, pr.bound, pr.ratio, std::monostate{}});
                out.ratios.push_back(pr.ratio);
            }
        });
    }
    return rep;
}

ScenarioReport run_scenario(const ScenarioConfig& cfg) {
    std::string name = cfg.scenario;
    if (name.rfind("run_", 0) != 0) name = "run_" + name;
    if (name == "run_commutator_cover") return run_commutator_cover(cfg);
    if (name == "run_signed_cover") return run_signed_cover(cfg);
    if (name == "run_growth_bounds") return run_growth_bounds(cfg);
    if (name == "run_brick_energy") return run_brick_energy(cfg);
    if (name == "run_coset_cover") return run_coset_cover(cfg);
    if (name == "run_freiman_scenario" || name == "run_freiman") return run_freiman_scenario(cfg);
    if (name == "run_mixed_sums") return run_mixed_sums(cfg);
    if (name == "run_incidence") return run_incidence(cfg);
    if (name == "run_selftest") return run_selftest(cfg);
    throw ConfigError("unknown scenario '" + cfg.scenario + "'");
}

}  // namespace heislab
