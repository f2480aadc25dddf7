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

#include "heislab/rep_fourier.hpp"

#include <Eigen/Dense>

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace heislab {

namespace {

std::uint32_t mod_exp(std::int64_t k, std::uint32_t m) {
    const std::int64_t r = k % static_cast<std::int64_t>(m);
    return static_cast<std::uint32_t>(r < 0 ? r + m : r);
}

Monomial diagonal_power(std::uint32_t order, const std::vector<std::uint32_t>& base, std::uint64_t e) {
    std::vector<std::uint32_t> exps(base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        exps[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(base[i]) * (e % order)) % order);
    return Monomial::diagonal(order, std::move(exps));
}

/// D = diag(1, zeta, ..., zeta^{p-1})
std::vector<std::uint32_t> heisenberg_d(std::uint32_t p) {
    std::vector<std::uint32_t> d(p);
    for (std::uint32_t i = 0; i < p; ++i) d[i] = i;
    return d;
}

/// D = diag(zeta^{w^0}, ..., zeta^{w^{p-2}})
std::vector<std::uint32_t> affine_d(const PrimeField& f) {
    std::vector<std::uint32_t> d(f.p() - 1);
    for (std::uint32_t i = 0; i + 1 < f.p(); ++i) d[i] = f.exp(i);
    return d;
}

Monomial heisenberg_with(const Group& g, const HElement& h, std::uint32_t c, PhaseConvention phase,
                         const WConvention& conv) {
    const std::uint32_t p = g.p();
    const std::int64_t lead = phase == PhaseConvention::central_and_y ? std::int64_t{h.z} + h.y[0] : std::int64_t{h.z};
    Monomial m = (diagonal_power(p, heisenberg_d(p), h.y[0]) * shift_matrix(p, p, conv).power(h.x[0])).scaled(lead);
    if (c != 1)
        for (auto& e : m.exponent) e = static_cast<std::uint32_t>((static_cast<std::uint64_t>(e) * c) % p);
    return m;
}

Monomial affine_with(const Group& g, const AffElement& a, const WConvention& conv) {
    const PrimeField& f = g.field();
    return diagonal_power(f.p(), affine_d(f), a.b) * shift_matrix(f.p() - 1, f.p(), conv).power(f.ind(a.a));
}

void require_rep_prime(std::uint32_t p) {
    if (p > kMaxRepPrime)
        throw std::invalid_argument("explicit representations are limited to p <= " + std::to_string(kMaxRepPrime));
}

std::int64_t require_integer(const CycloElement& v, const char* what) {
    auto i = v.to_integer();
    if (!i) throw std::domain_error(std::string(what) + " is not a rational integer");
    return *i;
}

}  // namespace

// ---- RepMatrix

RepMatrix::RepMatrix(std::uint32_t dim, std::uint32_t order)
    : dim_(dim), order_(order), entries_(static_cast<std::size_t>(dim) * dim, CycloElement(order)) {}

RepMatrix RepMatrix::identity(std::uint32_t dim, std::uint32_t order) {
    RepMatrix m(dim, order);
    for (std::uint32_t i = 0; i < dim; ++i) m.at(i, i) = CycloElement::integer(order, 1);
    return m;
}

bool RepMatrix::is_zero() const noexcept {
    for (const auto& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

RepMatrix RepMatrix::adjoint() const {
    RepMatrix out(dim_, order_);
    for (std::uint32_t i = 0; i < dim_; ++i)
        for (std::uint32_t j = 0; j < dim_; ++j) out.at(j, i) = at(i, j).conjugate();
    return out;
}

CycloElement RepMatrix::trace() const {
    CycloElement t(order_);
    for (std::uint32_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

void RepMatrix::require_same_shape(const RepMatrix& other) const {
    if (dim_ != other.dim_ || order_ != other.order_) throw std::invalid_argument("matrix shape or ring mismatch");
}

RepMatrix& RepMatrix::operator+=(const RepMatrix& rhs) {
    require_same_shape(rhs);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
    return *this;
}

RepMatrix& RepMatrix::operator-=(const RepMatrix& rhs) {
    require_same_shape(rhs);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
    return *this;
}

RepMatrix operator*(const RepMatrix& a, const RepMatrix& b) {
    a.require_same_shape(b);
    const std::uint32_t d = a.dim_;
    RepMatrix out(d, a.order_);
    for (std::uint32_t i = 0; i < d; ++i)
        for (std::uint32_t k = 0; k < d; ++k) {
            const CycloElement& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::uint32_t j = 0; j < d; ++j)
                if (!b.at(k, j).is_zero()) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

RepMatrix operator*(const CycloElement& s, const RepMatrix& m) {
    RepMatrix out(m.dim_, m.order_);
    for (std::size_t k = 0; k < m.entries_.size(); ++k) out.entries_[k] = s * m.entries_[k];
    return out;
}

// ---- Monomial

Monomial Monomial::identity(std::uint32_t dim, std::uint32_t order) {
    Monomial m;
    m.order = order;
    m.column.resize(dim);
    m.exponent.assign(dim, 0);
    for (std::uint32_t i = 0; i < dim; ++i) m.column[i] = i;
    return m;
}

Monomial Monomial::diagonal(std::uint32_t order, std::vector<std::uint32_t> exponents) {
    Monomial m = identity(static_cast<std::uint32_t>(exponents.size()), order);
    for (auto& e : exponents) e %= order;
    m.exponent = std::move(exponents);
    return m;
}

Monomial Monomial::scaled(std::int64_t zeta_exponent) const {
    Monomial m = *this;
    const std::uint32_t s = mod_exp(zeta_exponent, order);
    for (auto& e : m.exponent) e = (e + s) % order;
    return m;
}

Monomial Monomial::power(std::uint64_t e) const {
    Monomial result = identity(dim(), order);
    Monomial base = *this;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

Monomial Monomial::inverse() const {
    Monomial m = identity(dim(), order);
    for (std::uint32_t i = 0; i < dim(); ++i) {
        m.column[column[i]] = i;
        m.exponent[column[i]] = (order - exponent[i]) % order;
    }
    return m;
}

RepMatrix Monomial::dense() const {
    RepMatrix m(dim(), order);
    for (std::uint32_t i = 0; i < dim(); ++i) m.at(i, column[i]) = CycloElement::zeta_power(order, exponent[i]);
    return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.dim() != b.dim() || a.order != b.order) throw std::invalid_argument("monomial shape or ring mismatch");
    Monomial m = Monomial::identity(a.dim(), a.order);
    for (std::uint32_t i = 0; i < a.dim(); ++i) {
        const std::uint32_t k = a.column[i];
        m.column[i] = b.column[k];
        m.exponent[i] = (a.exponent[i] + b.exponent[k]) % a.order;
    }
    return m;
}

// ---- W convention

Monomial shift_matrix(std::uint32_t dim, std::uint32_t order, const WConvention& convention) {
    Monomial w = Monomial::identity(dim, order);
    const std::uint32_t wrap = convention.weight_exponent % order;
    for (std::uint32_t i = 0; i < dim; ++i) {
        if (convention.pattern == ShiftPattern::standard) {
            w.column[i] = (i + 1) % dim;
            w.exponent[i] = i + 1 == dim ? wrap : 0;
        } else {
            w.column[i] = (i + dim - 1) % dim;
            w.exponent[i] = i == 0 ? wrap : 0;
        }
    }
    return w;
}

WCandidateResult check_heisenberg_convention(std::uint32_t p, const WConvention& convention) {
    WCandidateResult r{convention, true, true};
    const Monomial w = shift_matrix(p, p, convention);
    const auto d = heisenberg_d(p);
    // zeta^{x y'} D^{y'} W^x = W^x D^{y'}
    for (std::uint32_t x = 0; x < p && r.commutation_identity; ++x)
        for (std::uint32_t yp = 0; yp < p; ++yp) {
            const Monomial dy = diagonal_power(p, d, yp);
            const Monomial wx = w.power(x);
            if ((dy * wx).scaled(static_cast<std::int64_t>(x) * yp) != wx * dy) {
                r.commutation_identity = false;
                break;
            }
        }
    const Group g = Group::heisenberg(p, 1);
    std::vector<Monomial> pis;
    pis.reserve(g.order());
    for (std::uint64_t c = 0; c < g.order(); ++c)
        pis.push_back(heisenberg_with(g, g.decode_heisenberg({c}), 1, PhaseConvention::central_and_y, convention));
    for (std::uint64_t a = 0; a < g.order() && r.homomorphism; ++a)
        for (std::uint64_t b = 0; b < g.order(); ++b)
            if (pis[a] * pis[b] != pis[g.mul({a}, {b}).index]) {
                r.homomorphism = false;
                break;
            }
    return r;
}

WCandidateResult check_affine_convention(std::uint32_t p, const WConvention& convention) {
    WCandidateResult r{convention, true, true};
    const PrimeField f(p);
    const Monomial w = shift_matrix(p - 1, p, convention);
    const auto d = affine_d(f);
    // W^{ind a} D^d = D^{a d} W^{ind a}
    for (Residue a = 1; a < p && r.commutation_identity; ++a)
        for (Residue dd = 0; dd < p; ++dd) {
            const Monomial wa = w.power(f.ind(a));
            if (wa * diagonal_power(p, d, dd) != diagonal_power(p, d, f.mul(a, dd)) * wa) {
                r.commutation_identity = false;
                break;
            }
        }
    const Group g = Group::affine(p);
    std::vector<Monomial> pis;
    for (std::uint64_t c = 0; c < g.order(); ++c) pis.push_back(affine_with(g, g.decode_affine({c}), convention));
    for (std::uint64_t a = 0; a < g.order() && r.homomorphism; ++a)
        for (std::uint64_t b = 0; b < g.order(); ++b)
            if (pis[a] * pis[b] != pis[g.mul({a}, {b}).index]) {
                r.homomorphism = false;
                break;
            }
    return r;
}

const WSelfTest& w_convention_selftest() {
    static WSelfTest result;
    static std::once_flag once;
    std::call_once(once, [] {
        const WConvention candidates[] = {
            {ShiftPattern::standard, 1},
            {ShiftPattern::transpose, 1},
            {ShiftPattern::standard, 0},
            {ShiftPattern::transpose, 0},
        };
        bool h_found = false, a_found = false;
        for (const auto& c : candidates) {
            WCandidateResult h = check_heisenberg_convention(3, c);
            if (h.commutation_identity && h.homomorphism) {
                const WCandidateResult h5 = check_heisenberg_convention(5, c);
                h.commutation_identity = h5.commutation_identity;
                h.homomorphism = h5.homomorphism;
            }
            result.heisenberg.push_back(h);
            if (!h_found && h.commutation_identity && h.homomorphism) {
                result.heisenberg_choice = c;
                h_found = true;
            }
            // Aff uses W_1, so only the pattern is in question
            if (c.weight_exponent != 0) continue;
            WCandidateResult a = check_affine_convention(5, c);
            if (a.commutation_identity && a.homomorphism) {
                const WCandidateResult a7 = check_affine_convention(7, c);
                a.commutation_identity = a7.commutation_identity;
                a.homomorphism = a7.homomorphism;
            }
            result.affine.push_back(a);
            if (!a_found && a.commutation_identity && a.homomorphism) {
                result.affine_choice = c;
                a_found = true;
            }
        }
        if (!h_found || !a_found) throw std::logic_error("no W convention satisfies the representation identities");
    });
    return result;
}

// ---- explicit representations

Monomial pi_heisenberg_monomial(const Group& g, const HElement& h, std::uint32_t c, PhaseConvention phase) {
    if (g.kind() != GroupKind::heisenberg || g.n() != 1)
        throw std::invalid_argument("explicit pi is available for H_1 only");
    require_rep_prime(g.p());
    g.check(h);
    if (c == 0 || c >= g.p()) throw std::invalid_argument("Galois index must lie in [1, p)");
    return heisenberg_with(g, h, c, phase, w_convention_selftest().heisenberg_choice);
}

RepMatrix pi_heisenberg(const Group& g, const HElement& h, std::uint32_t c, PhaseConvention phase) {
    return pi_heisenberg_monomial(g, h, c, phase).dense();
}

Monomial pi_affine_monomial(const Group& g, const AffElement& a) {
    if (g.kind() != GroupKind::affine) throw std::invalid_argument("pi_affine needs Aff(F_p)");
    require_rep_prime(g.p());
    g.check(a);
    return affine_with(g, a, w_convention_selftest().affine_choice);
}

RepMatrix pi_affine(const Group& g, const AffElement& a) { return pi_affine_monomial(g, a).dense(); }

std::string Irrep::label() const {
    if (kind == IrrepKind::standard) return "pi_" + std::to_string(param[0]);
    return "chi_" + std::to_string(param[0]) + "_" + std::to_string(param[1]);
}

void require_fourier_group(const Group& g) {
    if (!((g.kind() == GroupKind::heisenberg && g.n() == 1) || g.kind() == GroupKind::affine))
        throw std::invalid_argument("Fourier analysis is implemented for H_1(F_p) and Aff(F_p)");
    require_rep_prime(g.p());
}

std::vector<Irrep> irreducibles(const Group& g) {
    require_fourier_group(g);
    const std::uint32_t p = g.p();
    std::vector<Irrep> out;
    if (g.kind() == GroupKind::heisenberg) {
        for (std::uint32_t a = 0; a < p; ++a)
            for (std::uint32_t b = 0; b < p; ++b) out.push_back({IrrepKind::character, 1, p, {a, b}});
        for (std::uint32_t c = 1; c < p; ++c) out.push_back({IrrepKind::standard, p, p, {c, 0}});
    } else {
        for (std::uint32_t j = 0; j + 1 < p; ++j) out.push_back({IrrepKind::character, 1, p - 1, {j, 0}});
        out.push_back({IrrepKind::standard, p - 1, p, {1, 0}});
    }
    return out;
}

Monomial evaluate(const Group& g, const Irrep& rho, ElementCode code) {
    g.check(code);
    if (g.kind() == GroupKind::heisenberg) {
        const HElement h = g.decode_heisenberg(code);
        if (rho.kind == IrrepKind::standard) return pi_heisenberg_monomial(g, h, rho.param[0]);
        const std::uint64_t e = static_cast<std::uint64_t>(rho.param[0]) * h.x[0] + static_cast<std::uint64_t>(rho.param[1]) * h.y[0];
        return Monomial::diagonal(rho.order, {static_cast<std::uint32_t>(e % rho.order)});
    }
    const AffElement a = g.decode_affine(code);
    if (rho.kind == IrrepKind::standard) return pi_affine_monomial(g, a);
    const std::uint64_t e = static_cast<std::uint64_t>(rho.param[0]) * g.field().ind(a.a);
    return Monomial::diagonal(rho.order, {static_cast<std::uint32_t>(e % rho.order)});
}

// ---- functions and transforms

GroupFunction::GroupFunction(Group g) : group(std::move(g)) {
    if (group.order() > kEnumerationLimit) throw std::invalid_argument("group too large for a dense function");
    values.assign(group.order(), 0);
}

GroupFunction GroupFunction::indicator(const GroupSet& s) {
    GroupFunction f(s.group());
    for (auto c : s.codes()) f.values[c.index] = 1;
    return f;
}

GroupFunction GroupFunction::delta(const Group& g, ElementCode c) {
    g.check(c);
    GroupFunction f(g);
    f.values[c.index] = 1;
    return f;
}

SpectrumBundle fourier_transform(const GroupFunction& f) {
    const Group& g = f.group;
    require_fourier_group(g);
    SpectrumBundle bundle{g, {}};
    for (const Irrep& rho : irreducibles(g)) {
        const std::uint32_t d = rho.dim, m = rho.order;
        std::vector<std::int64_t> acc(static_cast<std::size_t>(d) * d * m, 0);
        for (std::uint64_t c = 0; c < g.order(); ++c) {
            const std::int64_t w = f.values[c];
            if (w == 0) continue;
            const Monomial mono = evaluate(g, rho, {c});
            for (std::uint32_t i = 0; i < d; ++i) {
                auto& slot = acc[(static_cast<std::size_t>(i) * d + mono.column[i]) * m + mono.exponent[i]];
                slot = checked::add(slot, w);
            }
        }
        RepMatrix value(d, m);
        for (std::uint32_t i = 0; i < d; ++i)
            for (std::uint32_t j = 0; j < d; ++j)
                value.at(i, j) = CycloElement::from_powers(
                    m, std::span<const std::int64_t>(acc.data() + (static_cast<std::size_t>(i) * d + j) * m, m));
        bundle.entries.push_back({rho, std::move(value)});
    }
    return bundle;
}

namespace {

/// sum_pi d_pi tr(pi(h) F(pi)) (unweighted for the standard-only sum), grouped by coefficient ring and converted to an integer.
std::int64_t weighted_trace_sum(const SpectrumBundle& bundle, ElementCode h, bool only_standard = false) {
    std::map<std::uint32_t, CycloElement> by_ring;
    for (const auto& [rho, value] : bundle.entries) {
        if (only_standard && rho.kind != IrrepKind::standard) continue;
        const Monomial mono = evaluate(bundle.group, rho, h);
        auto it = by_ring.try_emplace(rho.order, CycloElement(rho.order)).first;
        CycloElement t(rho.order);
        for (std::uint32_t i = 0; i < rho.dim; ++i)
            t += value.at(mono.column[i], i).times_zeta_power(mono.exponent[i]);
        it->second += only_standard ? t : t * static_cast<std::int64_t>(rho.dim);
    }
    std::int64_t total = 0;
    for (const auto& [m, v] : by_ring) total = checked::add(total, require_integer(v, "reconstructed value"));
    return total;
}

}  // namespace

GroupFunction fourier_invert(const SpectrumBundle& bundle) {
    const Group& g = bundle.group;
    require_fourier_group(g);
    if (bundle.entries.size() != irreducibles(g).size()) throw std::invalid_argument("incomplete spectrum bundle");
    GroupFunction f(g);
    const auto order = static_cast<std::int64_t>(g.order());
    for (std::uint64_t c = 0; c < g.order(); ++c) {
        const std::int64_t s = weighted_trace_sum(bundle, g.inverse({c}));
        if (s % order != 0) throw std::domain_error("bundle does not reconstruct an integer-valued function");
        f.values[c] = s / order;
    }
    return f;
}

bool validate_split_form(const GroupFunction& f, const SpectrumBundle& bundle) {
    const Group& g = f.group;
    if (g.kind() != GroupKind::heisenberg) throw std::invalid_argument("split form applies to H_1");
    require_fourier_group(g);
    const std::int64_t p = g.p();
    std::vector<std::int64_t> delta(g.order() / g.p(), 0);
    for (std::uint64_t c = 0; c < g.order(); ++c) delta[c / g.p()] = checked::add(delta[c / g.p()], f.values[c]);
    for (std::uint64_t c = 0; c < g.order(); ++c) {
        const std::int64_t lhs = checked::mul(p * p, f.values[c]);
        const std::int64_t rhs = checked::add(checked::mul(p, delta[c / g.p()]), weighted_trace_sum(bundle, g.inverse({c}), true));
        if (lhs != rhs) return false;
    }
    return true;
}

GroupFunction convolve(const GroupFunction& f, const GroupFunction& h) {
    f.group.require_same(h.group);
    const Group& g = f.group;
    GroupFunction out(g);
    for (std::uint64_t y = 0; y < g.order(); ++y) {
        if (f.values[y] == 0) continue;
        for (std::uint64_t z = 0; z < g.order(); ++z) {
            if (h.values[z] == 0) continue;
            auto& slot = out.values[g.mul({y}, {z}).index];
            slot = checked::add(slot, checked::mul(f.values[y], h.values[z]));
        }
    }
    return out;
}

CycloElement hs_norm_sq(const RepMatrix& m) {
    CycloElement total(m.order());
    for (std::uint32_t i = 0; i < m.dim(); ++i)
        for (std::uint32_t j = 0; j < m.dim(); ++j)
            if (!m.at(i, j).is_zero()) total += cyclo_conj_normsq(m.at(i, j));
    return total;
}

std::int64_t hs_norm_sq_integer(const RepMatrix& m) { return require_integer(hs_norm_sq(m), "HS norm"); }

double op_norm(const RepMatrix& m) {
    Eigen::MatrixXcd z(m.dim(), m.dim());
    for (std::uint32_t i = 0; i < m.dim(); ++i)
        for (std::uint32_t j = 0; j < m.dim(); ++j) z(i, j) = m.at(i, j).to_complex();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(z);
    return svd.singularValues()(0);
}

namespace {

std::int64_t spectral_mass(const SpectrumBundle& bundle, bool square_first) {
    std::map<std::uint32_t, CycloElement> by_ring;
    for (const auto& [rho, value] : bundle.entries) {
        const RepMatrix& m = value;
        CycloElement h = square_first ? hs_norm_sq(m * m.adjoint()) : hs_norm_sq(m);
        auto it = by_ring.try_emplace(rho.order, CycloElement(rho.order)).first;
        it->second += h * static_cast<std::int64_t>(rho.dim);
    }
    std::int64_t total = 0;
    for (const auto& [m, v] : by_ring) total = checked::add(total, require_integer(v, "spectral sum"));
    return total;
}

}  // namespace

std::int64_t parseval_residual(const GroupFunction& f, const SpectrumBundle& bundle) {
    f.group.require_same(bundle.group);
    std::int64_t l2 = 0;
    for (auto v : f.values) l2 = checked::add(l2, checked::mul(v, v));
    return checked::sub(checked::mul(static_cast<std::int64_t>(f.group.order()), l2), spectral_mass(bundle, false));
}

std::int64_t parseval_residual(const GroupFunction& f) { return parseval_residual(f, fourier_transform(f)); }

std::uint64_t group_energy_via_fourier(const GroupSet& a) {
    const SpectrumBundle bundle = fourier_transform(GroupFunction::indicator(a));
    const std::int64_t mass = spectral_mass(bundle, true);
    const auto order = static_cast<std::int64_t>(a.group().order());
    if (mass < 0 || mass % order != 0) throw std::logic_error("Fourier-side energy is not an integer");
    return static_cast<std::uint64_t>(mass / order);
}

}  // namespace heislab
