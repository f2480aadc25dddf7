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
 * @file rep_fourier.hpp
 * @brief Explicit representations of H_1(F_p) and Aff(F_p) and the exact Fourier transform.
 *
 * H_1(F_p): p^2 characters [x,y,z] -> zeta_p^{ax+by} and p-1 representations of
 * dimension p, pi_c = sigma_c(pi) with pi([x,y,z]) = zeta^{z+y} D^y W^x.
 * Aff(F_p): p-1 characters (x,y) -> zeta_{p-1}^{j ind(x)} and one representation
 * pi((x,y)) = D^y W_1^{ind(x)} of dimension p-1.
 *
 * All representation values are monomial matrices; Fourier coefficients are dense
 * matrices over Z[zeta_m] and every identity is checked exactly.
 */

#include "heislab/cyclo.hpp"
#include "heislab/group.hpp"
#include "heislab/group_set.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace heislab {

/// Largest p for explicit matrix work.
inline constexpr std::uint32_t kMaxRepPrime = 31;

/// d x d matrix over Z[zeta_m].
class RepMatrix {
public:
    RepMatrix(std::uint32_t dim, std::uint32_t order);
    static RepMatrix identity(std::uint32_t dim, std::uint32_t order);

    std::uint32_t dim() const noexcept { return dim_; }
    std::uint32_t order() const noexcept { return order_; }
    const CycloElement& at(std::uint32_t i, std::uint32_t j) const { return entries_[i * dim_ + j]; }
    CycloElement& at(std::uint32_t i, std::uint32_t j) { return entries_[i * dim_ + j]; }

    bool is_zero() const noexcept;
    /// Conjugate transpose.
    RepMatrix adjoint() const;
    CycloElement trace() const;

    RepMatrix& operator+=(const RepMatrix& rhs);
    RepMatrix& operator-=(const RepMatrix& rhs);
    friend RepMatrix operator+(RepMatrix a, const RepMatrix& b) { return a += b; }
    friend RepMatrix operator-(RepMatrix a, const RepMatrix& b) { return a -= b; }
    friend RepMatrix operator*(const RepMatrix& a, const RepMatrix& b);
    friend RepMatrix operator*(const CycloElement& s, const RepMatrix& m);
    friend bool operator==(const RepMatrix&, const RepMatrix&) = default;

private:
    void require_same_shape(const RepMatrix& other) const;

    std::uint32_t dim_;
    std::uint32_t order_;
    std::vector<CycloElement> entries_;
};

/// Monomial matrix: row i has the single entry zeta_m^{exponent[i]} in column column[i].
struct Monomial {
    std::uint32_t order = 1;
    std::vector<std::uint32_t> column;
    std::vector<std::uint32_t> exponent;

    std::uint32_t dim() const noexcept { return static_cast<std::uint32_t>(column.size()); }
    static Monomial identity(std::uint32_t dim, std::uint32_t order);
    static Monomial diagonal(std::uint32_t order, std::vector<std::uint32_t> exponents);
    Monomial scaled(std::int64_t zeta_exponent) const;
    Monomial power(std::uint64_t e) const;
    /// Inverse = conjugate transpose.
    Monomial inverse() const;
    RepMatrix dense() const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Shift pattern of W_a: standard is e_i -> e_{i-1}, e_0 -> a e_{d-1} (row i holds column i+1);
/// transpose is the reverse direction.
enum class ShiftPattern { standard, transpose };

struct WConvention {
    ShiftPattern pattern = ShiftPattern::standard;
    /// Wrap-around weight a = zeta^{weight_exponent} (0 gives W_1).
    std::uint32_t weight_exponent = 0;
    friend bool operator==(const WConvention&, const WConvention&) = default;
};

/// W_a of size d over Z[zeta_m].
Monomial shift_matrix(std::uint32_t dim, std::uint32_t order, const WConvention& convention);

struct WCandidateResult {
    WConvention convention;
    bool commutation_identity = false;
    bool homomorphism = false;
};

struct WSelfTest {
    std::vector<WCandidateResult> heisenberg;  // tried in order; first passing both is chosen
    std::vector<WCandidateResult> affine;
    WConvention heisenberg_choice;
    WConvention affine_choice;
};

/// Runs once per process; decides the W convention used by pi_heisenberg and pi_affine.
const WSelfTest& w_convention_selftest();
/// Evaluates one candidate at a prime: id:commutation for all parameter pairs, homomorphism on all pairs.
WCandidateResult check_heisenberg_convention(std::uint32_t p, const WConvention& convention);
WCandidateResult check_affine_convention(std::uint32_t p, const WConvention& convention);

/// Leading phase zeta^{z+y} (default) or zeta^z.
enum class PhaseConvention { central_and_y, central_only };

/// pi_c([x,y,z]) for H_1(F_p); c in [1, p).
Monomial pi_heisenberg_monomial(const Group& g, const HElement& h, std::uint32_t c = 1,
                                PhaseConvention phase = PhaseConvention::central_and_y);
RepMatrix pi_heisenberg(const Group& g, const HElement& h, std::uint32_t c = 1,
                        PhaseConvention phase = PhaseConvention::central_and_y);
/// pi((x,y)) for Aff(F_p).
Monomial pi_affine_monomial(const Group& g, const AffElement& a);
RepMatrix pi_affine(const Group& g, const AffElement& a);

enum class IrrepKind { character, standard };

/// One irreducible representation. Characters of H_1 use (a, b); of Aff use j in param[0].
/// Standard representations of H_1 use the Galois index c in param[0].
struct Irrep {
    IrrepKind kind = IrrepKind::character;
    std::uint32_t dim = 1;
    std::uint32_t order = 1;
    std::uint32_t param[2] = {0, 0};
    std::string label() const;
};

/// Complete list of irreducibles; sum of dim^2 equals |G|.
std::vector<Irrep> irreducibles(const Group& g);
Monomial evaluate(const Group& g, const Irrep& rho, ElementCode code);

/// Integer-valued function on a group, indexed by element code.
struct GroupFunction {
    Group group;
    std::vector<std::int64_t> values;

    explicit GroupFunction(Group g);
    static GroupFunction indicator(const GroupSet& s);
    static GroupFunction delta(const Group& g, ElementCode c);
    std::int64_t operator()(ElementCode c) const { return values.at(c.index); }
    friend bool operator==(const GroupFunction& a, const GroupFunction& b) {
        return a.group == b.group && a.values == b.values;
    }
};

struct SpectrumEntry {
    Irrep irrep;
    RepMatrix value;
};

struct SpectrumBundle {
    Group group;
    std::vector<SpectrumEntry> entries;
};

/// Throws std::invalid_argument unless the group is H_1 or Aff with p <= kMaxRepPrime.
void require_fourier_group(const Group& g);

/// F f(pi) = sum_g f(g) pi(g) for every irreducible pi.
SpectrumBundle fourier_transform(const GroupFunction& f);
/// f(g) = (1/|G|) sum_pi d_pi tr(pi(g^{-1}) F f(pi)). Throws std::domain_error if the
/// bundle does not reconstruct an integer-valued function.
GroupFunction fourier_invert(const SpectrumBundle& bundle);
/// Heisenberg only: p^2 f(g) = p delta_f(x,y) + sum_c tr(pi_c(g^{-1}) F f(pi_c)) for all g.
bool validate_split_form(const GroupFunction& f, const SpectrumBundle& bundle);

/// (f*g)(x) = sum_y f(y) g(y^{-1} x)
GroupFunction convolve(const GroupFunction& f, const GroupFunction& g);

/// |G| sum f^2 - sum_pi d_pi ||F f(pi)||_HS^2; zero on valid input.
std::int64_t parseval_residual(const GroupFunction& f);
/// Same residual against a supplied bundle (used for fault injection).
std::int64_t parseval_residual(const GroupFunction& f, const SpectrumBundle& bundle);

/// sum_{ij} |m_ij|^2, exact.
CycloElement hs_norm_sq(const RepMatrix& m);
/// hs_norm_sq as a rational integer; throws std::domain_error if it is not one.
std::int64_t hs_norm_sq_integer(const RepMatrix& m);
/// Largest singular value of the complex embedding.
double op_norm(const RepMatrix& m);

/// E(A,A) = (1/|G|) sum_pi d_pi ||F A(pi) F A(pi)^*||_HS^2.
std::uint64_t group_energy_via_fourier(const GroupSet& a);

}  // namespace heislab
