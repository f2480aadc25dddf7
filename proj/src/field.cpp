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

#include "heislab/field.hpp"

#include <stdexcept>
#include <string>

namespace heislab {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = r * a % m;
        a = a * a % m;
        e >>= 1;
    }
    return r;
}

void require_odd_prime(std::uint32_t p) {
    if (p < 3 || !is_prime(p))
        throw std::invalid_argument("modulus must be an odd prime, got " + std::to_string(p));
    if (p >= kMaxFieldPrime)
        throw std::invalid_argument("modulus too large: " + std::to_string(p));
}

}  // namespace

std::uint64_t multiplicative_order(Residue a, std::uint32_t p) {
    require_odd_prime(p);
    a %= p;
    if (a == 0) throw std::domain_error("zero has no multiplicative order");
    std::uint64_t order = p - 1;
    for (std::uint64_t q : prime_factors(p - 1))
        while (order % q == 0 && pow_mod(a, order / q, p) == 1) order /= q;
    return order;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p), root_(0) {
    require_odd_prime(p);
    const auto factors = prime_factors(p - 1);
    for (Residue g = 2; g < p; ++g) {
        bool generator = true;
        for (std::uint64_t q : factors) {
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                generator = false;
                break;
            }
        }
        if (generator) {
            root_ = g;
            break;
        }
    }
    exp_.resize(p - 1);
    log_.assign(p, 0);
    Residue acc = 1;
    for (std::uint32_t k = 0; k + 1 < p; ++k) {
        exp_[k] = acc;
        log_[acc] = k;
        acc = mul(acc, root_);
    }
}

Residue PrimeField::inv(Residue a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero in F_p");
    return exp_[(p_ - 1 - log_[a % p_]) % (p_ - 1)];
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
    return static_cast<Residue>(pow_mod(a, e, p_));
}

std::uint32_t PrimeField::ind(Residue x) const {
    if (x % p_ == 0) throw std::domain_error("ind(0) is undefined");
    return log_[x % p_];
}

FpScalar primitive_root(std::uint32_t p) {
    PrimeField f(p);
    return FpScalar{f.primitive_root(), p};
}

std::uint32_t ind(FpScalar x) {
    PrimeField f(x.modulus);
    if (x.value >= x.modulus) throw std::invalid_argument("residue out of range");
    return f.ind(x.value);
}

}  // namespace heislab
