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

#include "heislab/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace heislab {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = g ? num / g : 0;
    den_ = g ? den / g : 1;
}

namespace {

std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    return v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos)
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.size() > 15) throw std::invalid_argument("too many decimal digits");
        const bool negative = !whole.empty() && whole.front() == '-';
        if (negative) whole.remove_prefix(1);
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
        const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
        const std::int64_t num = w * scale + f;
        return Rational(negative ? -num : num, scale);
    }
    return Rational(parse_int(text), 1);
}

std::string Rational::to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace heislab
