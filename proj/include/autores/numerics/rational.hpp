/*
   Copyright 2026 The autores Authors

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

#include <cmath>
#include <cstdint>
#include <string>

#include <boost/rational.hpp>

#include "autores/error.hpp"

namespace autores::numerics {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Closest fraction with denominator <= 10^6 that reproduces x to 1e-12.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) {
        throw ValidationError("exponent must be finite");
    }
    // Continued-fraction convergents.
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double rest = x;
    for (int i = 0; i < 64; ++i) {
        const double a = std::floor(rest);
        if (std::abs(a) > 1e12) {
            break;
        }
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t h2 = ai * h1 + h0;
        const std::int64_t k2 = ai * k1 + k0;
        if (k2 > 1'000'000) {
            break;
        }
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= 1e-12) {
            return Rational(h1, k1);
        }
        const double frac = rest - a;
        if (frac == 0.0) {
            break;
        }
        rest = 1.0 / frac;
    }
    throw ValidationError("exponent " + std::to_string(x) +
                          " is not a simple rational; pass it as \"p/q\"");
}

/// Accepts "p/q", an integer, or a decimal that is a simple fraction.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) {
                throw ValidationError("trailing characters in exponent '" + text + "'");
            }
            return rational_from_double(v);
        }
        std::size_t used_n = 0, used_d = 0;
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        const auto n = std::stoll(num, &used_n);
        const auto d = std::stoll(den, &used_d);
        if (used_n != num.size() || used_d != den.size() || d == 0) {
            throw ValidationError("malformed fraction '" + text + "'");
        }
        return Rational(n, d);
    } catch (const std::logic_error&) {
        throw ValidationError("malformed exponent '" + text + "'");
    }
}

}  // namespace autores::numerics
