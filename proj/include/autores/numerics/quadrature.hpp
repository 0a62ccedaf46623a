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
#include <cstddef>
#include <numbers>
#include <string>

#include "autores/error.hpp"

namespace autores::numerics {

struct QuadratureSpec {
    enum class Kind { endpoint_singular, periodic_trapezoid };

    std::size_t node_count = 256;
    Kind kind = Kind::endpoint_singular;

    static constexpr QuadratureSpec singular(std::size_t nodes = 256) {
        return {nodes, Kind::endpoint_singular};
    }
    static constexpr QuadratureSpec periodic(std::size_t nodes = 512) {
        return {nodes, Kind::periodic_trapezoid};
    }

    void validate() const {
        if (node_count < 16) {
            throw ValidationError("quadrature needs at least 16 nodes, got " +
                                  std::to_string(node_count));
        }
        if (kind == Kind::periodic_trapezoid && node_count % 2 != 0) {
            throw ValidationError("periodic trapezoid rule needs an even node count");
        }
    }
};

/**
 * Integral of smooth_factor(x) / sqrt((x - a)(b - x)) over [a, b].
 *
 * With x = ((a + b) + (b - a) sin u) / 2 the weight cancels against dx and the
 * integrand becomes smooth_factor(x(u)) on [-pi/2, pi/2]. That function has an
 * even, smooth 2pi-periodic extension, so the midpoint rule in u (equivalently
 * Gauss-Chebyshev of the first kind) converges spectrally for analytic factors.
 */
template <class F>
double integrate_singular(F&& smooth_factor, double a, double b,
                          const QuadratureSpec& spec = QuadratureSpec::singular()) {
    spec.validate();
    if (!(a < b)) {
        throw ValidationError("integrate_singular requires a < b");
    }
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const auto n = spec.node_count;
    const double h = std::numbers::pi / static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double u = -0.5 * std::numbers::pi + (static_cast<double>(k) + 0.5) * h;
        const double x = mid + half * std::sin(u);
        const double v = smooth_factor(x);
        if (!std::isfinite(v)) {
            throw EvaluationError("non-finite integrand factor", x);
        }
        sum += v;
    }
    return sum * h;
}

/**
 * Mean of a 2pi*kappa-periodic function over one period.
 *
 * Uses node_count * kappa equispaced trapezoid nodes, which integrates every
 * harmonic exp(i j zeta / kappa) with |j| < node_count * kappa exactly.
 */
template <class F>
double periodic_average(F&& f, int kappa,
                        const QuadratureSpec& spec = QuadratureSpec::periodic()) {
    spec.validate();
    if (kappa < 1) {
        throw ValidationError("periodic_average requires kappa >= 1");
    }
    const std::size_t n = spec.node_count * static_cast<std::size_t>(kappa);
    const double period = 2.0 * std::numbers::pi * kappa;
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double zeta = period * static_cast<double>(k) / static_cast<double>(n);
        const double v = f(zeta);
        if (!std::isfinite(v)) {
            throw EvaluationError("non-finite periodic integrand", zeta);
        }
        sum += v;
    }
    return sum / static_cast<double>(n);
}

}  // namespace autores::numerics
