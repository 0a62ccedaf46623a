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

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "autores/error.hpp"
#include "autores/numerics/periodic.hpp"
#include "autores/numerics/quadrature.hpp"

namespace autores::oscillator {

/**
 * Large-amplitude limit of the orbit: nu(rho) ~ nu0 rho^h and
 * X1(phi, rho) ~ rho X10(phi), X2(phi, rho) ~ rho^(h+1) X20(phi).
 */
struct LeadingOrbit {
    int h = 0;
    double nu0 = 0.0;
    double T0 = 0.0;
    numerics::PeriodicSamples X10;
    numerics::PeriodicSamples X20;
    /// Cosine Fourier coefficients of X10; index k multiplies cos(k phi).
    std::vector<double> fourier_cos;

    double dX10(double phi) const { return X20(phi) / nu0; }
    double d2X10(double phi) const { return -std::pow(X10(phi), 2 * h + 1) / (nu0 * nu0); }
};

/// T0 = (2h+2)^(1/(2h+2)) * integral over [-1, 1] of sqrt(2) / sqrt(1 - z^(2h+2)).
inline double leading_period(int h) {
    if (h < 0) {
        throw ValidationError("h must be nonnegative");
    }
    // 1 - z^(2h+2) = (1 - z^2) * sum_{j <= h} z^(2j)
    auto factor = [h](double z) {
        double s = 0.0;
        double p = 1.0;
        for (int j = 0; j <= h; ++j) {
            s += p;
            p *= z * z;
        }
        return std::sqrt(2.0 / s);
    };
    const double n = 2.0 * h + 2.0;
    return std::pow(n, 1.0 / n) * numerics::integrate_singular(factor, -1.0, 1.0);
}

/// Integrates nu0 X10' = X20, nu0 X20' = -X10^(2h+1) over phi in [0, 2 pi] with RK4.
inline LeadingOrbit leading_orbit(int h, std::size_t samples = 1024, std::size_t substeps = 8) {
    if (samples < 16 || substeps < 1) {
        throw ValidationError("leading orbit needs at least 16 samples");
    }
    LeadingOrbit out;
    out.h = h;
    out.T0 = leading_period(h);
    out.nu0 = 2.0 * std::numbers::pi / out.T0;
    const double n = 2.0 * h + 2.0;
    const double nu0 = out.nu0;
    auto f = [h, nu0](const std::array<double, 2>& y) {
        return std::array<double, 2>{y[1] / nu0, -std::pow(y[0], 2 * h + 1) / nu0};
    };
    std::vector<double> x1(samples), x2(samples);
    std::array<double, 2> y{std::pow(n, 1.0 / n), 0.0};
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(samples * substeps);
    for (std::size_t j = 0; j < samples; ++j) {
        x1[j] = y[0];
        x2[j] = y[1];
        for (std::size_t k = 0; k < substeps; ++k) {
            const auto k1 = f(y);
            const auto k2 = f({y[0] + 0.5 * dphi * k1[0], y[1] + 0.5 * dphi * k1[1]});
            const auto k3 = f({y[0] + 0.5 * dphi * k2[0], y[1] + 0.5 * dphi * k2[1]});
            const auto k4 = f({y[0] + dphi * k3[0], y[1] + dphi * k3[1]});
            y[0] += dphi / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
            y[1] += dphi / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        }
    }
    out.X10 = numerics::PeriodicSamples(std::move(x1));
    out.X20 = numerics::PeriodicSamples(std::move(x2));
    out.fourier_cos = out.X10.cos_coefficients();
    return out;
}

struct DuffingFourier {
    double q_closed;     ///< 2 nu0 sqrt(2) sech((2k - 1) pi / 2)
    double q_projected;  ///< 2 <X10(z) cos((2k - 1) z)>
    double qtilde;       ///< <X10(z)^2 cos(2k z)>
};

inline DuffingFourier duffing_fourier(const LeadingOrbit& leading, int k) {
    if (leading.h != 1) {
        throw ValidationError("Duffing Fourier data needs the h = 1 leading orbit");
    }
    if (k < 1) {
        throw ValidationError("Fourier index k must be positive");
    }
    const double odd = 2.0 * k - 1.0;
    DuffingFourier out{};
    out.q_closed = 2.0 * leading.nu0 * std::numbers::sqrt2 / std::cosh(odd * std::numbers::pi / 2.0);
    out.q_projected = 2.0 * numerics::periodic_average(
                                [&](double z) { return leading.X10(z) * std::cos(odd * z); }, 1);
    out.qtilde = numerics::periodic_average(
        [&](double z) {
            const double x = leading.X10(z);
            return x * x * std::cos(2.0 * k * z);
        },
        1);
    return out;
}

}  // namespace autores::oscillator
