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
#include <cstdint>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>

#include "autores/numerics/random.hpp"
#include "autores/simulate/sde.hpp"

namespace autores::testing {

/// Duffing leading period 4^(1/4) sqrt(2) * int_{-1}^{1} dz / sqrt(1 - z^4), by tanh-sinh.
inline double singular_T0() {
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double I = integrator.integrate(
        [](double z, double zc) {
            // |zc| is the exact distance to the nearer endpoint; 1 - z^4 = d (2 - d) (1 + z^2).
            const double d = std::abs(zc);
            return 1.0 / std::sqrt(d * (2.0 - d) * (1.0 + z * z));
        },
        -1.0, 1.0);
    return std::pow(4.0, 0.25) * std::sqrt(2.0) * I;
}

/// Cosine projection (1/2pi) int x^power cos(harmonic z) dz of the Duffing
/// leading orbit x = sqrt(2) cn(T0 z / (pi sqrt 2); 1/sqrt 2).
inline double cn_projection(int harmonic, int power) {
    constexpr double pi = std::numbers::pi;
    const double k = 1.0 / std::sqrt(2.0);
    const double T0 = singular_T0();
    const int n = 4096;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const double z = 2 * pi * j / n;
        const double x = std::sqrt(2.0) * boost::math::jacobi_cn(k, T0 * z / (pi * std::sqrt(2.0)));
        sum += std::pow(x, power) * std::cos(harmonic * z);
    }
    return sum / n;
}

struct StrongOrder {
    std::vector<double> dts;
    std::vector<double> errors;  ///< E|X_dt(T) - X(T)|
    double slope = 0.0;          ///< least-squares slope of log error against log dt
};

/**
 * Strong error of the stepper on dX = a X dt + b X dW, X(0) = 1, at T = 1.
 * The exact value exp((a - b^2/2) T + b W(T)) uses the same Brownian path:
 * increments are drawn on the finest grid and summed for the coarser ones.
 */
inline StrongOrder linear_strong_order(std::size_t paths, std::uint64_t seed, double a = 2.0,
                                       double b = 1.0) {
    const std::vector<double> dts{1e-2, 5e-3, 2.5e-3};
    const double T = 1.0;
    const double fine = dts.back();
    const auto n_fine = static_cast<std::size_t>(std::llround(T / fine));
    std::vector<double> err(dts.size(), 0.0);
    std::vector<double> dW(n_fine);
    auto drift = [a](double, const std::array<double, 1>& x) { return std::array<double, 1>{a * x[0]}; };
    auto diffusion = [b](double, const std::array<double, 1>& x) { return std::array<double, 1>{b * x[0]}; };
    for (std::size_t p = 0; p < paths; ++p) {
        const numerics::RandomStream stream(seed, p);
        double W = 0.0;
        for (std::size_t k = 0; k < n_fine; ++k) {
            dW[k] = std::sqrt(fine) * stream.normal(k);
            W += dW[k];
        }
        const double exact = std::exp((a - 0.5 * b * b) * T + b * W);
        for (std::size_t level = 0; level < dts.size(); ++level) {
            const auto group = static_cast<std::size_t>(std::llround(dts[level] / fine));
            std::array<double, 1> x{1.0};
            double t = 0.0;
            for (std::size_t k = 0; k < n_fine; k += group) {
                double inc = 0.0;
                for (std::size_t j = k; j < k + group; ++j) {
                    inc += dW[j];
                }
                x = simulate::drift_rk4_em_step<1>(drift, diffusion, t, x, dts[level], inc);
                t += dts[level];
            }
            err[level] += std::abs(x[0] - exact);
        }
    }
    StrongOrder out{dts, err, 0.0};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(dts.size());
    for (std::size_t i = 0; i < dts.size(); ++i) {
        out.errors[i] /= static_cast<double>(paths);
        const double x = std::log(dts[i]);
        const double y = std::log(out.errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

}  // namespace autores::testing
