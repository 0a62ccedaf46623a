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
#include <optional>
#include <vector>

#include "autores/error.hpp"
#include "autores/reduction/analysis.hpp"
#include "autores/reduction/averages.hpp"

namespace autores::simulate {

struct TruncatedOptions {
    double R0 = 5.0;
    /// Fixed RK4 step in tau; 0 picks (tau_end - tau0) / 200000, capped at 1.
    double dtau = 0.0;
    std::size_t record_stride = 100;
};

struct TruncatedPath {
    std::vector<double> tau;
    std::vector<double> R;
    std::vector<double> Theta;
    bool left_domain = false;
    std::optional<double> exit_tau;
};

/**
 * Deterministic averaged system with every coefficient frozen at its leading value:
 *   dR/dtau = tau^(-A/B) th1A + tau^(-(B-A)/B) chi1BmA + tau^(-2A/B) th12A R
 *             + tau^(-1) chi1B R + tau^(-(2C-A)/B) th12CmA,
 *   dTheta/dtau = tau^(-A/B) chi2A R + tau^(-2A/B) (th22A + chi22A R^2).
 * Integration stops with left_domain set once |R| exceeds R0.
 */
inline TruncatedPath integrate_truncated(const reduction::AveragedCoefficients& c,
                                         const reduction::ResonanceAnalysis& analysis,
                                         std::array<double, 2> initial, double tau0,
                                         double tau_end, const TruncatedOptions& options = {}) {
    if (!(tau0 > 0.0) || !(tau_end > tau0)) {
        throw ValidationError("truncated integration needs 0 < tau0 < tau_end");
    }
    if (!(options.R0 > 0.0) || options.record_stride == 0) {
        throw ValidationError("R0 and record_stride must be positive");
    }
    const double A = analysis.A();
    const double B = analysis.B();
    const double C = analysis.C();
    auto rhs = [&](double tau, const std::array<double, 2>& y) {
        const double R = y[0];
        const double th = y[1];
        const double dR = std::pow(tau, -A / B) * c.theta_1_A_0.interpolate(th) +
                          std::pow(tau, -(B - A) / B) * c.chi_1_BmA_0 +
                          std::pow(tau, -2.0 * A / B) * c.theta_1_2A_0.interpolate(th) * R +
                          c.chi_1_B_0 * R / tau +
                          std::pow(tau, -(2.0 * C - A) / B) * c.theta_1_2CmA_0.interpolate(th);
        const double dTh = std::pow(tau, -A / B) * c.chi_2_A_0 * R +
                           std::pow(tau, -2.0 * A / B) *
                               (c.theta_2_2A_0.interpolate(th) + c.chi_2_2A_0 * R * R);
        return std::array<double, 2>{dR, dTh};
    };
    const double h_default = std::min(1.0, (tau_end - tau0) / 200000.0);
    const double h = options.dtau > 0.0 ? options.dtau : h_default;
    const auto steps = static_cast<std::size_t>(std::ceil((tau_end - tau0) / h));
    const double dt = (tau_end - tau0) / static_cast<double>(steps);

    TruncatedPath out;
    std::array<double, 2> y = initial;
    auto record = [&](double tau) {
        out.tau.push_back(tau);
        out.R.push_back(y[0]);
        out.Theta.push_back(y[1]);
    };
    record(tau0);
    for (std::size_t i = 0; i < steps; ++i) {
        const double tau = tau0 + static_cast<double>(i) * dt;
        const auto k1 = rhs(tau, y);
        const auto k2 = rhs(tau + 0.5 * dt, {y[0] + 0.5 * dt * k1[0], y[1] + 0.5 * dt * k1[1]});
        const auto k3 = rhs(tau + 0.5 * dt, {y[0] + 0.5 * dt * k2[0], y[1] + 0.5 * dt * k2[1]});
        const auto k4 = rhs(tau + dt, {y[0] + dt * k3[0], y[1] + dt * k3[1]});
        y[0] += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        y[1] += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        const double tau_next = (i + 1 == steps) ? tau_end : tau + dt;
        if (!(std::abs(y[0]) <= options.R0)) {
            out.left_domain = true;
            out.exit_tau = tau_next;
            record(tau_next);
            return out;
        }
        if ((i + 1) % options.record_stride == 0 || i + 1 == steps) {
            record(tau_next);
        }
    }
    return out;
}

}  // namespace autores::simulate
