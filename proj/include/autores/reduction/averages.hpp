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
#include <vector>

#include "autores/error.hpp"
#include "autores/numerics/periodic.hpp"
#include "autores/numerics/quadrature.hpp"
#include "autores/oscillator/leading_orbit.hpp"
#include "autores/reduction/analysis.hpp"
#include "autores/reduction/specs.hpp"

namespace autores::reduction {

/// F(phi, S) = coefficient(S) * shape(phi).
struct SeparableField {
    numerics::TrigSeries coefficient;
    numerics::PeriodicSamples shape;

    double operator()(double phi, double S) const { return coefficient(S) * shape(phi); }
};

/**
 * Leading coefficients of the amplitude-angle system and their averages
 * along the resonance, theta_{i,K,0}(Theta) and chi_{i,K,0}.
 */
struct AveragedCoefficients {
    SeparableField f10, f20, g10, g20, c10, c20;
    double chi_1_BmA_0 = 0.0;
    double chi_1_B_0 = 0.0;
    double chi_2_A_0 = 0.0;
    double chi_2_2A_0 = 0.0;
    numerics::PeriodicSamples theta_1_A_0;
    numerics::PeriodicSamples theta_1_2A_0;
    numerics::PeriodicSamples theta_1_2CmA_0;
    numerics::PeriodicSamples theta_2_2A_0;
};

namespace detail {

inline double ipow(double x, int n) {
    double r = 1.0;
    for (int k = 0; k < n; ++k) {
        r *= x;
    }
    return r;
}

/// Theta -> <F(zeta / kappa + Theta, zeta)>_{kappa zeta} on an n-point Theta grid.
inline numerics::PeriodicSamples phase_average(const SeparableField& F, int kappa,
                                               std::size_t n) {
    // Resample the shape so every zeta / kappa + Theta lands on a sample.
    const auto fine = F.shape.resampled(n * static_cast<std::size_t>(kappa));
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = numerics::PeriodicSamples::grid_point(j, n);
        out[j] = numerics::periodic_average(
            [&](double zeta) { return F.coefficient(zeta) * fine(zeta / kappa + theta); },
            kappa, numerics::QuadratureSpec::periodic(n));
    }
    return numerics::PeriodicSamples(std::move(out));
}

}  // namespace detail

/**
 * Evaluates the leading coefficients on the leading orbit and averages them.
 * The forcing and noise terms enter only through Q_{p,l}(S) and
 * sigma_{n,m}(S); mu is taken from the noise spec.
 */
inline AveragedCoefficients leading_averages(const ForcingSpec& forcing, const NoiseSpec& noise,
                                             const oscillator::LeadingOrbit& leading,
                                             const ResonanceAnalysis& analysis,
                                             std::size_t theta_count = 1024) {
    const int h = leading.h;
    if (h != analysis.h) {
        throw ValidationError("leading orbit and analysis disagree on h");
    }
    validate(forcing, noise, h);
    if (theta_count < 16 || theta_count % 2 != 0) {
        throw ValidationError("theta grid needs an even count of at least 16");
    }
    const int p = forcing.p(), l = forcing.l(), n = noise.n(), m = noise.m();
    const double nu0 = leading.nu0;
    const double hp1 = h + 1.0;
    const std::size_t N = leading.X10.size();

    std::vector<double> f1(N), f2(N), g1(N), g2(N), c1(N), c2(N);
    for (std::size_t k = 0; k < N; ++k) {
        const double x = leading.X10[k];
        const double y = leading.X20[k];
        const double dx = y / nu0;
        const double d2x = -detail::ipow(x, 2 * h + 1) / (nu0 * nu0);
        const double drive = detail::ipow(x, p) * detail::ipow(y, l);
        const double noise_shape = detail::ipow(x, n) * detail::ipow(y, m);
        f1[k] = drive * dx;
        f2[k] = -drive * x;
        g1[k] = noise_shape * noise_shape * (h * dx * dx + x * d2x);
        g2[k] = -noise_shape * noise_shape * (h + 2.0) * x * dx;
        c1[k] = noise_shape * dx;
        c2[k] = -noise_shape * x;
    }
    const auto Qpl = forcing.Q.coefficient(p, l);
    const auto snm = noise.sigma.coefficient(n, m);
    const double mu = noise.mu;
    const numerics::TrigSeries drive_coef =
        Qpl * numerics::TrigSeries({{0, nu0 / (2.0 * hp1), 0.0}});
    const numerics::TrigSeries ito_coef =
        (snm * snm) * numerics::TrigSeries({{0, -(mu * nu0) * (mu * nu0) / (8.0 * hp1 * hp1), 0.0}});
    const numerics::TrigSeries diff_coef = snm * numerics::TrigSeries({{0, nu0 / (2.0 * hp1), 0.0}});

    AveragedCoefficients out;
    out.f10 = {drive_coef, numerics::PeriodicSamples(f1)};
    out.f20 = {drive_coef, numerics::PeriodicSamples(f2)};
    out.g10 = {ito_coef, numerics::PeriodicSamples(g1)};
    out.g20 = {ito_coef, numerics::PeriodicSamples(g2)};
    out.c10 = {diff_coef, numerics::PeriodicSamples(c1)};
    out.c20 = {diff_coef, numerics::PeriodicSamples(c2)};

    const auto& e = analysis.exponents;
    const double A = numerics::to_double(e.A);
    const double B = numerics::to_double(e.B);
    const double C = numerics::to_double(e.C);
    const double a = numerics::to_double(e.a);
    const double b = numerics::to_double(e.b);
    const double beta = numerics::to_double(forcing.beta);
    const double z0 = analysis.z0;
    const int kappa = analysis.kappa;

    out.chi_1_BmA_0 = -std::pow(B, (A - B) / B) * beta / h;
    out.chi_1_B_0 = (A - beta / h) / B;
    out.chi_2_A_0 = std::pow(B, -A / B) * std::pow(z0, h) * h * nu0;
    out.chi_2_2A_0 = std::pow(B, -2.0 * A / B) * std::pow(z0, h) * h * (h - 1.0) * nu0 / 2.0;

    auto scaled = [](const numerics::PeriodicSamples& s, double factor) {
        std::vector<double> v(s.values().begin(), s.values().end());
        for (double& x : v) {
            x *= factor;
        }
        return numerics::PeriodicSamples(std::move(v));
    };
    const auto avg_f1 = detail::phase_average(out.f10, kappa, theta_count);
    const auto avg_f2 = detail::phase_average(out.f20, kappa, theta_count);
    const auto avg_g1 = detail::phase_average(out.g10, kappa, theta_count);
    out.theta_1_A_0 = scaled(avg_f1, std::pow(B, -A / B) * std::pow(z0, a));
    out.theta_1_2A_0 = scaled(out.theta_1_A_0, (a + 1.0) * std::pow(B, -A / B));
    out.theta_1_2CmA_0 = scaled(avg_g1, std::pow(B, (A - 2.0 * C) / B) * std::pow(z0, 2.0 * b));
    out.theta_2_2A_0 = scaled(avg_f2, std::pow(B, -2.0 * A / B) * std::pow(z0, a));
    return out;
}

}  // namespace autores::reduction
