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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "autores/error.hpp"
#include "autores/numerics/periodic.hpp"
#include "autores/numerics/roots.hpp"
#include "autores/oscillator/leading_orbit.hpp"
#include "autores/reduction/analysis.hpp"
#include "autores/reduction/averages.hpp"

namespace autores::reduction {

/**
 * Builds P(Theta) and J(Theta), finds the simple zeros of P and classifies them.
 * The derivative of theta_{2,2A,0} is spectral, since the averages are
 * trigonometric polynomials in Theta.
 */
inline ResonanceAnalysis locked_phases(const AveragedCoefficients& coeffs,
                                       ResonanceAnalysis analysis) {
    const auto& e = analysis.exponents;
    if (!e.ncond_ok || !e.adas_ok) {
        throw UnsupportedRegimeError(
            "locked-phase analysis needs -1 <= M < beta and 3 M1 - 2 M2 >= beta");
    }
    const bool shift = e.resonant_shift();
    const auto& t1 = coeffs.theta_1_A_0;
    const auto dt22 = coeffs.theta_2_2A_0.derivative();
    const std::size_t n = t1.size();
    std::vector<double> P(n), J(n);
    for (std::size_t j = 0; j < n; ++j) {
        P[j] = t1[j] + (shift ? coeffs.chi_1_BmA_0 : 0.0);
        J[j] = coeffs.theta_1_2A_0[j] + dt22[j] + (shift ? coeffs.chi_1_B_0 : 0.0);
    }
    analysis.PTheta = numerics::PeriodicSamples(std::move(P));
    analysis.JTheta = numerics::PeriodicSamples(std::move(J));
    const auto& PT = analysis.PTheta;

    const double scale = std::max(PT.max_abs(), 1e-300);
    auto pf = [&PT](double th) { return PT.interpolate(th); };
    std::vector<double> roots;
    for (std::size_t j = 0; j < n; ++j) {
        const double a = PT.phi(j);
        const double b = a + 2.0 * std::numbers::pi / static_cast<double>(n);
        const double fa = PT[j];
        const double fb = PT[(j + 1) % n];
        if (fa == 0.0) {
            roots.push_back(a);
        } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
            roots.push_back(numerics::solve_scalar(pf, a, b, 1e-13));
        } else if (std::abs(fa) < 1e-9 * scale) {
            // Touches zero without crossing: the zero cannot be simple.
            throw DegenerateRootError("P(Theta) has a non-crossing zero near Theta = " +
                                      std::to_string(wrap_angle(a)));
        }
    }
    std::vector<double> merged;
    for (double r : roots) {
        const double w = wrap_angle(r);
        const bool dup = std::any_of(merged.begin(), merged.end(), [w](double q) {
            return std::abs(wrap_angle(q - w)) < 1e-6;
        });
        if (!dup) {
            merged.push_back(w);
        }
    }
    std::sort(merged.begin(), merged.end());
    analysis.locked_phases.clear();
    for (double th : merged) {
        LockedPhase lp;
        lp.theta0 = th;
        lp.p_prime = PT.interpolate_derivative(th);
        lp.j_value = analysis.JTheta.interpolate(th);
        if (std::abs(lp.p_prime) < 1e-8 * scale) {
            throw DegenerateRootError("P'(Theta0) vanishes at Theta0 = " + std::to_string(th));
        }
        if (lp.p_prime > 0.0) {
            lp.kind = LockClass::saddle_lock;
        } else {
            lp.kind = lp.j_value < 0.0 ? LockClass::stable_lock : LockClass::unstable_lock;
        }
        analysis.locked_phases.push_back(lp);
    }
    analysis.drift = analysis.locked_phases.empty();
    return analysis;
}

enum class DuffingCase { p0_odd, p1_even };

/**
 * Critical forcing amplitude for locking in the Duffing examples:
 * 128 / ((3 nu0 kappa)^3 q_k) for kappa = 2k - 1 (p = 0) and
 * 3 / (2 (nu0 k)^2 qtilde_k) for kappa = 2k (p = 1).
 */
inline double duffing_threshold(int kappa, DuffingCase which,
                                const oscillator::LeadingOrbit& leading) {
    if (kappa < 1) {
        throw ValidationError("kappa must be positive");
    }
    if (which == DuffingCase::p0_odd) {
        if (kappa % 2 == 0) {
            throw ValidationError("the p = 0 threshold needs odd kappa");
        }
        const int k = (kappa + 1) / 2;
        const double q = oscillator::duffing_fourier(leading, k).q_closed;
        return 128.0 / (std::pow(3.0 * leading.nu0 * kappa, 3) * q);
    }
    if (kappa % 2 != 0) {
        throw ValidationError("the p = 1 threshold needs even kappa");
    }
    const int k = kappa / 2;
    const double qt = oscillator::duffing_fourier(leading, k).qtilde;
    return 3.0 / (2.0 * std::pow(leading.nu0 * k, 2) * qt);
}

inline double duffing_threshold(int kappa, DuffingCase which) {
    return duffing_threshold(kappa, which, oscillator::leading_orbit(1));
}

struct Horizon {
    HorizonClass kind = HorizonClass::polynomial;
    double T_tilde = 0.0;  ///< infinity for the infinite class
};

/**
 * Length of the interval after t_star on which the locked regime persists
 * with high probability: t_star (mu^(-2(1-eps)/B) - 1) when C < A + B/2,
 * t_star (exp(mu^(-2(1-eps)/B)) - 1) when C = A + B/2, unbounded otherwise.
 */
inline Horizon horizon(const ResonanceAnalysis& analysis, double mu, double epsilon,
                       double t_star) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ValidationError("epsilon must lie in (0, 1)");
    }
    if (!(mu > 0.0)) {
        throw ValidationError("horizon needs mu > 0");
    }
    if (!(t_star > 0.0)) {
        throw ValidationError("horizon needs t_star > 0");
    }
    Horizon out;
    out.kind = analysis.exponents.horizon();
    const double power = std::pow(mu, -2.0 * (1.0 - epsilon) / analysis.B());
    switch (out.kind) {
        case HorizonClass::polynomial: out.T_tilde = t_star * (power - 1.0); break;
        case HorizonClass::exponential: out.T_tilde = t_star * std::expm1(power); break;
        case HorizonClass::infinite:
            out.T_tilde = std::numeric_limits<double>::infinity();
            break;
    }
    return out;
}

/// Exponents, averages and locked phases in one pass.
struct Reduction {
    oscillator::LeadingOrbit leading;
    AveragedCoefficients coefficients;
    ResonanceAnalysis analysis;
};

inline Reduction reduce(const ForcingSpec& forcing, const NoiseSpec& noise, int h, int kappa,
                        std::size_t theta_count = 1024) {
    Reduction out;
    out.analysis = exponents(forcing, noise, h, kappa);
    out.leading = oscillator::leading_orbit(h);
    out.coefficients = leading_averages(forcing, noise, out.leading, out.analysis, theta_count);
    out.analysis = locked_phases(out.coefficients, out.analysis);
    return out;
}

}  // namespace autores::reduction
