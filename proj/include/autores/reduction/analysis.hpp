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
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "autores/error.hpp"
#include "autores/numerics/periodic.hpp"
#include "autores/numerics/rational.hpp"
#include "autores/numerics/roots.hpp"
#include "autores/oscillator/leading_orbit.hpp"
#include "autores/oscillator/orbit.hpp"
#include "autores/reduction/specs.hpp"

namespace autores::reduction {

enum class LockClass { stable_lock, unstable_lock, saddle_lock };
enum class HorizonClass { polynomial, exponential, infinite };

inline const char* to_string(LockClass c) {
    switch (c) {
        case LockClass::stable_lock: return "stable-lock";
        case LockClass::unstable_lock: return "unstable-lock";
        case LockClass::saddle_lock: return "saddle-lock";
    }
    return "?";
}

inline const char* to_string(HorizonClass c) {
    switch (c) {
        case HorizonClass::polynomial: return "polynomial";
        case HorizonClass::exponential: return "exponential";
        case HorizonClass::infinite: return "infinite";
    }
    return "?";
}

struct LockedPhase {
    double theta0 = 0.0;
    double p_prime = 0.0;
    double j_value = 0.0;
    LockClass kind = LockClass::saddle_lock;
};

/// Exponent calculus, kept exact in rational arithmetic.
struct Exponents {
    Rational a, b, M1, M2, M, A, B, C;
    bool ncond_ok = false;
    bool adas_ok = false;

    /// Kronecker delta of (B, 2A).
    bool resonant_shift() const { return B == 2 * A; }

    HorizonClass horizon() const {
        const Rational edge = A + B / 2;
        if (C < edge) {
            return HorizonClass::polynomial;
        }
        if (C == edge) {
            return HorizonClass::exponential;
        }
        return HorizonClass::infinite;
    }
};

struct ResonanceAnalysis {
    int h = 0;
    int kappa = 1;
    Exponents exponents;
    double nu0 = 0.0;
    double z0 = 0.0;
    numerics::PeriodicSamples PTheta;
    numerics::PeriodicSamples JTheta;
    std::vector<LockedPhase> locked_phases;
    bool drift = false;
    HorizonClass horizon = HorizonClass::polynomial;

    double A() const { return numerics::to_double(exponents.A); }
    double B() const { return numerics::to_double(exponents.B); }
    double C() const { return numerics::to_double(exponents.C); }

    /// Stable locked phase nearest to theta on the circle, or NaN.
    double nearest_stable(double theta) const;
};

inline double wrap_angle(double x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    x = std::fmod(x, two_pi);
    if (x <= -std::numbers::pi) {
        x += two_pi;
    } else if (x > std::numbers::pi) {
        x -= two_pi;
    }
    return x;
}

inline double ResonanceAnalysis::nearest_stable(double theta) const {
    double best = std::numeric_limits<double>::quiet_NaN();
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& lp : locked_phases) {
        if (lp.kind != LockClass::stable_lock) {
            continue;
        }
        const double d = std::abs(wrap_angle(lp.theta0 - theta));
        if (d < dist) {
            dist = d;
            best = lp.theta0;
        }
    }
    return best;
}

/**
 * a, b, M1, M2, M, A, B, C, the existence and noise-dominance flags, and z0.
 * Requires h >= 1: for h = 0 the frequency does not grow with amplitude and
 * the resonance condition has no large-time solution.
 */
inline ResonanceAnalysis exponents(const ForcingSpec& forcing, const NoiseSpec& noise, int h,
                                   int kappa) {
    if (h < 1) {
        throw UnsupportedRegimeError(
            "h = " + std::to_string(h) +
            ": the oscillator frequency must grow with amplitude (h >= 1)");
    }
    if (kappa < 1) {
        throw ValidationError("resonance order kappa must be positive");
    }
    validate(forcing, noise, h);
    ResonanceAnalysis out;
    out.h = h;
    out.kappa = kappa;
    auto& e = out.exponents;
    const Rational hh(h);
    e.a = Rational(forcing.p() + (forcing.l() - 1) * (h + 1));
    e.b = Rational(noise.n() + (noise.m() - 1) * (h + 1));
    e.M1 = -forcing.alpha + e.a * forcing.beta / hh;
    e.M2 = -2 * noise.gamma + 2 * e.b * forcing.beta / hh;
    e.M = std::max(e.M1, e.M2);
    e.A = (forcing.beta - e.M) / 2;
    e.B = forcing.beta + 1;
    e.C = (forcing.beta - std::min(e.M1, e.M2)) / 2;
    e.ncond_ok = (Rational(-1) <= e.M) && (e.M < forcing.beta);
    e.adas_ok = (3 * e.M1 - 2 * e.M2) >= forcing.beta;
    out.horizon = e.horizon();
    out.nu0 = 2.0 * std::numbers::pi / oscillator::leading_period(h);
    out.z0 = std::pow(forcing.s * numerics::to_double(e.B) / (out.nu0 * kappa), 1.0 / h);
    return out;
}

/// Smallest t at which the resonance condition has a solution with rho >= rho0.
inline double resonance_min_time(const oscillator::Potential& U, const ForcingSpec& forcing,
                                 int kappa) {
    const double nu_min = oscillator::frequency(U, U.rho0());
    const double b = numerics::to_double(forcing.beta);
    return std::pow(kappa * nu_min / (forcing.s * (b + 1.0)), 1.0 / b);
}

/// rho_kappa(t): solves nu(rho) = S'(t) / kappa for rho >= rho0.
inline double resonance_curve(const oscillator::Potential& U, const ForcingSpec& forcing,
                              int kappa, double t) {
    if (kappa < 1 || !(t > 0.0)) {
        throw ValidationError("resonance_curve needs kappa >= 1 and t > 0");
    }
    const double target = forcing.phase_rate(t) / kappa;
    auto g = [&](double rho) { return oscillator::frequency(U, rho) - target; };
    const double lo = U.rho0();
    if (g(lo) >= 0.0) {
        const double t_min = resonance_min_time(U, forcing, kappa);
        throw PreAsymptoticError("no resonant amplitude at t = " + std::to_string(t) +
                                     "; need t > " + std::to_string(t_min),
                                 t_min);
    }
    double hi = 2.0 * lo;
    while (g(hi) <= 0.0) {
        hi *= 2.0;
    }
    return numerics::solve_scalar(g, 0.5 * hi > lo ? 0.5 * hi : lo, hi, 1e-13 * hi);
}

/**
 * rho_kappa(t) on [t_lo, t_hi] as a cubic B-spline of log rho in log t.
 * Nodes are uniform in log t, each solved exactly; the end slopes come from
 * d log rho / d log t = beta / (d log nu / d log rho).
 */
class ResonanceTrack {
public:
    ResonanceTrack(const oscillator::Potential& U, const ForcingSpec& forcing, int kappa,
                   double t_lo, double t_hi, int per_decade = 64)
        : t_lo_(t_lo), t_hi_(t_hi) {
        if (!(t_lo > 0.0) || !(t_hi > t_lo)) {
            throw ValidationError("resonance track needs 0 < t_lo < t_hi");
        }
        const double span = std::log10(t_hi / t_lo);
        const int n = std::max(8, static_cast<int>(std::ceil(span * per_decade)) + 1);
        step_ = std::log(t_hi / t_lo) / (n - 1);
        std::vector<double> y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double t = t_lo * std::exp(i * step_);
            y[static_cast<std::size_t>(i)] =
                std::log(resonance_curve(U, forcing, kappa, i == n - 1 ? t_hi : t));
        }
        const double beta = numerics::to_double(forcing.beta);
        auto slope = [&](double log_rho) {
            const double rho = std::exp(log_rho);
            const double d = std::min(1e-3 * rho, (rho - U.rho0()) / 3.0);
            if (!(d > 1e-6 * rho)) {
                return std::numeric_limits<double>::quiet_NaN();  // spline estimates it
            }
            auto nu = [&](double r) { return oscillator::frequency(U, r); };
            const double dnu =
                (-nu(rho + 2 * d) + 8 * nu(rho + d) - 8 * nu(rho - d) + nu(rho - 2 * d)) / (12 * d);
            return beta / (dnu * rho / nu(rho));
        };
        spline_ = boost::math::interpolators::cardinal_cubic_b_spline<double>(
            y.begin(), y.end(), std::log(t_lo), step_, slope(y.front()), slope(y.back()));
    }

    double operator()(double t) const {
        if (!(t >= t_lo_ * (1.0 - 1e-12) && t <= t_hi_ * (1.0 + 1e-12))) {
            throw ValidationError("time " + std::to_string(t) + " outside the resonance track");
        }
        return std::exp(spline_(std::log(t)));
    }

    double t_lo() const noexcept { return t_lo_; }
    double t_hi() const noexcept { return t_hi_; }

private:
    double t_lo_;
    double t_hi_;
    double step_ = 0.0;
    boost::math::interpolators::cardinal_cubic_b_spline<double> spline_;
};

}  // namespace autores::reduction
