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
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "autores/error.hpp"
#include "autores/numerics/quadrature.hpp"
#include "autores/numerics/roots.hpp"
#include "autores/oscillator/potential.hpp"

namespace autores::oscillator {

struct TurningPoints {
    double x_minus;
    double x_plus;
};

/// Action-angle coordinates of a phase-plane point.
struct ActionAngle {
    double rho;
    double phi;
};

inline TurningPoints turning_points(const Potential& U, double rho) {
    if (!(rho >= U.rho0() * (1.0 - 1e-12))) {
        throw DomainError("amplitude " + std::to_string(rho) +
                              " is below the admissible minimum rho0 = " +
                              std::to_string(U.rho0()),
                          U.rho0());
    }
    const double e = U.level(rho);
    auto g = [&](double x) { return U(x) - e; };
    auto outward = [&](double sign) {
        double hi = sign * std::max(1.0, rho);
        while (g(hi) <= 0.0) {
            hi *= 2.0;
        }
        const double lo = std::min(0.0, hi);
        const double top = std::max(0.0, hi);
        const double tol = 1e-15 * std::max(1.0, std::abs(hi));
        return numerics::solve_scalar(g, lo, top, tol);
    };
    return {outward(-1.0), outward(1.0)};
}

/**
 * One closed level curve H = rho^(2h+2) of the limiting system.
 *
 * With x = mid + half sin(u) the travel time between turning points is the
 * integral of du / sqrt(2 W(x(u))), where
 * W(x) = (E - U(x)) / ((x - x_-)(x_+ - x)). W is evaluated through second
 * divided differences of U, so it stays accurate next to the turning points.
 * Phase convention: phi = 0 at (x_+, 0), x2 < 0 for phi in (0, pi).
 */
class Orbit {
public:
    Orbit(const Potential& U, double rho,
          const numerics::QuadratureSpec& spec = numerics::QuadratureSpec::singular())
        : rho_(rho), c_(U.coefficients()) {
        const auto tp = turning_points(U, rho);
        x_minus_ = tp.x_minus;
        x_plus_ = tp.x_plus;
        mid_ = 0.5 * (x_plus_ + x_minus_);
        half_ = 0.5 * (x_plus_ - x_minus_);
        period_ = numerics::integrate_singular(
            [this](double x) { return std::sqrt(2.0 / reduced(x)); }, x_minus_, x_plus_, spec);
        frequency_ = 2.0 * std::numbers::pi / period_;
    }

    double rho() const noexcept { return rho_; }
    double x_minus() const noexcept { return x_minus_; }
    double x_plus() const noexcept { return x_plus_; }
    double period() const noexcept { return period_; }
    double frequency() const noexcept { return frequency_; }

    /// W(x) = sum_{k >= 2} c_k h_{k-2}(x, x_+, x_-), h_m the complete symmetric polynomial.
    double reduced(double x) const {
        double g = 1.0;  // h_m(x_+, x_-)
        double hm = 1.0;  // h_m(x, x_+, x_-)
        double pm = 1.0;  // x_-^m
        double w = c_[2];
        for (std::size_t k = 3; k < c_.size(); ++k) {
            pm *= x_minus_;
            g = x_plus_ * g + pm;
            hm = x * hm + g;
            w += c_[k] * hm;
        }
        if (!(w > 0.0)) {
            throw EvaluationError("orbit level touches a critical point", x);
        }
        return w;
    }

    /// Travel time from angle u1 up to the right turning point (u = pi/2).
    double time_to_plus(double u1) const { return travel(u1, 0.5 * std::numbers::pi); }
    /// Travel time from the left turning point (u = -pi/2) to angle u1.
    double time_from_minus(double u1) const { return travel(-0.5 * std::numbers::pi, u1); }

    double angle_of(double x1) const {
        return std::asin(std::clamp((x1 - mid_) / half_, -1.0, 1.0));
    }

    /// Angle phi in [0, 2 pi) of a point on this level curve.
    double phase(double x1, double x2) const {
        const double u1 = angle_of(x1);
        double phi = 0.0;
        if (x1 >= mid_) {
            const double t = time_to_plus(u1);
            phi = (x2 <= 0.0) ? frequency_ * t : 2.0 * std::numbers::pi - frequency_ * t;
        } else {
            const double t = time_from_minus(u1);
            phi = (x2 <= 0.0) ? std::numbers::pi - frequency_ * t
                              : std::numbers::pi + frequency_ * t;
        }
        if (phi >= 2.0 * std::numbers::pi) {
            phi -= 2.0 * std::numbers::pi;
        }
        return std::max(phi, 0.0);
    }

    /// (X1, X2)(phi) on this level curve.
    std::array<double, 2> point(double phi) const {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        phi = std::fmod(phi, two_pi);
        if (phi < 0.0) {
            phi += two_pi;
        }
        const bool lower = phi <= std::numbers::pi;
        // Time since the last turning point, measured from the closer one.
        const double from_plus = lower ? phi : two_pi - phi;
        const double target = from_plus / frequency_;
        const double quarter = 0.25 * period_;
        double u1 = 0.0;
        if (target <= quarter) {
            u1 = solve_angle([this](double u) { return time_to_plus(u); }, target, false);
        } else {
            u1 = solve_angle([this](double u) { return time_from_minus(u); },
                             0.5 * period_ - target, true);
        }
        const double x1 = mid_ + half_ * std::sin(u1);
        const double speed = half_ * std::cos(u1) * std::sqrt(2.0 * reduced(x1));
        return {x1, lower ? -speed : speed};
    }

private:
    double travel(double a, double b) const {
        if (!(b > a)) {
            return 0.0;
        }
        constexpr double panel = std::numbers::pi / 8.0;
        const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel)));
        const double w = (b - a) / panels;
        double sum = 0.0;
        for (int i = 0; i < panels; ++i) {
            sum += boost::math::quadrature::gauss<double, 20>::integrate(
                [this](double u) {
                    return 1.0 / std::sqrt(2.0 * reduced(mid_ + half_ * std::sin(u)));
                },
                a + i * w, a + (i + 1) * w);
        }
        return sum;
    }

    template <class T>
    double solve_angle(T&& time, double target, bool increasing) const {
        constexpr double lo = -0.5 * std::numbers::pi;
        constexpr double hi = 0.5 * std::numbers::pi;
        if (target <= 0.0) {
            return increasing ? lo : hi;
        }
        auto g = [&](double u) { return time(u) - target; };
        return numerics::solve_scalar(g, lo, hi, 1e-14);
    }

    double rho_;
    std::vector<double> c_;
    double x_minus_ = 0.0;
    double x_plus_ = 0.0;
    double mid_ = 0.0;
    double half_ = 0.0;
    double period_ = 0.0;
    double frequency_ = 0.0;
};

inline double period(const Potential& U, double rho,
                     const numerics::QuadratureSpec& spec = numerics::QuadratureSpec::singular()) {
    return Orbit(U, rho, spec).period();
}

inline double frequency(const Potential& U, double rho,
                        const numerics::QuadratureSpec& spec =
                            numerics::QuadratureSpec::singular()) {
    return Orbit(U, rho, spec).frequency();
}

/// Exact forward map (X1, X2)(phi, rho).
inline std::array<double, 2> orbit_point(const Potential& U, double phi, double rho) {
    return Orbit(U, rho).point(phi);
}

/// Exact inverse map: rho = H^(1/(2h+2)), phi from the travel time to a turning point.
inline ActionAngle action_angle(const Potential& U, double x1, double x2) {
    const double rho = U.amplitude(x1, x2);
    if (!(rho >= U.rho0() * (1.0 - 1e-12))) {
        throw DomainError("point (" + std::to_string(x1) + ", " + std::to_string(x2) +
                              ") lies inside the excluded region",
                          U.rho0());
    }
    const Orbit orbit(U, rho);
    return {rho, orbit.phase(x1, x2)};
}

}  // namespace autores::oscillator
