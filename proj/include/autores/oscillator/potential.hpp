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
#include <optional>
#include <string>
#include <vector>

#include "autores/error.hpp"
#include "autores/numerics/roots.hpp"

namespace autores::oscillator {

/**
 * U(x) = x^(2h+2) / (2h+2) + sum_{i <= 2h+1} u_i x^i.
 *
 * The leading coefficient is implied. rho0 is the smallest admissible orbit
 * amplitude: its energy level sits above every critical value of U and above
 * U(0), so each level rho >= rho0 is a single closed curve around the origin.
 */
class Potential {
public:
    Potential(int h, std::vector<double> u, std::optional<double> rho0_override = {})
        : h_(h), u_(std::move(u)) {
        if (h_ < 0) {
            throw ValidationError("well degree index h must be nonnegative");
        }
        if (u_.size() > static_cast<std::size_t>(2 * h_ + 2)) {
            throw ValidationError("potential has " + std::to_string(u_.size()) +
                                  " lower coefficients, at most 2h+2 = " +
                                  std::to_string(2 * h_ + 2) + " allowed");
        }
        u_.resize(static_cast<std::size_t>(2 * h_ + 2), 0.0);
        for (double c : u_) {
            if (!std::isfinite(c)) {
                throw ValidationError("potential coefficients must be finite");
            }
        }
        locate_critical_points();
        const double floor = std::max(critical_level_, 0.0);
        if (rho0_override) {
            const double e = std::pow(*rho0_override, degree());
            if (!(*rho0_override > 0.0) || !(e > floor)) {
                throw ValidationError("rho0 override " + std::to_string(*rho0_override) +
                                      " does not clear the separatrix level");
            }
            rho0_ = *rho0_override;
        } else {
            const double margin = 0.1 * std::max(critical_level_ - min_value_, 1.0);
            rho0_ = std::pow(floor + margin, 1.0 / degree());
        }
    }

    static Potential harmonic() { return Potential(0, {}); }
    static Potential duffing() { return Potential(1, {0.0, 0.0, -0.5, 0.0}); }

    int h() const noexcept { return h_; }
    int degree() const noexcept { return 2 * h_ + 2; }
    const std::vector<double>& u() const noexcept { return u_; }
    double rho0() const noexcept { return rho0_; }
    const std::vector<double>& critical_points() const noexcept { return critical_; }

    double operator()(double x) const {
        double lower = 0.0;
        for (auto i = u_.size(); i-- > 0;) {
            lower = lower * x + u_[i];
        }
        return std::pow(x, degree()) / degree() + lower;
    }

    double derivative(double x) const {
        double lower = 0.0;
        for (auto i = u_.size(); i-- > 1;) {
            lower = lower * x + static_cast<double>(i) * u_[i];
        }
        return std::pow(x, degree() - 1) + lower;
    }

    double energy(double x1, double x2) const { return 0.5 * x2 * x2 + (*this)(x1); }

    /// H^(1/(2h+2)); NaN when the energy is not positive.
    double amplitude(double x1, double x2) const {
        const double e = energy(x1, x2);
        return e > 0.0 ? std::pow(e, 1.0 / degree()) : std::nan("");
    }

    double level(double rho) const { return std::pow(rho, degree()); }

    /// Coefficients c_0..c_{2h+2} of U as an ordinary polynomial.
    std::vector<double> coefficients() const {
        std::vector<double> c(u_);
        c.push_back(1.0 / degree());
        return c;
    }

private:
    void locate_critical_points() {
        double bound = 1.0;
        for (std::size_t i = 1; i < u_.size(); ++i) {
            bound = std::max(bound, 1.0 + std::abs(static_cast<double>(i) * u_[i]));
        }
        constexpr int intervals = 4096;
        const double step = 2.0 * bound / intervals;
        double x_prev = -bound;
        double d_prev = derivative(x_prev);
        for (int k = 1; k <= intervals; ++k) {
            const double x = -bound + k * step;
            const double d = derivative(x);
            if (d_prev == 0.0) {
                critical_.push_back(x_prev);
            } else if ((d_prev < 0.0) != (d < 0.0) && d != 0.0) {
                critical_.push_back(numerics::solve_scalar(
                    [this](double y) { return derivative(y); }, x_prev, x, 1e-14));
            }
            x_prev = x;
            d_prev = d;
        }
        critical_level_ = (*this)(0.0);
        min_value_ = (*this)(0.0);
        for (double c : critical_) {
            critical_level_ = std::max(critical_level_, (*this)(c));
            min_value_ = std::min(min_value_, (*this)(c));
        }
    }

    int h_;
    std::vector<double> u_;
    std::vector<double> critical_;
    double critical_level_ = 0.0;
    double min_value_ = 0.0;
    double rho0_ = 0.0;
};

}  // namespace autores::oscillator
