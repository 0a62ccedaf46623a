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

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <gtest/gtest.h>

#include "autores/oscillator/leading_orbit.hpp"
#include "autores/oscillator/orbit.hpp"
#include "autores/oscillator/orbit_table.hpp"
#include "autores/oscillator/potential.hpp"
#include "support.hpp"

namespace {

using namespace autores;
using namespace autores::oscillator;
using autores::testing::for_all;
using autores::testing::Gen;
constexpr double pi = std::numbers::pi;

// 2 sqrt(2) K(k) with modulus k = 1/sqrt(2), i.e. parameter m = 1/2.
double duffing_T0_elliptic() {
    return 2.0 * std::sqrt(2.0) * boost::math::ellint_1(1.0 / std::sqrt(2.0));
}

OrbitTable duffing_table(double rho_max = 100.0) {
    const auto U = Potential::duffing();
    return build_orbit_table(U, geometric_rho_grid(U.rho0(), rho_max));
}

TEST(Potential, EvaluatesLeadingPowerPlusLowerTerms) {
    for_all(100, 5, [](Gen& g, std::size_t) {
        const int h = g.integer(0, 3);
        std::vector<double> u(static_cast<std::size_t>(2 * h + 2));
        for (auto& c : u) {
            c = g.uniform(-2.0, 2.0);
        }
        const Potential U(h, u);
        const double x = g.uniform(-3.0, 3.0);
        double expect = std::pow(x, 2 * h + 2) / (2 * h + 2);
        for (std::size_t i = 0; i < u.size(); ++i) {
            expect += u[i] * std::pow(x, static_cast<double>(i));
        }
        EXPECT_NEAR(U(x), expect, 1e-12 * (1.0 + std::abs(expect)));
        // rho0 sits above every critical value, so the level curve is a single oval.
        for (double c : U.critical_points()) {
            EXPECT_LT(U(c), U.level(U.rho0()));
        }
    });
}

TEST(Potential, DuffingSeparatrixMargin) {
    const auto U = Potential::duffing();
    EXPECT_NEAR(U.rho0(), std::pow(0.1, 0.25), 1e-12);
    // Lifting the well by 1 puts the separatrix at level 1, above 0.5^4.
    EXPECT_THROW(Potential(1, {1, 0, -0.5, 0}, 0.5), ValidationError);
    EXPECT_NO_THROW(Potential(1, {1, 0, -0.5, 0}, 1.5));
    EXPECT_THROW(Potential(1, {0, 0, 0, 0, 1}), ValidationError);
}

TEST(TurningPoints, HarmonicLevel) {
    const auto tp = turning_points(Potential::harmonic(), 1.0);
    EXPECT_NEAR(tp.x_minus, -std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(tp.x_plus, std::sqrt(2.0), 1e-12);
}

TEST(TurningPoints, DuffingQuarticRoot) {
    const auto tp = turning_points(Potential::duffing(), 2.0);
    EXPECT_NEAR(tp.x_plus, std::sqrt(1.0 + std::sqrt(65.0)), 1e-12);
    EXPECT_NEAR(tp.x_minus, -tp.x_plus, 1e-12);
}

TEST(TurningPoints, DuffingLargeAmplitudeRatio) {
    const double rho = 1e4;
    EXPECT_NEAR(turning_points(Potential::duffing(), rho).x_plus / rho, std::sqrt(2.0), 1e-8);
}

TEST(TurningPoints, BelowSeparatrixNamesMinimalAmplitude) {
    const auto U = Potential::duffing();
    try {
        turning_points(U, 0.3);
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_DOUBLE_EQ(e.min_rho(), U.rho0());
    }
}

TEST(TurningPoints, PropertyLevelAndSlope) {
    for_all(200, 9, [](Gen& g, std::size_t) {
        const int h = g.integer(1, 2);
        std::vector<double> u(static_cast<std::size_t>(2 * h + 2));
        for (auto& c : u) {
            c = g.uniform(-1.0, 1.0);
        }
        const Potential U(h, u);
        const double rho = U.rho0() * g.log_uniform(1.0, 100.0);
        const auto tp = turning_points(U, rho);
        EXPECT_LT(tp.x_minus, tp.x_plus);
        EXPECT_NEAR(U(tp.x_plus) / U.level(rho), 1.0, 1e-10);
        EXPECT_NEAR(U(tp.x_minus) / U.level(rho), 1.0, 1e-10);
        EXPECT_GT(U.derivative(tp.x_plus), 0.0);
        EXPECT_LT(U.derivative(tp.x_minus), 0.0);
    });
}

TEST(Period, HarmonicIsTwoPi) {
    for (double rho : {0.5, 1.0, 7.0, 300.0}) {
        EXPECT_NEAR(period(Potential::harmonic(), rho), 2 * pi, 1e-12);
    }
}

TEST(Period, DuffingScaledPeriodApproachesT0) {
    const double T0 = duffing_T0_elliptic();
    EXPECT_NEAR(T0, 5.2441, 1e-4);
    const auto U = Potential::duffing();
    EXPECT_NEAR(period(U, 1e3) * 1e3, T0, 1e-5);
}

TEST(Period, DuffingAtTwoMatchesReference) {
    EXPECT_NEAR(period(Potential::duffing(), 2.0), 2.6914267352859, 1e-10);
}

TEST(Period, FrequencyAsymptoteIsSecondOrder) {
    const auto U = Potential::duffing();
    const double nu0 = 2 * pi / duffing_T0_elliptic();
    const double e10 = std::abs(frequency(U, 10.0) / 10.0 - nu0);
    const double e20 = std::abs(frequency(U, 20.0) / 20.0 - nu0);
    const double e40 = std::abs(frequency(U, 40.0) / 40.0 - nu0);
    EXPECT_NEAR(e20 / e10, 0.25, 0.02);
    EXPECT_NEAR(e40 / e20, 0.25, 0.02);
}

TEST(OrbitTable, HarmonicClosedForm) {
    const auto U = Potential::harmonic();
    const auto table = build_orbit_table(U, geometric_rho_grid(U.rho0(), 50.0, 8));
    double worst = 0.0;
    for (std::size_t i = 0; i < table.rho_grid.size(); ++i) {
        const double r = table.rho_grid[i];
        for (std::size_t j = 0; j < table.phi_count; ++j) {
            const double p = table.phi(j);
            worst = std::max(worst, std::abs(table.x1(i, j) - std::sqrt(2.0) * r * std::cos(p)) / r);
            worst = std::max(worst, std::abs(table.x2(i, j) + std::sqrt(2.0) * r * std::sin(p)) / r);
        }
        EXPECT_NEAR(table.nu[i], 1.0, 1e-12);
    }
    EXPECT_LT(worst, 1e-8);
}

TEST(OrbitTable, DuffingEnergyIdentityAndInitialPoint) {
    const auto table = duffing_table();
    EXPECT_LT(table.max_energy_error(), 1e-8);
    const auto U = Potential::duffing();
    const auto t2 = build_orbit_table(U, {2.0, 5.0});
    EXPECT_NEAR(t2.x1(0, 0), std::sqrt(1.0 + std::sqrt(65.0)), 1e-12);
    EXPECT_EQ(t2.x2(0, 0), 0.0);
    EXPECT_LT(t2.max_energy_error(), 1e-8);
}

TEST(OrbitTable, RowsAreTwoPiPeriodic) {
    const auto table = duffing_table(20.0);
    for (std::size_t i = 0; i < table.rho_grid.size(); i += 7) {
        const double r = table.rho_grid[i];
        const auto a = table.at(0.7, r);
        const auto b = table.at(0.7 + 2 * pi, r);
        EXPECT_NEAR(a[0], b[0], 1e-8 * r);
        EXPECT_NEAR(a[1], b[1], 1e-8 * r * r);
        const auto exact = orbit_point(table.potential, 2 * pi, r);
        EXPECT_NEAR(exact[0], table.x1(i, 0), 1e-8 * r);
        EXPECT_NEAR(exact[1], table.x2(i, 0), 1e-8 * r * r);
    }
}

TEST(OrbitTable, RowsMatchExactOrbitPoints) {
    const auto table = duffing_table(20.0);
    for (std::size_t i = 0; i < table.rho_grid.size(); i += 5) {
        const double r = table.rho_grid[i];
        for (std::size_t j = 0; j < table.phi_count; j += 37) {
            const auto p = orbit_point(table.potential, table.phi(j), r);
            EXPECT_NEAR(p[0], table.x1(i, j), 1e-7 * r);
            EXPECT_NEAR(p[1], table.x2(i, j), 1e-7 * r * r);
        }
    }
}

TEST(OrbitTable, ExportImportRoundTrip) {
    const auto U = Potential::duffing();
    const auto table = build_orbit_table(U, geometric_rho_grid(1.0, 3.0, 4), {64, 4096});
    std::stringstream io;
    write_orbit_table(io, table);
    const auto back = read_orbit_table(io);
    EXPECT_EQ(back.rho_grid, table.rho_grid);
    EXPECT_EQ(back.phi_count, table.phi_count);
    EXPECT_EQ(back.X1, table.X1);
    EXPECT_EQ(back.X2, table.X2);
    EXPECT_EQ(back.nu, table.nu);
    EXPECT_DOUBLE_EQ(back.rho0(), table.rho0());
    std::stringstream bad("rho,phi\n");
    EXPECT_THROW(read_orbit_table(bad), ValidationError);
}

TEST(OrbitTable, CoarseStepsTripAccuracyCheck) {
    const auto U = Potential::duffing();
    EXPECT_THROW(build_orbit_table(U, {50.0}, {16, 16, 1e-12}), AccuracyError);
}

TEST(Invert, HarmonicAxisPoint) {
    const auto aa = action_angle(Potential::harmonic(), std::sqrt(2.0), 0.0);
    EXPECT_NEAR(aa.rho, 1.0, 1e-14);
    EXPECT_NEAR(aa.phi, 0.0, 1e-12);
}

TEST(Invert, DuffingRoundTrip) {
    const auto table = duffing_table(10.0);
    const auto x = orbit_point(table.potential, 1.3, 2.5);
    const auto aa = invert_orbit(table, x[0], x[1]);
    EXPECT_NEAR(aa.rho, 2.5, 1e-12);
    EXPECT_NEAR(aa.phi, 1.3, 1e-9);
}

TEST(Invert, DuffingVerticalAxis) {
    const auto U = Potential::duffing();
    const double v = 3.0;
    const auto aa = action_angle(U, 0.0, v);
    EXPECT_NEAR(aa.rho, std::pow(v * v / 2, 0.25), 1e-14);
    // Symmetric well: x1 = 0 with x2 > 0 is three quarters of the way round.
    EXPECT_NEAR(aa.phi, 1.5 * pi, 1e-9);
}

TEST(Invert, InsideSeparatrixIsDomainError) {
    EXPECT_THROW(action_angle(Potential::duffing(), 0.5, 0.0), DomainError);
}

TEST(Invert, ForwardInverseRoundTripProperty) {
    for_all(300, 17, [](Gen& g, std::size_t) {
        const int h = g.integer(0, 2);
        std::vector<double> u(static_cast<std::size_t>(2 * h + 2));
        for (auto& c : u) {
            c = g.uniform(-1.0, 1.0);
        }
        const Potential U(h, u);
        const double rho = U.rho0() * g.log_uniform(1.0, 200.0);
        const double phi = g.uniform(0.0, 2 * pi);
        const auto x = orbit_point(U, phi, rho);
        EXPECT_NEAR(U.energy(x[0], x[1]) / U.level(rho), 1.0, 1e-10);
        const auto aa = action_angle(U, x[0], x[1]);
        const auto y = orbit_point(U, aa.phi, aa.rho);
        const double scale = std::max(std::abs(x[0]), std::abs(x[1]));
        EXPECT_LT(std::hypot(y[0] - x[0], y[1] - x[1]) / std::max(scale, 1.0), 1e-6)
            << "h=" << h << " rho=" << rho << " phi=" << phi;
    });
}

TEST(LeadingOrbit, HarmonicCase) {
    const auto lo = leading_orbit(0);
    EXPECT_NEAR(lo.nu0, 1.0, 1e-12);
    EXPECT_NEAR(lo.T0, 2 * pi, 1e-12);
}

TEST(LeadingOrbit, DuffingFrequencyAndPeriod) {
    const auto lo = leading_orbit(1);
    EXPECT_NEAR(lo.T0, duffing_T0_elliptic(), 1e-12);
    EXPECT_NEAR(lo.nu0, 1.19814, 1e-5);
}

TEST(LeadingOrbit, DuffingMatchesCnClosedForm) {
    const auto lo = leading_orbit(1);
    const double k = 1.0 / std::sqrt(2.0);
    double worst = 0.0;
    for (std::size_t j = 0; j < lo.X10.size(); ++j) {
        const double phi = lo.X10.phi(j);
        const double cn = boost::math::jacobi_cn(k, lo.T0 * phi / (pi * std::sqrt(2.0)));
        worst = std::max(worst, std::abs(lo.X10[j] - std::sqrt(2.0) * cn));
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(LeadingOrbit, SatisfiesLimitingSystemAndEnergy) {
    for (int h : {0, 1, 2}) {
        const auto lo = leading_orbit(h);
        const auto d1 = lo.X10.derivative();
        const auto d2 = lo.X20.derivative();
        const double deg = 2.0 * h + 2.0;
        for (std::size_t j = 0; j < lo.X10.size(); ++j) {
            const double x = lo.X10[j];
            const double y = lo.X20[j];
            EXPECT_NEAR(lo.nu0 * d1[j], y, 1e-8);
            EXPECT_NEAR(lo.nu0 * d2[j], -std::pow(x, 2 * h + 1), 1e-8);
            EXPECT_NEAR(std::pow(x, deg) / deg + y * y / 2, 1.0, 1e-8);
        }
    }
}

TEST(DuffingFourier, ClosedAndProjectedAgree) {
    const auto lo = leading_orbit(1);
    for (int k = 1; k <= 5; ++k) {
        const auto f = duffing_fourier(lo, k);
        EXPECT_NEAR(f.q_closed, f.q_projected, 1e-6) << "k=" << k;
    }
    const auto f1 = duffing_fourier(lo, 1);
    const auto f2 = duffing_fourier(lo, 2);
    EXPECT_NEAR(f1.q_closed, 1.3506, 1e-4);
    EXPECT_NEAR(f2.q_closed, 0.0609, 1e-4);
    EXPECT_NEAR(f1.qtilde, 0.497, 1e-3);
}

}  // namespace
