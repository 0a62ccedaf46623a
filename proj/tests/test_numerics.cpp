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
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "autores/numerics/periodic.hpp"
#include "autores/numerics/quadrature.hpp"
#include "autores/numerics/random.hpp"
#include "autores/numerics/rational.hpp"
#include "autores/numerics/roots.hpp"
#include "autores/oscillator/leading_orbit.hpp"
#include "support.hpp"

namespace {

using namespace autores;
using namespace autores::numerics;
using autores::testing::for_all;
using autores::testing::Gen;
constexpr double pi = std::numbers::pi;

// Independent return-time oracle: RK4 on x1' = x2, x2' = -U'(x1) from (x+, 0),
// with the second downward crossing of x2 = 0 located by re-stepping from the
// last state before it.
double duffing_return_time(double x_plus, double dt) {
    auto f = [](const std::array<double, 2>& y) {
        return std::array<double, 2>{y[1], -(y[0] * y[0] * y[0] - y[0])};
    };
    auto step = [&](const std::array<double, 2>& y, double h) {
        auto add = [](std::array<double, 2> a, double s, const std::array<double, 2>& b) {
            return std::array<double, 2>{a[0] + s * b[0], a[1] + s * b[1]};
        };
        const auto k1 = f(y);
        const auto k2 = f(add(y, h / 2, k1));
        const auto k3 = f(add(y, h / 2, k2));
        const auto k4 = f(add(y, h, k3));
        return std::array<double, 2>{y[0] + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
                                     y[1] + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
    };
    std::array<double, 2> y{x_plus, 0.0};
    double t = 0.0;
    bool came_up = false;
    for (;;) {
        const auto next = step(y, dt);
        if (next[1] > 0.0) {
            came_up = true;
        }
        if (came_up && next[1] <= 0.0) {
            double h = dt * y[1] / (y[1] - next[1]);
            for (int it = 0; it < 20; ++it) {
                const auto z = step(y, h);
                const double slope = f(z)[1];
                const double dh = -z[1] / slope;
                h += dh;
                if (std::abs(dh) < 1e-15) {
                    break;
                }
            }
            return t + h;
        }
        y = next;
        t += dt;
    }
}

TEST(Quadrature, ConstantFactorGivesPi) {
    EXPECT_NEAR(integrate_singular([](double) { return 1.0; }, -1.0, 1.0), pi, 1e-14);
}

TEST(Quadrature, OddFactorVanishes) {
    EXPECT_NEAR(integrate_singular([](double x) { return x; }, -1.0, 1.0), 0.0, 1e-14);
}

TEST(Quadrature, ConstantFactorIsPiOnEveryInterval) {
    for_all(200, 11, [](Gen& g, std::size_t) {
        const double a = g.uniform(-1e3, 1e3);
        const double b = a + g.log_uniform(1e-6, 1e4);
        EXPECT_NEAR(integrate_singular([](double) { return 1.0; }, a, b), pi, 1e-12)
            << "a=" << a << " b=" << b;
    });
}

TEST(Quadrature, SmoothFactorMatchesClosedForm) {
    // Integral of x^2 / sqrt(1 - x^2) over [-1, 1] is pi / 2.
    EXPECT_NEAR(integrate_singular([](double x) { return x * x; }, -1.0, 1.0), pi / 2, 1e-14);
}

TEST(Quadrature, DuffingPeriodMatchesReturnTime) {
    // At rho = 2, E - U = (x+^2 - x^2)(x^2 + c) / 4 with c = sqrt(65) - 1, so the
    // period integrand sqrt(2) / sqrt(E - U) has smooth factor 2 sqrt(2) / sqrt(x^2 + c).
    const double x_plus = std::sqrt(1.0 + std::sqrt(65.0));
    const double c = std::sqrt(65.0) - 1.0;
    const double T = integrate_singular(
        [&](double x) { return 2.0 * std::sqrt(2.0) / std::sqrt(x * x + c); }, -x_plus, x_plus);
    EXPECT_NEAR(T / duffing_return_time(x_plus, 1e-4), 1.0, 1e-6);
}

TEST(Quadrature, NonFiniteFactorReportsAbscissa) {
    try {
        integrate_singular([](double x) { return x > 0.5 ? NAN : 1.0; }, 0.0, 1.0);
        FAIL() << "expected EvaluationError";
    } catch (const EvaluationError& e) {
        EXPECT_GT(e.abscissa(), 0.5);
    }
}

TEST(Quadrature, SpecValidation) {
    EXPECT_THROW(QuadratureSpec::singular(8).validate(), ValidationError);
    EXPECT_THROW(QuadratureSpec::periodic(33).validate(), ValidationError);
    EXPECT_NO_THROW(QuadratureSpec::periodic(32).validate());
}

TEST(Roots, SquareRootOfTwo) {
    EXPECT_NEAR(solve_scalar([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-12),
                std::sqrt(2.0), 1e-11);
}

TEST(Roots, DuffingTurningPointQuartic) {
    const double x = solve_scalar(
        [](double v) { return v * v * v * v / 4 - v * v / 2 - 16.0; }, 2.0, 4.0, 1e-12);
    EXPECT_NEAR(x, std::sqrt(1.0 + std::sqrt(65.0)), 1e-11);
    EXPECT_NEAR(x, 3.0104, 5e-5);
}

TEST(Roots, NoSignChangeIsBracketError) {
    EXPECT_THROW(solve_scalar([](double x) { return x * x + 1.0; }, -1.0, 1.0), BracketError);
}

TEST(Roots, ResidualBoundedBySlopeTimesTolerance) {
    // Cubics (x - r)(x^2 + b x + c) with b^2 < 4c have r as their only real root.
    for_all(300, 23, [](Gen& g, std::size_t) {
        const double r = g.uniform(-5.0, 5.0);
        const double b = g.uniform(-2.0, 2.0);
        const double c = b * b / 4 + g.uniform(0.1, 4.0);
        const double tol = 1e-12;
        auto f = [&](double x) { return (x - r) * (x * x + b * x + c); };
        const double x = solve_scalar(f, r - g.uniform(0.1, 3.0), r + g.uniform(0.1, 3.0), tol);
        const double slope = std::abs(r * r + b * r + c);
        EXPECT_LE(std::abs(f(x)), slope * tol * 10) << "r=" << r;
    });
}

TEST(PeriodicAverage, CosineHasZeroMean) {
    EXPECT_NEAR(periodic_average([](double z) { return std::cos(z); }, 1), 0.0, 1e-15);
}

TEST(PeriodicAverage, CosineSquaredHasMeanHalf) {
    EXPECT_NEAR(periodic_average([](double z) { return std::cos(z) * std::cos(z); }, 1), 0.5,
                1e-15);
}

TEST(PeriodicAverage, LeadingOrbitFirstHarmonic) {
    const auto lo = oscillator::leading_orbit(1);
    const double avg =
        periodic_average([&](double z) { return lo.X10(z) * std::cos(z); }, 1);
    const double q1 = oscillator::duffing_fourier(lo, 1).q_closed;
    EXPECT_NEAR(avg, q1 / 2, 1e-9);
    EXPECT_NEAR(avg, 0.6753, 1e-4);
}

TEST(PeriodicAverage, FiniteFourierSeriesReturnsConstantTerm) {
    for_all(100, 31, [](Gen& g, std::size_t) {
        const int kappa = g.integer(1, 4);
        const int top = g.integer(1, 40);
        std::vector<double> ca(top + 1), sa(top + 1);
        for (int k = 0; k <= top; ++k) {
            ca[k] = g.uniform(-1.0, 1.0);
            sa[k] = g.uniform(-1.0, 1.0);
        }
        // Harmonics of a 2 pi kappa-periodic function are exp(i k z / kappa).
        auto f = [&](double z) {
            double v = ca[0];
            for (int k = 1; k <= top; ++k) {
                v += ca[k] * std::cos(k * z / kappa) + sa[k] * std::sin(k * z / kappa);
            }
            return v;
        };
        const std::size_t nodes = 2 * static_cast<std::size_t>(top / kappa + 2) + 16;
        EXPECT_NEAR(periodic_average(f, kappa, QuadratureSpec::periodic(nodes)), ca[0], 1e-12);
    });
}

TEST(PeriodicSamples, SpectralDerivativeOfTrigPolynomial) {
    const auto s = PeriodicSamples::sample(
        [](double p) { return std::sin(3 * p) + 0.5 * std::cos(p); }, 64);
    const auto d = s.derivative();
    for (std::size_t j = 0; j < d.size(); ++j) {
        const double p = s.phi(j);
        EXPECT_NEAR(d[j], 3 * std::cos(3 * p) - 0.5 * std::sin(p), 1e-12);
    }
    EXPECT_NEAR(s.interpolate(0.3), std::sin(0.9) + 0.5 * std::cos(0.3), 1e-12);
}

TEST(Rational, ParsesFractionsAndDecimals) {
    EXPECT_EQ(parse_rational("1/3"), Rational(1, 3));
    EXPECT_EQ(parse_rational("0.75"), Rational(3, 4));
    EXPECT_EQ(rational_from_double(1.0 / 6.0), Rational(1, 6));
    EXPECT_THROW(parse_rational("x/2"), ValidationError);
}

// Known-answer vectors for Philox4x64-10.
TEST(Philox, KnownAnswers) {
    const auto zero = philox4x64({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(zero[0], 0x16554d9eca36314cULL);
    EXPECT_EQ(zero[1], 0xdb20fe9d672d0fdcULL);
    EXPECT_EQ(zero[2], 0xd7e772cee186176bULL);
    EXPECT_EQ(zero[3], 0x7e68b68aec7ba23bULL);
    const auto keyed = philox4x64({5, 0, 0, 0}, {0x1234567890abcdefULL, 0});
    EXPECT_EQ(keyed[0], 0x5152961b680922f9ULL);
    EXPECT_EQ(keyed[1], 0xb4ebda0ff5ef9851ULL);
    EXPECT_EQ(keyed[2], 0x58e675f51824090aULL);
    EXPECT_EQ(keyed[3], 0xefe736a4eedd09aeULL);
}

TEST(RandomStream, EqualIdentityGivesEqualSequence) {
    for_all(20, 41, [](Gen& g, std::size_t) {
        const auto seed = g.bits();
        const auto sub = g.bits() % 1000;
        RandomStream a(seed, sub), b(seed, sub);
        for (std::uint64_t k = 0; k < 256; ++k) {
            ASSERT_EQ(a.normal(k), b.normal(k));
        }
    });
}

TEST(RandomStream, SubstreamsAndPurposesDiffer) {
    RandomStream a(7, 0), b(7, 1);
    int equal = 0;
    for (std::uint64_t k = 0; k < 1000; ++k) {
        equal += a.normal(k) == b.normal(k);
        equal += a.normal(k) == a.normal(k, DrawPurpose::initial_condition);
    }
    EXPECT_EQ(equal, 0);
}

TEST(RandomStream, NormalMomentsAndIndependence) {
    RandomStream a(2026, 3), b(2026, 4);
    const std::size_t n = 200000;
    double m = 0, m2 = 0, cross = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
        const double x = a.normal(k);
        m += x;
        m2 += x * x;
        cross += x * b.normal(k);
    }
    const double se = 1.0 / std::sqrt(static_cast<double>(n));
    EXPECT_LT(std::abs(m / n), 5 * se);
    EXPECT_LT(std::abs(m2 / n - 1.0), 5 * std::sqrt(2.0) * se);
    EXPECT_LT(std::abs(cross / n), 5 * se);
}

TEST(RandomStream, SameSequenceFromAnyThread) {
    RandomStream s(99, 12);
    std::vector<double> serial(4096);
    for (std::uint64_t k = 0; k < serial.size(); ++k) {
        serial[k] = s.normal(k);
    }
    std::vector<double> threaded(serial.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < 4; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t k = w; k < threaded.size(); k += 4) {
                    threaded[k] = s.normal(k);
                }
            });
        }
    }
    EXPECT_EQ(serial, threaded);
}

}  // namespace
