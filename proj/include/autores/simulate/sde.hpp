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
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "autores/error.hpp"
#include "autores/numerics/random.hpp"
#include "autores/oscillator/potential.hpp"
#include "autores/reduction/specs.hpp"

namespace autores::simulate {

using State = std::array<double, 2>;

struct SdeProblem {
    oscillator::Potential potential;
    reduction::ForcingSpec forcing;
    reduction::NoiseSpec noise;
    double t0 = 1.0;
    State initial{0.0, 0.0};
    double t_end = 2.0;
};

struct DtControl {
    double dt_max = 1e-2;
    double osc_resolution = 40.0;
    /// Spacing of recorded samples; 0 records every step.
    double record_interval = 0.0;
};

/**
 * Recorded states of one path. winding[k] counts net crossings of the
 * positive x1 half-axis in the clockwise direction up to times[k], which
 * lets the angle be lifted without sampling every revolution.
 */
struct SamplePath {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<std::int64_t> winding;
    std::uint64_t master_seed = 0;
    std::uint64_t substream = 0;
    std::uint64_t steps = 0;
};

/// Raised when |x| exceeds the overflow guard; carries the path up to the last valid state.
class BlowUpError : public NumericalError {
public:
    BlowUpError(const std::string& what, SamplePath partial, double last_valid_time)
        : NumericalError(what), partial_(std::move(partial)), last_valid_time_(last_valid_time) {}
    const SamplePath& partial() const noexcept { return partial_; }
    double last_valid_time() const noexcept { return last_valid_time_; }

private:
    SamplePath partial_;
    double last_valid_time_;
};

inline constexpr double overflow_guard = 1e8;

/**
 * One step of x' = a(t, x) dt + b(t, x) dW: classical RK4 for the drift,
 * plus the Ito increment b(t_n, x_n) dW evaluated at the left endpoint.
 */
template <std::size_t N, class Drift, class Diffusion>
std::array<double, N> drift_rk4_em_step(Drift&& a, Diffusion&& b, double t,
                                        const std::array<double, N>& x, double dt, double dW) {
    auto axpy = [](const std::array<double, N>& y, double h, const std::array<double, N>& k) {
        std::array<double, N> r{};
        for (std::size_t i = 0; i < N; ++i) {
            r[i] = y[i] + h * k[i];
        }
        return r;
    };
    const auto k1 = a(t, x);
    const auto k2 = a(t + 0.5 * dt, axpy(x, 0.5 * dt, k1));
    const auto k3 = a(t + 0.5 * dt, axpy(x, 0.5 * dt, k2));
    const auto k4 = a(t + dt, axpy(x, dt, k3));
    const auto g = b(t, x);
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) + g[i] * dW;
    }
    return out;
}

inline double step_size(const SdeProblem& problem, const DtControl& control, double t) {
    const double rate = problem.forcing.phase_rate(t);
    return std::min(control.dt_max,
                    2.0 * std::numbers::pi / (control.osc_resolution * rate));
}

/// Closed-form count of steps the step-size rule takes on [t0, t_end].
inline double estimate_steps(const SdeProblem& problem, const DtControl& control) {
    const auto& f = problem.forcing;
    const double beta = numerics::to_double(f.beta);
    // Above t_c the oscillation constraint is the binding one.
    const double t_c = std::pow(2.0 * std::numbers::pi /
                                    (control.osc_resolution * control.dt_max * f.s * (beta + 1.0)),
                                1.0 / beta);
    const double a = problem.t0;
    const double b = problem.t_end;
    const double coarse = (std::clamp(t_c, a, b) - a) / control.dt_max;
    const double lo = std::clamp(t_c, a, b);
    const double fine = control.osc_resolution / (2.0 * std::numbers::pi) *
                        (f.phase(b) - f.phase(lo));
    return coarse + fine;
}

inline void validate(const SdeProblem& problem, const DtControl& control) {
    if (!(problem.t0 >= 1.0)) {
        throw ValidationError("t0 must be at least 1");
    }
    if (!(problem.t_end > problem.t0) || !std::isfinite(problem.t_end)) {
        throw ValidationError("t_end must be finite and exceed t0");
    }
    if (!(control.dt_max > 0.0) || !(control.osc_resolution > 0.0) ||
        !(control.record_interval >= 0.0)) {
        throw ValidationError("dt_max and osc_resolution must be positive");
    }
    if (!std::isfinite(problem.initial[0]) || !std::isfinite(problem.initial[1])) {
        throw ValidationError("initial state must be finite");
    }
}

/**
 * Integrates the full Ito system from t0 to t_end. Brownian increment k is
 * normal number k of the stream, so a path depends only on
 * (problem, stream identity, control).
 */
inline SamplePath integrate_sde(const SdeProblem& problem, const numerics::RandomStream& stream,
                                const DtControl& control = {}) {
    validate(problem, control);
    const auto& U = problem.potential;
    const auto& f = problem.forcing;
    const auto& g = problem.noise;
    const double alpha = numerics::to_double(f.alpha);
    const double gamma = numerics::to_double(g.gamma);
    const bool noisy = g.mu != 0.0;

    auto drift = [&](double t, const State& x) {
        const double S = f.phase(t);
        return State{x[1], -U.derivative(x[0]) + std::pow(t, -alpha) * f.Q(x[0], x[1], S)};
    };
    auto diffusion = [&](double t, const State& x) {
        if (!noisy) {
            return State{0.0, 0.0};
        }
        const double S = f.phase(t);
        return State{0.0, std::pow(t, -gamma) * g.mu * g.sigma(x[0], x[1], S)};
    };

    SamplePath path;
    path.master_seed = stream.master_seed();
    path.substream = stream.substream_index();
    double t = problem.t0;
    State x = problem.initial;
    std::int64_t winding = 0;
    path.times.push_back(t);
    path.states.push_back(x);
    path.winding.push_back(0);
    double next_record = t + control.record_interval;
    std::uint64_t k = 0;
    while (t < problem.t_end) {
        double dt = std::min(step_size(problem, control, t), problem.t_end - t);
        if (control.record_interval > 0.0) {
            dt = std::min(dt, next_record - t);
        }
        // Absorb a rounding-sized remainder into the last step.
        const bool last = problem.t_end - t - dt <= 1e-12 * problem.t_end;
        if (last) {
            dt = problem.t_end - t;
        }
        const double dW = noisy ? std::sqrt(dt) * stream.normal(k) : 0.0;
        const State y = drift_rk4_em_step<2>(drift, diffusion, t, x, dt, dW);
        ++k;
        const double t_new = last ? problem.t_end : t + dt;
        if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || std::abs(y[0]) > overflow_guard ||
            std::abs(y[1]) > overflow_guard) {
            path.steps = k;
            throw BlowUpError("state left |x| <= 1e8 after t = " + std::to_string(t),
                              std::move(path), t);
        }
        if (y[0] > 0.0) {
            if (x[1] > 0.0 && y[1] <= 0.0) {
                ++winding;
            } else if (x[1] <= 0.0 && y[1] > 0.0) {
                --winding;
            }
        }
        x = y;
        t = t_new;
        const bool record = control.record_interval <= 0.0 || t >= next_record - 1e-12 ||
                            t == problem.t_end;
        if (record) {
            path.times.push_back(t);
            path.states.push_back(x);
            path.winding.push_back(winding);
            while (control.record_interval > 0.0 && next_record <= t + 1e-12) {
                next_record += control.record_interval;
            }
        }
    }
    path.steps = k;
    return path;
}

}  // namespace autores::simulate
