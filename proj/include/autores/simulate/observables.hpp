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
#include <optional>
#include <vector>

#include "autores/error.hpp"
#include "autores/oscillator/orbit.hpp"
#include "autores/oscillator/orbit_table.hpp"
#include "autores/reduction/analysis.hpp"
#include "autores/reduction/specs.hpp"
#include "autores/simulate/sde.hpp"

namespace autores::simulate {

/// Leading-order observables; samples outside the admissible region are NaN.
struct ObservableSeries {
    std::vector<double> t;
    std::vector<double> rho;
    std::vector<double> phi_lifted;
    std::vector<double> Theta;
    std::vector<double> R;
    std::vector<double> rho_ratio;  ///< rho / rho_kappa(t)
};

/// Continuous angle 2 pi * winding + phi; NaN where rho < rho0.
inline std::vector<double> lifted_phase(const SamplePath& path, const oscillator::Potential& U) {
    std::vector<double> out(path.times.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t k = 0; k < path.times.size(); ++k) {
        const auto& x = path.states[k];
        const double rho = U.amplitude(x[0], x[1]);
        if (!(rho >= U.rho0())) {
            continue;
        }
        const auto aa = oscillator::action_angle(U, x[0], x[1]);
        out[k] = 2.0 * std::numbers::pi * static_cast<double>(path.winding[k]) + aa.phi;
    }
    return out;
}

inline ObservableSeries observables(const SamplePath& path, const oscillator::Potential& U,
                                    const reduction::ResonanceAnalysis& analysis,
                                    const reduction::ForcingSpec& forcing,
                                    const reduction::ResonanceTrack& track) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    const std::size_t n = path.times.size();
    ObservableSeries out;
    out.t = path.times;
    out.rho.assign(n, nan);
    out.Theta.assign(n, nan);
    out.R.assign(n, nan);
    out.rho_ratio.assign(n, nan);
    out.phi_lifted = lifted_phase(path, U);
    const double A = analysis.A();
    for (std::size_t k = 0; k < n; ++k) {
        const double t = path.times[k];
        const auto& x = path.states[k];
        const double rho = U.amplitude(x[0], x[1]);
        if (!(rho >= U.rho0())) {
            continue;
        }
        const double rk = track(t);
        out.rho[k] = rho;
        out.rho_ratio[k] = rho / rk;
        out.R[k] = (rho / rk - 1.0) * std::pow(t, A);
        const double theta = out.phi_lifted[k] - forcing.phase(t) / analysis.kappa;
        out.Theta[k] = reduction::wrap_angle(theta);
    }
    return out;
}

/// Same, with the resonance track built over the path's time span.
inline ObservableSeries observables(const SamplePath& path, const oscillator::OrbitTable& table,
                                    const reduction::ResonanceAnalysis& analysis,
                                    const reduction::ForcingSpec& forcing) {
    if (path.times.empty()) {
        throw ValidationError("empty path");
    }
    const reduction::ResonanceTrack track(table.potential, forcing, analysis.kappa,
                                          path.times.front(),
                                          std::max(path.times.back(), path.times.front() * 1.01));
    return observables(path, table.potential, analysis, forcing, track);
}

struct CaptureOptions {
    double window_fraction = 0.2;
    double eps_theta = 0.5;
    double eps_rho = 0.2;
};

struct CaptureVerdict {
    bool captured = false;
    double sup_deviation = 0.0;
    std::optional<double> exit_time;
};

/**
 * Captured iff over the trailing window both |Theta - Theta0| < eps_theta and
 * |rho / rho_kappa - 1| < eps_rho. NaN samples count as violations.
 * exit_time is the first sample after the last one that met both bounds.
 */
inline CaptureVerdict detect_capture(const std::vector<double>& t,
                                     const std::vector<double>& theta,
                                     const std::vector<double>& rho_ratio, double Theta0,
                                     const CaptureOptions& options = {}) {
    if (t.empty() || theta.size() != t.size() || rho_ratio.size() != t.size()) {
        throw ValidationError("capture detection needs equal-length nonempty series");
    }
    if (!(options.window_fraction > 0.0 && options.window_fraction <= 1.0) ||
        !(options.eps_theta > 0.0) || !(options.eps_rho > 0.0)) {
        throw ValidationError("invalid capture thresholds");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    auto dev_theta = [&](std::size_t k) {
        const double d = std::abs(reduction::wrap_angle(theta[k] - Theta0));
        return std::isfinite(d) ? d : inf;
    };
    auto dev_rho = [&](std::size_t k) {
        const double d = std::abs(rho_ratio[k] - 1.0);
        return std::isfinite(d) ? d : inf;
    };
    auto inside = [&](std::size_t k) {
        return dev_theta(k) < options.eps_theta && dev_rho(k) < options.eps_rho;
    };
    const double t_window = t.back() - options.window_fraction * (t.back() - t.front());
    double sup_theta = 0.0;
    double sup_rho = 0.0;
    std::optional<std::size_t> first_bad_in_window;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < t_window) {
            continue;
        }
        sup_theta = std::max(sup_theta, dev_theta(k));
        sup_rho = std::max(sup_rho, dev_rho(k));
        if (!first_bad_in_window && !inside(k)) {
            first_bad_in_window = k;
        }
    }
    CaptureVerdict v;
    v.sup_deviation = std::max(sup_theta / options.eps_theta, sup_rho / options.eps_rho);
    v.captured = sup_theta < options.eps_theta && sup_rho < options.eps_rho;
    if (v.captured) {
        return v;
    }
    std::optional<std::size_t> last_good;
    for (std::size_t k = t.size(); k-- > 0;) {
        if (inside(k)) {
            last_good = k;
            break;
        }
    }
    if (!last_good) {
        v.exit_time = t.front();
    } else if (*last_good + 1 < t.size()) {
        v.exit_time = t[*last_good + 1];
    } else {
        v.exit_time = t[*first_bad_in_window];
    }
    return v;
}

}  // namespace autores::simulate
