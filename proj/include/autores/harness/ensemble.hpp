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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>
#include <vector>

#include "autores/error.hpp"
#include "autores/harness/scenario.hpp"
#include "autores/numerics/random.hpp"
#include "autores/oscillator/orbit.hpp"
#include "autores/reduction/locking.hpp"
#include "autores/simulate/observables.hpp"
#include "autores/simulate/sde.hpp"

namespace autores::harness {

/// Scenario with its reduction, horizon and resonance track resolved. Read-only once built.
struct PreparedScenario {
    Scenario scenario;
    oscillator::Potential potential;
    reduction::Reduction reduction;
    double t_end = 0.0;
    std::string t_end_rule;
    double track_theta0 = 0.0;  ///< Theta used for on-track starts
    std::unique_ptr<reduction::ResonanceTrack> track;

    const reduction::ResonanceAnalysis& analysis() const { return reduction.analysis; }
};

/// Stable locked phase of smallest magnitude; 0 when none exists.
inline double track_phase(const reduction::ResonanceAnalysis& analysis) {
    double best = 0.0;
    double size = std::numeric_limits<double>::infinity();
    for (const auto& lp : analysis.locked_phases) {
        if (lp.kind == reduction::LockClass::stable_lock && std::abs(lp.theta0) < size) {
            size = std::abs(lp.theta0);
            best = lp.theta0;
        }
    }
    return best;
}

inline PreparedScenario prepare(const Scenario& sc) {
    validate(sc);
    PreparedScenario out{sc, sc.potential.build(), {}, 0.0, {}, 0.0, nullptr};
    out.reduction = reduction::reduce(sc.forcing, sc.noise, out.potential.h(), sc.kappa);
    const auto& analysis = out.reduction.analysis;
    if (sc.t_end) {
        out.t_end = *sc.t_end;
        out.t_end_rule = "explicit";
    } else if (sc.noise.mu > 0.0 && analysis.horizon != reduction::HorizonClass::infinite) {
        const auto hz = reduction::horizon(analysis, sc.noise.mu, sc.epsilon, sc.t0);
        out.t_end = std::min(sc.t0 + hz.T_tilde, horizon_cap);
        out.t_end_rule = "t0 + horizon length (epsilon = " + std::to_string(sc.epsilon) +
                         "), capped at 1e6";
    } else {
        out.t_end = horizon_cap;
        out.t_end_rule = "cap 1e6";
    }
    if (!(out.t_end > sc.t0)) {
        throw ValidationError("resolved t_end does not exceed t0");
    }
    out.track_theta0 = track_phase(analysis);
    out.track = std::make_unique<reduction::ResonanceTrack>(out.potential, sc.forcing, sc.kappa,
                                                            sc.t0, out.t_end);
    return out;
}

/// Initial state of path number index under the scenario's rule.
inline simulate::State initial_state(const PreparedScenario& ps, std::uint64_t index) {
    const auto& sc = ps.scenario;
    if (sc.initial.rule == InitialRule::explicit_state) {
        return {sc.initial.x1, sc.initial.x2};
    }
    const double rk = (*ps.track)(sc.t0);
    double R = 0.0;
    double theta = ps.track_theta0;
    if (sc.initial.rule == InitialRule::perturbed_track) {
        const numerics::RandomStream stream(sc.seed, index);
        const auto u = stream.uniforms(0, numerics::DrawPurpose::initial_condition);
        const double r = sc.initial.delta * std::sqrt(u[0]);
        const double a = 2.0 * std::numbers::pi * u[1];
        R = r * std::cos(a);
        theta += r * std::sin(a);
    }
    const double rho = rk * (1.0 + std::pow(sc.t0, -ps.analysis().A()) * R);
    const auto x = oscillator::orbit_point(ps.potential, sc.forcing.phase(sc.t0) / sc.kappa + theta,
                                           rho);
    return {x[0], x[1]};
}

struct PathOutcome {
    std::uint64_t index = 0;
    simulate::SamplePath path;
    simulate::ObservableSeries observables;
    simulate::CaptureVerdict verdict;
    bool blew_up = false;
    double theta0 = std::numeric_limits<double>::quiet_NaN();
    double final_rho_ratio = std::numeric_limits<double>::quiet_NaN();
};

/// Circular mean of Theta over the trailing window; NaN samples skipped.
inline double trailing_mean_phase(const simulate::ObservableSeries& obs, double fraction) {
    if (obs.t.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double t_w = obs.t.back() - fraction * (obs.t.back() - obs.t.front());
    double c = 0.0, s = 0.0;
    for (std::size_t k = 0; k < obs.t.size(); ++k) {
        if (obs.t[k] >= t_w && std::isfinite(obs.Theta[k])) {
            c += std::cos(obs.Theta[k]);
            s += std::sin(obs.Theta[k]);
        }
    }
    return (c == 0.0 && s == 0.0) ? std::numeric_limits<double>::quiet_NaN() : std::atan2(s, c);
}

inline PathOutcome simulate_path(const PreparedScenario& ps, std::uint64_t index) {
    const auto& sc = ps.scenario;
    PathOutcome out;
    out.index = index;
    simulate::SdeProblem problem{ps.potential, sc.forcing, sc.noise, sc.t0,
                                 initial_state(ps, index), ps.t_end};
    const numerics::RandomStream stream(sc.seed, index);
    try {
        out.path = simulate::integrate_sde(problem, stream, sc.dt_control);
    } catch (const simulate::BlowUpError& e) {
        out.path = e.partial();
        out.blew_up = true;
    }
    out.observables = simulate::observables(out.path, ps.potential, ps.analysis(), sc.forcing,
                                            *ps.track);
    if (!out.observables.rho_ratio.empty()) {
        out.final_rho_ratio = out.observables.rho_ratio.back();
    }
    out.theta0 = ps.analysis().nearest_stable(
        trailing_mean_phase(out.observables, sc.capture.window_fraction));
    out.verdict = simulate::detect_capture(out.observables.t, out.observables.Theta,
                                           out.observables.rho_ratio, out.theta0, sc.capture);
    if (out.blew_up) {
        // A path that stopped early never reached the horizon.
        out.verdict.captured = false;
        out.verdict.sup_deviation = std::numeric_limits<double>::infinity();
        if (!out.verdict.exit_time) {
            out.verdict.exit_time = out.path.times.back();
        }
    }
    return out;
}

struct PathVerdict {
    std::uint64_t index = 0;
    bool captured = false;
    bool blew_up = false;
    double sup_deviation = 0.0;
    std::optional<double> exit_time;
    double theta0 = 0.0;
    double final_rho_ratio = 0.0;
};

struct EnsembleStats {
    std::size_t path_count = 0;
    std::size_t captured_count = 0;
    double capture_fraction = 0.0;
    double standard_error = 0.0;  ///< binomial sqrt(f (1 - f) / n)
    double sup_q50 = 0.0;
    double sup_q90 = 0.0;
    double sup_q99 = 0.0;
    std::vector<double> exit_times;  ///< sorted, non-captured paths only
    std::vector<PathVerdict> verdicts;  ///< by path index
};

/// Nearest-rank quantile of sorted data.
inline double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const auto n = static_cast<double>(sorted.size());
    const auto rank = static_cast<std::size_t>(std::max(1.0, std::ceil(q * n)));
    return sorted[std::min(rank, sorted.size()) - 1];
}

/// Order-independent summary: verdicts are sorted by index before reduction.
inline EnsembleStats summarize(std::vector<PathVerdict> verdicts) {
    std::sort(verdicts.begin(), verdicts.end(),
              [](const PathVerdict& a, const PathVerdict& b) { return a.index < b.index; });
    EnsembleStats st;
    st.path_count = verdicts.size();
    std::vector<double> sups;
    for (const auto& v : verdicts) {
        st.captured_count += v.captured ? 1 : 0;
        sups.push_back(v.sup_deviation);
        if (v.exit_time) {
            st.exit_times.push_back(*v.exit_time);
        }
    }
    std::sort(sups.begin(), sups.end());
    std::sort(st.exit_times.begin(), st.exit_times.end());
    if (st.path_count > 0) {
        const double n = static_cast<double>(st.path_count);
        st.capture_fraction = static_cast<double>(st.captured_count) / n;
        st.standard_error = std::sqrt(st.capture_fraction * (1.0 - st.capture_fraction) / n);
    }
    st.sup_q50 = quantile(sups, 0.5);
    st.sup_q90 = quantile(sups, 0.9);
    st.sup_q99 = quantile(sups, 0.99);
    st.verdicts = std::move(verdicts);
    return st;
}

inline PathVerdict verdict_of(const PathOutcome& o) {
    return {o.index, o.verdict.captured, o.blew_up, o.verdict.sup_deviation,
            o.verdict.exit_time, o.theta0, o.final_rho_ratio};
}

/**
 * Runs paths 0..n-1 on a pool of worker threads. Each path owns its random
 * stream (substream = path index), and results land in index order, so the
 * output does not depend on the thread count. visit, when given, is called
 * once per finished path under a lock.
 */
template <class Visit>
EnsembleStats run_ensemble(const PreparedScenario& ps, Visit&& visit) {
    const std::size_t n = ps.scenario.paths;
    std::size_t threads = ps.scenario.threads;
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, n);
    std::vector<PathVerdict> verdicts(n);
    std::atomic<std::size_t> next{0};
    std::mutex lock;
    std::exception_ptr failure;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                auto outcome = simulate_path(ps, i);
                verdicts[i] = verdict_of(outcome);
                std::lock_guard guard(lock);
                visit(std::move(outcome));
            } catch (...) {
                std::lock_guard guard(lock);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(n);
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return summarize(std::move(verdicts));
}

inline EnsembleStats run_ensemble(const PreparedScenario& ps) {
    return run_ensemble(ps, [](PathOutcome&&) {});
}

inline EnsembleStats run_ensemble(const Scenario& sc) { return run_ensemble(prepare(sc)); }

}  // namespace autores::harness
