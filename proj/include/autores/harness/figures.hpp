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
#include <optional>
#include <string>
#include <vector>

#include "autores/error.hpp"
#include "autores/harness/bundle.hpp"
#include "autores/harness/ensemble.hpp"
#include "autores/harness/scenario.hpp"
#include "autores/reduction/locking.hpp"

namespace autores::harness {

struct FigureOptions {
    std::size_t paths = 4;
    std::uint64_t seed = 1;
    std::optional<double> t_end;
    std::size_t threads = 0;
};

inline std::vector<std::string> figure_names() {
    return {"fig2a", "fig2b", "fig3", "fig4", "fig5"};
}

namespace detail {

struct FigureRun {
    std::string label;
    Scenario scenario;
};

/// Duffing threshold for the scenario's family, when it belongs to one.
inline std::optional<double> family_threshold(const Scenario& sc) {
    const auto p = sc.forcing.p();
    if (sc.potential.h != 1 || sc.forcing.l() != 0) {
        return std::nullopt;
    }
    if (p == 0 && sc.kappa % 2 == 1) {
        return reduction::duffing_threshold(sc.kappa, reduction::DuffingCase::p0_odd);
    }
    if (p == 1 && sc.kappa % 2 == 0) {
        return reduction::duffing_threshold(sc.kappa, reduction::DuffingCase::p1_even);
    }
    return std::nullopt;
}

inline std::vector<FigureRun> figure_runs(const std::string& name, const FigureOptions& opt) {
    std::vector<FigureRun> runs;
    auto with = [&](Scenario sc, double mu, double t0, double t_end) {
        sc.noise.mu = mu;
        sc.t0 = t0;
        sc.t_end = opt.t_end ? *opt.t_end : t_end;
        sc.seed = opt.seed;
        sc.paths = opt.paths;
        sc.threads = opt.threads;
        return sc;
    };
    if (name == "fig2a") {
        // Deterministic sweep of starting energies; curves are labeled by outcome.
        for (double v : {0.6, 0.9, 1.2, 1.5, 1.8, 2.1, 2.4, 2.7}) {
            auto sc = with(builtin("fex0"), 0.0, 1.0, 400.0);
            sc.name = "fex0-sweep";
            sc.paths = 1;
            sc.initial = {InitialRule::explicit_state, 0.0, v, 0.0};
            runs.push_back({"x2(t0)=" + format_double(v), sc});
        }
    } else if (name == "fig2b") {
        runs.push_back({"fex0 mu=0.2", with(builtin("fex0"), 0.2, 100.0, 2000.0)});
    } else if (name == "fig3") {
        runs.push_back({"ex1 Q=4 s=1/2", with(builtin("ex1"), 0.1, 100.0, 2000.0)});
    } else if (name == "fig4") {
        runs.push_back({"ex2 Q=8 s=1", with(builtin("ex2"), 0.1, 100.0, 1000.0)});
    } else if (name == "fig5") {
        runs.push_back({"ex3 Q=5 s=1", with(builtin("ex3"), 0.1, 100.0, 1000.0)});
    } else {
        throw ValidationError("unknown figure '" + name + "'");
    }
    return runs;
}

}  // namespace detail

/**
 * Per-path series plus reference curves for one figure, under out_dir/name.
 * reference.csv holds z0 t^(beta/h), the exact resonance curve and the locked
 * phase; metadata.json documents the columns and constants.
 */
inline json emit_figure_data(const std::string& name, const fs::path& out_dir,
                             const FigureOptions& options = {}) {
    const auto runs = detail::figure_runs(name, options);
    for (const auto& r : runs) {
        validate(r.scenario);
    }
    BundleWriter writer(out_dir / name);
    json curves = json::array();
    std::vector<std::string> warnings;
    std::size_t file_index = 0;
    const auto ps0 = prepare(runs.front().scenario);
    for (const auto& run : runs) {
        const auto ps = prepare(run.scenario);
        std::vector<std::pair<std::string, PathVerdict>> written;
        const auto base = file_index;
        run_ensemble(ps, [&](PathOutcome&& o) {
            const auto file = path_file_name(base + o.index);
            writer.write(file, path_csv(o));
            written.emplace_back(file, verdict_of(o));
            if (o.blew_up) {
                warnings.push_back(file + " stopped at the overflow guard");
            }
        });
        file_index += run.scenario.paths;
        std::sort(written.begin(), written.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
        for (const auto& [file, v] : written) {
            curves.push_back({{"file", file},
                              {"run", run.label},
                              {"verdict", v.captured ? "resonant" : "non-resonant"},
                              {"final_rho_ratio", number_json(v.final_rho_ratio)},
                              {"scenario", to_json(run.scenario)}});
        }
    }
    const auto& a = ps0.analysis();
    const auto& sc0 = runs.front().scenario;
    const double growth = numerics::to_double(sc0.forcing.beta) / a.h;
    std::string ref = "t,rho_leading,rho_kappa,Theta0\n";
    const double t_lo = sc0.t0;
    const double t_hi = ps0.t_end;
    constexpr int samples = 400;
    for (int i = 0; i <= samples; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / samples);
        ref += format_double(t) + "," + format_double(a.z0 * std::pow(t, growth)) + "," +
               format_double((*ps0.track)(t)) + "," + format_double(ps0.track_theta0) + "\n";
    }
    writer.write("reference.csv", ref);
    json locked = json::array();
    for (const auto& lp : a.locked_phases) {
        locked.push_back({{"Theta0", lp.theta0}, {"class", reduction::to_string(lp.kind)}});
    }
    json meta = {
        {"figure", name},
        {"constants",
         {{"z0", a.z0},
          {"theta0", ps0.track_theta0},
          {"nu0", a.nu0},
          {"Q_kappa", number_json(detail::family_threshold(sc0).value_or(NAN))},
          {"horizon", reduction::to_string(a.horizon)}}},
        {"locked_phases", locked},
        {"columns",
         {{"paths/path_NNNN.csv",
           {{"t", "time"},
            {"x1", "position"},
            {"x2", "velocity"},
            {"rho", "H(x1, x2)^(1/(2h+2)); empty below rho0"},
            {"phi_lifted", "continuous angle variable"},
            {"Theta", "phi - S(t) / kappa wrapped to (-pi, pi]"},
            {"R", "(rho / rho_kappa(t) - 1) t^A"}}},
          {"reference.csv",
           {{"t", "time"},
            {"rho_leading", "z0 t^(beta/h)"},
            {"rho_kappa", "solution of nu(rho) = S'(t) / kappa"},
            {"Theta0", "stable locked phase used for on-track starts"}}}}},
        {"curves", curves},
    };
    writer.write("metadata.json", meta.dump(2) + "\n");
    for (auto& w : warnings) {
        writer.warn(std::move(w));
    }
    writer.finish({{"figure", name}, {"seed", options.seed}});
    return meta;
}

}  // namespace autores::harness
