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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "autores/autores.hpp"
#include "autores/harness/bundle.hpp"
#include "autores/harness/ensemble.hpp"
#include "autores/harness/figures.hpp"
#include "autores/harness/scenario.hpp"

namespace {

using autores::harness::json;

struct CommonFlags {
    std::string config;
    std::string scenario = "ex1";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::string out;
    std::optional<double> t0;
    std::optional<double> t_end;
    std::optional<double> dt_max;
    std::optional<double> osc_resolution;
    std::optional<double> record_interval;
    std::optional<double> Q;
    std::optional<double> s;
    std::optional<double> mu;
    std::optional<int> kappa;
    std::optional<std::size_t> threads;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "JSON scenario file");
    cmd->add_option("--scenario", f.scenario, "builtin scenario: ex1, ex2, ex3, fex0");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--paths", f.paths, "number of sample paths");
    cmd->add_option("--out", f.out, "output directory (file for 'orbit')");
    cmd->add_option("--t0", f.t0, "start time (>= 1)");
    cmd->add_option("--t-end", f.t_end, "end time; default follows the stability horizon");
    cmd->add_option("--dt-max", f.dt_max, "largest SDE step");
    cmd->add_option("--osc-resolution", f.osc_resolution, "steps per excitation period");
    cmd->add_option("--record-interval", f.record_interval, "spacing of recorded samples");
    cmd->add_option("--Q", f.Q, "forcing amplitude (single-term forcings)");
    cmd->add_option("--s", f.s, "chirp rate s");
    cmd->add_option("--mu", f.mu, "noise intensity");
    cmd->add_option("--kappa", f.kappa, "resonance order");
    cmd->add_option("--threads", f.threads, "worker threads (0: all cores)");
}

autores::harness::Scenario load_scenario(const CommonFlags& f) {
    using namespace autores::harness;
    Scenario sc;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) {
            throw autores::ValidationError("cannot open config " + f.config);
        }
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw autores::ValidationError("config is not valid JSON: " + std::string(e.what()));
        }
        sc = scenario_from_json(std::move(doc));
    } else {
        sc = builtin(f.scenario);
    }
    if (f.seed) sc.seed = *f.seed;
    if (f.paths) sc.paths = *f.paths;
    if (f.t0) sc.t0 = *f.t0;
    if (f.t_end) sc.t_end = *f.t_end;
    if (f.dt_max) sc.dt_control.dt_max = *f.dt_max;
    if (f.osc_resolution) sc.dt_control.osc_resolution = *f.osc_resolution;
    if (f.record_interval) sc.dt_control.record_interval = *f.record_interval;
    if (f.Q) set_forcing_amplitude(sc, *f.Q);
    if (f.s) sc.forcing.s = *f.s;
    if (f.mu) sc.noise.mu = *f.mu;
    if (f.kappa) sc.kappa = *f.kappa;
    if (f.threads) sc.threads = *f.threads;
    validate(sc);
    return sc;
}

void announce_work(const autores::harness::PreparedScenario& ps) {
    const auto& sc = ps.scenario;
    const double steps = autores::simulate::estimate_steps(
        {ps.potential, sc.forcing, sc.noise, sc.t0, {0.0, 0.0}, ps.t_end}, sc.dt_control);
    std::fprintf(stderr, "t in [%g, %g] (%s); about %.3g steps per path, %zu path(s)\n", sc.t0,
                 ps.t_end, ps.t_end_rule.c_str(), steps, sc.paths);
}

void emit(const json& doc, const std::string& file) {
    if (file.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(file);
    out << doc.dump(2) << "\n";
    if (!out) {
        throw autores::Error("failed to write " + file);
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Resonance capture under chirped excitation and multiplicative noise"};
    app.require_subcommand(1);

    CommonFlags orbit_f, reduce_f, sim_f, ens_f;
    double rho_min = 0.0, rho_max = 100.0;
    int per_decade = 64;
    std::size_t phi_count = 512;
    auto* orbit = app.add_subcommand("orbit", "build and export an orbit table");
    add_common(orbit, orbit_f);
    orbit->add_option("--rho-min", rho_min, "smallest amplitude (default rho0)");
    orbit->add_option("--rho-max", rho_max, "largest amplitude");
    orbit->add_option("--per-decade", per_decade, "amplitudes per decade");
    orbit->add_option("--phi-count", phi_count, "angle samples per orbit");

    double epsilon = 0.5;
    auto* reduce = app.add_subcommand("reduce", "print the resonance analysis as JSON");
    add_common(reduce, reduce_f);
    reduce->add_option("--epsilon", epsilon, "horizon exponent parameter in (0, 1)");

    auto* simulate = app.add_subcommand("simulate", "integrate one sample path");
    add_common(simulate, sim_f);

    auto* ensemble = app.add_subcommand("ensemble", "Monte Carlo capture statistics");
    add_common(ensemble, ens_f);

    std::string figure_name;
    std::string figure_out = "figures";
    autores::harness::FigureOptions fig_opt;
    std::optional<double> fig_t_end;
    auto* figure = app.add_subcommand("figure", "write figure reproduction data");
    figure->add_option("name", figure_name, "fig2a, fig2b, fig3, fig4 or fig5")->required();
    figure->add_option("--out", figure_out, "output directory");
    figure->add_option("--paths", fig_opt.paths, "paths per run");
    figure->add_option("--seed", fig_opt.seed, "master seed");
    figure->add_option("--t-end", fig_t_end, "end time");
    figure->add_option("--threads", fig_opt.threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    using namespace autores;
    if (*orbit) {
        const auto sc = load_scenario(orbit_f);
        const auto U = sc.potential.build();
        const double lo = rho_min > 0.0 ? rho_min : U.rho0();
        const auto table = oscillator::build_orbit_table(
            U, oscillator::geometric_rho_grid(lo, rho_max, per_decade), {phi_count, 8 * phi_count});
        if (orbit_f.out.empty()) {
            oscillator::write_orbit_table(std::cout, table);
        } else {
            std::ofstream out(orbit_f.out);
            oscillator::write_orbit_table(out, table);
            if (!out) {
                throw Error("failed to write " + orbit_f.out);
            }
        }
        std::fprintf(stderr, "%zu amplitudes, max relative energy error %.3e\n",
                     table.rho_grid.size(), table.max_energy_error());
        return 0;
    }
    if (*reduce) {
        const auto sc = load_scenario(reduce_f);
        const auto red = reduction::reduce(sc.forcing, sc.noise, sc.potential.h, sc.kappa);
        auto doc = harness::analysis_json(red.analysis, red.coefficients);
        if (sc.noise.mu > 0.0) {
            const auto hz = reduction::horizon(red.analysis, sc.noise.mu, epsilon, sc.t0);
            doc["horizon_length"] = {{"epsilon", epsilon},
                                     {"t_star", sc.t0},
                                     {"T_tilde", harness::number_json(hz.T_tilde)}};
        }
        doc["scenario"] = harness::to_json(sc);
        emit(doc, reduce_f.out);
        return 0;
    }
    if (*simulate || *ensemble) {
        auto& f = *simulate ? sim_f : ens_f;
        auto sc = load_scenario(f);
        if (*simulate) {
            sc.paths = 1;
        }
        const auto ps = harness::prepare(sc);
        announce_work(ps);
        if (f.out.empty() && *simulate) {
            f.out = "out/" + sc.name;
        }
        json summary;
        if (f.out.empty()) {
            summary = harness::stats_json(harness::run_ensemble(ps));
        } else {
            const auto res = harness::run_scenario(sc, f.out);
            summary = harness::stats_json(res.stats);
            summary["out"] = f.out;
        }
        if (*simulate) {
            summary.erase("exit_times");
        }
        std::cout << summary.dump(2) << "\n";
        return 0;
    }
    if (*figure) {
        fig_opt.t_end = fig_t_end;
        const auto meta = harness::emit_figure_data(figure_name, figure_out, fig_opt);
        std::cout << meta["constants"].dump(2) << "\n";
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const autores::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const autores::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "failure: %s\n", e.what());
        return 3;
    }
}
