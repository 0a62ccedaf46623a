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
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "autores/error.hpp"
#include "autores/numerics/rational.hpp"
#include "autores/oscillator/potential.hpp"
#include "autores/reduction/locking.hpp"
#include "autores/reduction/specs.hpp"
#include "autores/simulate/observables.hpp"
#include "autores/simulate/sde.hpp"

namespace autores::harness {

using json = nlohmann::json;

enum class InitialRule { on_resonant_track, explicit_state, perturbed_track };

struct InitialCondition {
    InitialRule rule = InitialRule::on_resonant_track;
    double x1 = 0.0;
    double x2 = 0.0;
    double delta = 0.0;
};

struct PotentialConfig {
    int h = 1;
    std::vector<double> u{0.0, 0.0, -0.5, 0.0};
    std::optional<double> rho0;

    oscillator::Potential build() const { return oscillator::Potential(h, u, rho0); }
};

/// Everything one run needs; builtin names map to the Duffing examples.
struct Scenario {
    std::string name = "custom";
    PotentialConfig potential;
    reduction::ForcingSpec forcing;
    reduction::NoiseSpec noise;
    int kappa = 1;
    double t0 = 100.0;
    std::optional<double> t_end;  ///< unset: horizon rule
    double epsilon = 0.5;
    InitialCondition initial;
    std::size_t paths = 1;
    std::uint64_t seed = 1;
    simulate::DtControl dt_control{1e-2, 40.0, 0.25};
    simulate::CaptureOptions capture;
    std::size_t threads = 0;  ///< 0: hardware concurrency
};

inline constexpr double horizon_cap = 1e6;

namespace detail {

inline json rational_json(const numerics::Rational& r) { return numerics::to_string(r); }

inline numerics::Rational rational_from(const json& v, const char* key) {
    if (v.is_string()) {
        return numerics::parse_rational(v.get<std::string>());
    }
    if (v.is_number()) {
        return numerics::rational_from_double(v.get<double>());
    }
    throw ValidationError(std::string("'") + key + "' must be a number or a \"p/q\" string");
}

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
    if (!obj.is_object()) {
        throw ValidationError("'" + where + "' must be an object");
    }
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            throw ValidationError("unknown key '" + key + "' in " + where);
        }
    }
}

inline json terms_json(const reduction::TrigPolynomial& p) {
    json out = json::array();
    for (const auto& t : p.terms()) {
        out.push_back({{"i", t.i}, {"j", t.j}, {"harmonic", t.harmonic},
                       {"cos", t.cos_amp}, {"sin", t.sin_amp}});
    }
    return out;
}

inline reduction::TrigPolynomial terms_from(const json& arr, const std::string& where) {
    if (!arr.is_array()) {
        throw ValidationError("'" + where + ".terms' must be an array");
    }
    std::vector<reduction::PolyTerm> terms;
    for (const auto& t : arr) {
        reject_unknown(t, {"i", "j", "harmonic", "cos", "sin"}, where + ".terms[]");
        reduction::PolyTerm pt;
        pt.i = t.value("i", 0);
        pt.j = t.value("j", 0);
        pt.harmonic = t.value("harmonic", 1);
        pt.cos_amp = t.value("cos", 0.0);
        pt.sin_amp = t.value("sin", 0.0);
        terms.push_back(pt);
    }
    return reduction::TrigPolynomial(std::move(terms));
}

inline const char* rule_name(InitialRule r) {
    switch (r) {
        case InitialRule::on_resonant_track: return "on-resonant-track";
        case InitialRule::explicit_state: return "explicit";
        case InitialRule::perturbed_track: return "perturbed-track";
    }
    return "?";
}

}  // namespace detail

inline json to_json(const Scenario& s) {
    json potential = {{"h", s.potential.h}, {"u", s.potential.u}};
    if (s.potential.rho0) {
        potential["rho0"] = *s.potential.rho0;
    }
    return {
        {"name", s.name},
        {"potential", potential},
        {"forcing",
         {{"alpha", detail::rational_json(s.forcing.alpha)},
          {"beta", detail::rational_json(s.forcing.beta)},
          {"s", s.forcing.s},
          {"terms", detail::terms_json(s.forcing.Q)}}},
        {"noise",
         {{"gamma", detail::rational_json(s.noise.gamma)},
          {"mu", s.noise.mu},
          {"terms", detail::terms_json(s.noise.sigma)}}},
        {"kappa", s.kappa},
        {"t0", s.t0},
        {"t_end", s.t_end ? json(*s.t_end) : json(nullptr)},
        {"epsilon", s.epsilon},
        {"initial",
         {{"rule", detail::rule_name(s.initial.rule)},
          {"x1", s.initial.x1},
          {"x2", s.initial.x2},
          {"delta", s.initial.delta}}},
        {"ensemble", {{"paths", s.paths}, {"seed", s.seed}}},
        {"dt_control",
         {{"dt_max", s.dt_control.dt_max},
          {"osc_resolution", s.dt_control.osc_resolution},
          {"record_interval", s.dt_control.record_interval}}},
        {"capture",
         {{"window_fraction", s.capture.window_fraction},
          {"eps_theta", s.capture.eps_theta},
          {"eps_rho", s.capture.eps_rho}}},
        {"threads", s.threads},
    };
}

/// Duffing family dx2 = (x1 - x1^3 + t^-alpha Q x1^p cos S) dt + t^-gamma mu x1^n cos S dw.
inline Scenario duffing_scenario(std::string name, double Q, double s, numerics::Rational alpha,
                                 numerics::Rational beta, numerics::Rational gamma, int p, int n,
                                 int kappa, double mu) {
    Scenario sc;
    sc.name = std::move(name);
    sc.forcing.alpha = alpha;
    sc.forcing.beta = beta;
    sc.forcing.s = s;
    sc.forcing.Q = reduction::TrigPolynomial({{p, 0, 1, Q, 0.0}});
    sc.noise.gamma = gamma;
    sc.noise.mu = mu;
    sc.noise.sigma = reduction::TrigPolynomial({{n, 0, 1, 1.0, 0.0}});
    sc.kappa = kappa;
    return sc;
}

inline std::vector<std::string> builtin_names() { return {"ex1", "ex2", "ex3", "fex0"}; }

inline Scenario builtin(const std::string& name) {
    using numerics::Rational;
    if (name == "ex1") {
        return duffing_scenario("ex1", 4.0, 0.5, Rational(1, 3), Rational(1, 3), Rational(1, 6),
                                0, 0, 1, 0.05);
    }
    if (name == "ex2") {
        return duffing_scenario("ex2", 8.0, 1.0, Rational(1, 2), Rational(1, 2), Rational(3, 4),
                                1, 1, 2, 0.05);
    }
    if (name == "ex3") {
        return duffing_scenario("ex3", 5.0, 1.0, Rational(1, 2), Rational(1, 2), Rational(3, 2),
                                1, 2, 2, 0.05);
    }
    if (name == "fex0") {
        return duffing_scenario("fex0", 2.5, 1.0, Rational(1, 3), Rational(1, 3), Rational(1, 6),
                                0, 0, 1, 0.2);
    }
    throw ValidationError("unknown builtin scenario '" + name + "'");
}

/// Sets the amplitude of the single forcing term (the Duffing families have one).
inline void set_forcing_amplitude(Scenario& sc, double Q) {
    auto terms = sc.forcing.Q.terms();
    if (terms.size() != 1) {
        throw ValidationError("--Q needs a forcing with exactly one term");
    }
    terms[0].cos_amp = Q;
    terms[0].sin_amp = 0.0;
    sc.forcing.Q = reduction::TrigPolynomial(std::move(terms));
}

/**
 * Parses a scenario document. With "base" set, the builtin is serialized and
 * the document is applied to it as a JSON merge patch.
 */
inline Scenario scenario_from_json(json doc) {
    detail::reject_unknown(doc,
                           {"name", "base", "potential", "forcing", "noise", "kappa", "t0",
                            "t_end", "epsilon", "initial", "ensemble", "dt_control", "capture",
                            "threads"},
                           "scenario");
    json merged = to_json(Scenario{});
    if (doc.contains("base")) {
        merged = to_json(builtin(doc.at("base").get<std::string>()));
        doc.erase("base");
    }
    // Merge patch replaces arrays, so a term list in the document wins as a whole.
    merged.merge_patch(doc);
    const json& d = merged;
    try {
        Scenario sc;
        sc.name = d.at("name").get<std::string>();
        const auto& pot = d.at("potential");
        detail::reject_unknown(pot, {"h", "u", "rho0"}, "potential");
        sc.potential.h = pot.at("h").get<int>();
        sc.potential.u = pot.at("u").get<std::vector<double>>();
        if (pot.contains("rho0") && !pot.at("rho0").is_null()) {
            sc.potential.rho0 = pot.at("rho0").get<double>();
        }
        const auto& f = d.at("forcing");
        detail::reject_unknown(f, {"alpha", "beta", "s", "terms", "Q"}, "forcing");
        sc.forcing.alpha = detail::rational_from(f.at("alpha"), "alpha");
        sc.forcing.beta = detail::rational_from(f.at("beta"), "beta");
        sc.forcing.s = f.at("s").get<double>();
        sc.forcing.Q = detail::terms_from(f.at("terms"), "forcing");
        const auto& g = d.at("noise");
        detail::reject_unknown(g, {"gamma", "mu", "terms"}, "noise");
        sc.noise.gamma = detail::rational_from(g.at("gamma"), "gamma");
        sc.noise.mu = g.at("mu").get<double>();
        sc.noise.sigma = detail::terms_from(g.at("terms"), "noise");
        sc.kappa = d.at("kappa").get<int>();
        sc.t0 = d.at("t0").get<double>();
        if (d.contains("t_end") && !d.at("t_end").is_null()) {
            sc.t_end = d.at("t_end").get<double>();
        }
        sc.epsilon = d.at("epsilon").get<double>();
        const auto& ic = d.at("initial");
        detail::reject_unknown(ic, {"rule", "x1", "x2", "delta"}, "initial");
        const auto rule = ic.at("rule").get<std::string>();
        if (rule == "on-resonant-track") {
            sc.initial.rule = InitialRule::on_resonant_track;
        } else if (rule == "explicit") {
            sc.initial.rule = InitialRule::explicit_state;
        } else if (rule == "perturbed-track") {
            sc.initial.rule = InitialRule::perturbed_track;
        } else {
            throw ValidationError("unknown initial rule '" + rule + "'");
        }
        sc.initial.x1 = ic.value("x1", 0.0);
        sc.initial.x2 = ic.value("x2", 0.0);
        sc.initial.delta = ic.value("delta", 0.0);
        const auto& ens = d.at("ensemble");
        detail::reject_unknown(ens, {"paths", "seed"}, "ensemble");
        sc.paths = ens.at("paths").get<std::size_t>();
        sc.seed = ens.at("seed").get<std::uint64_t>();
        const auto& dc = d.at("dt_control");
        detail::reject_unknown(dc, {"dt_max", "osc_resolution", "record_interval"}, "dt_control");
        sc.dt_control.dt_max = dc.at("dt_max").get<double>();
        sc.dt_control.osc_resolution = dc.at("osc_resolution").get<double>();
        sc.dt_control.record_interval = dc.at("record_interval").get<double>();
        const auto& cap = d.at("capture");
        detail::reject_unknown(cap, {"window_fraction", "eps_theta", "eps_rho"}, "capture");
        sc.capture.window_fraction = cap.at("window_fraction").get<double>();
        sc.capture.eps_theta = cap.at("eps_theta").get<double>();
        sc.capture.eps_rho = cap.at("eps_rho").get<double>();
        sc.threads = d.at("threads").get<std::size_t>();
        if (f.contains("Q") && !f.at("Q").is_null()) {
            set_forcing_amplitude(sc, f.at("Q").get<double>());
        }
        return sc;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed scenario: ") + e.what());
    }
}

/// Checks everything that can be checked before compute starts.
inline void validate(const Scenario& sc) {
    const auto U = sc.potential.build();
    reduction::validate(sc.forcing, sc.noise, U.h());
    if (sc.kappa < 1) {
        throw ValidationError("kappa must be positive");
    }
    if (!(sc.t0 >= 1.0)) {
        throw ValidationError("t0 must be at least 1");
    }
    if (sc.t_end && !(*sc.t_end > sc.t0)) {
        throw ValidationError("t_end must exceed t0");
    }
    if (!(sc.epsilon > 0.0 && sc.epsilon < 1.0)) {
        throw ValidationError("epsilon must lie in (0, 1)");
    }
    if (sc.paths < 1) {
        throw ValidationError("an ensemble needs at least one path");
    }
    if (sc.initial.rule == InitialRule::perturbed_track && !(sc.initial.delta >= 0.0)) {
        throw ValidationError("perturbation radius must be nonnegative");
    }
    if (!(sc.dt_control.dt_max > 0.0) || !(sc.dt_control.osc_resolution > 0.0) ||
        !(sc.dt_control.record_interval >= 0.0)) {
        throw ValidationError("dt_max and osc_resolution must be positive");
    }
    if (!(sc.capture.window_fraction > 0.0 && sc.capture.window_fraction <= 1.0) ||
        !(sc.capture.eps_theta > 0.0) || !(sc.capture.eps_rho > 0.0)) {
        throw ValidationError("invalid capture thresholds");
    }
}

}  // namespace autores::harness
