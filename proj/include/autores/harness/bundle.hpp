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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "autores/error.hpp"
#include "autores/harness/ensemble.hpp"
#include "autores/harness/scenario.hpp"
#include "autores/numerics/rational.hpp"
#include "autores/reduction/locking.hpp"

namespace autores::harness {

namespace fs = std::filesystem;

inline std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

/// JSON number, or null for NaN and a signed string for infinities.
inline json number_json(double x) {
    if (std::isnan(x)) {
        return nullptr;
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    return x;
}

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline json analysis_json(const reduction::ResonanceAnalysis& a,
                          const reduction::AveragedCoefficients& c) {
    const auto& e = a.exponents;
    auto exact = [](const numerics::Rational& r) {
        return json{{"exact", numerics::to_string(r)}, {"value", numerics::to_double(r)}};
    };
    json locked = json::array();
    for (const auto& lp : a.locked_phases) {
        locked.push_back({{"Theta0", lp.theta0},
                          {"P_prime", lp.p_prime},
                          {"J", lp.j_value},
                          {"class", reduction::to_string(lp.kind)}});
    }
    return {
        {"h", a.h},
        {"kappa", a.kappa},
        {"exponents",
         {{"a", exact(e.a)}, {"b", exact(e.b)}, {"M1", exact(e.M1)}, {"M2", exact(e.M2)},
          {"M", exact(e.M)}, {"A", exact(e.A)}, {"B", exact(e.B)}, {"C", exact(e.C)}}},
        {"ncond_ok", e.ncond_ok},
        {"adas_ok", e.adas_ok},
        {"resonant_shift", e.resonant_shift()},
        {"nu0", a.nu0},
        {"z0", a.z0},
        {"chi",
         {{"chi_1_BmA_0", c.chi_1_BmA_0},
          {"chi_1_B_0", c.chi_1_B_0},
          {"chi_2_A_0", c.chi_2_A_0},
          {"chi_2_2A_0", c.chi_2_2A_0}}},
        {"locked_phases", locked},
        {"drift", a.drift},
        {"horizon", reduction::to_string(a.horizon)},
        {"caveats",
         {"P and J keep only the leading terms of their large-time expansions; the time "
          "range over which this picture is quantitatively accurate is not estimated.",
          "R is reported at leading order, (rho / rho_kappa - 1) t^A; the averaged "
          "variable differs from it by O(tau^(-A/B))."}},
    };
}

inline json stats_json(const EnsembleStats& st) {
    json verdicts = json::array();
    for (const auto& v : st.verdicts) {
        verdicts.push_back({{"index", v.index},
                            {"captured", v.captured},
                            {"blew_up", v.blew_up},
                            {"sup_deviation", number_json(v.sup_deviation)},
                            {"exit_time", v.exit_time ? number_json(*v.exit_time) : json(nullptr)},
                            {"Theta0", number_json(v.theta0)},
                            {"final_rho_ratio", number_json(v.final_rho_ratio)}});
    }
    json exits = json::array();
    for (double t : st.exit_times) {
        exits.push_back(number_json(t));
    }
    return {{"path_count", st.path_count},
            {"captured_count", st.captured_count},
            {"capture_fraction", st.capture_fraction},
            {"standard_error", st.standard_error},
            {"sup_deviation_quantiles",
             {{"q50", number_json(st.sup_q50)},
              {"q90", number_json(st.sup_q90)},
              {"q99", number_json(st.sup_q99)}}},
            {"exit_times", exits},
            {"verdicts", verdicts}};
}

/// Columns t, x1, x2, rho, phi_lifted, Theta, R.
inline std::string path_csv(const PathOutcome& o) {
    std::string out = "t,x1,x2,rho,phi_lifted,Theta,R\n";
    const auto& p = o.path;
    const auto& ob = o.observables;
    for (std::size_t k = 0; k < p.times.size(); ++k) {
        out += format_double(p.times[k]) + "," + format_double(p.states[k][0]) + "," +
               format_double(p.states[k][1]) + "," + format_double(ob.rho[k]) + "," +
               format_double(ob.phi_lifted[k]) + "," + format_double(ob.Theta[k]) + "," +
               format_double(ob.R[k]) + "\n";
    }
    return out;
}

/// Writes files under one root and records their checksums for the manifest.
class BundleWriter {
public:
    explicit BundleWriter(fs::path root) : root_(std::move(root)) {
        std::error_code ec;
        fs::create_directories(root_, ec);
        if (ec) {
            throw ValidationError("cannot create output directory " + root_.string() + ": " +
                                  ec.message());
        }
    }

    void write(const std::string& relative, const std::string& content) {
        const fs::path target = root_ / relative;
        fs::create_directories(target.parent_path());
        std::ofstream out(target, std::ios::binary);
        out << content;
        if (!out) {
            throw Error("failed to write " + target.string());
        }
        files_[relative] = {sha256_hex(content), content.size()};
    }

    void warn(std::string message) { warnings_.push_back(std::move(message)); }

    /// manifest.json lists every file written so far, sorted by name.
    void finish(json header) {
        json files = json::array();
        for (const auto& [name, info] : files_) {
            files.push_back({{"path", name}, {"sha256", info.first}, {"bytes", info.second}});
        }
        header["files"] = files;
        header["warnings"] = warnings_;
        const std::string text = header.dump(2) + "\n";
        std::ofstream out(root_ / "manifest.json", std::ios::binary);
        out << text;
        if (!out) {
            throw Error("failed to write manifest");
        }
    }

    const fs::path& root() const noexcept { return root_; }

private:
    fs::path root_;
    std::map<std::string, std::pair<std::string, std::size_t>> files_;
    std::vector<std::string> warnings_;
};

inline std::string path_file_name(std::uint64_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "paths/path_%04llu.csv",
                  static_cast<unsigned long long>(index));
    return buf;
}

struct ScenarioResult {
    EnsembleStats stats;
    json analysis;
};

/**
 * Analysis, per-path CSVs, ensemble statistics and a manifest with checksums.
 * Validation happens before any file is touched.
 */
inline ScenarioResult run_scenario(const Scenario& sc, const fs::path& out_dir) {
    const auto ps = prepare(sc);
    BundleWriter writer(out_dir);
    ScenarioResult result;
    result.analysis = analysis_json(ps.analysis(), ps.reduction.coefficients);
    writer.write("analysis.json", result.analysis.dump(2) + "\n");
    std::vector<std::string> blowups;
    result.stats = run_ensemble(ps, [&](PathOutcome&& o) {
        writer.write(path_file_name(o.index), path_csv(o));
        if (o.blew_up) {
            blowups.push_back("path " + std::to_string(o.index) +
                              " exceeded the overflow guard at t = " +
                              format_double(o.path.times.back()) +
                              "; partial series kept and counted as not captured");
        }
    });
    std::sort(blowups.begin(), blowups.end());
    for (auto& w : blowups) {
        writer.warn(std::move(w));
    }
    writer.write("ensemble.json", stats_json(result.stats).dump(2) + "\n");
    writer.finish({{"scenario", to_json(sc)},
                   {"seed", sc.seed},
                   {"t_end", ps.t_end},
                   {"t_end_rule", ps.t_end_rule},
                   {"track_Theta0", ps.track_theta0},
                   {"estimated_steps_per_path",
                    simulate::estimate_steps({ps.potential, sc.forcing, sc.noise, sc.t0,
                                              {0.0, 0.0}, ps.t_end},
                                             sc.dt_control)}});
    return result;
}

}  // namespace autores::harness
