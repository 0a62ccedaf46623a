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
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "autores/error.hpp"
#include "autores/oscillator/orbit.hpp"
#include "autores/oscillator/potential.hpp"

namespace autores::oscillator {

struct OrbitTableOptions {
    std::size_t phi_count = 512;
    std::size_t steps_per_period = 4096;
    double energy_tolerance = 1e-8;
};

/**
 * Sampled action-angle maps on a (rho, phi) grid, row-major in rho.
 *
 * Rows come from fixed-step RK4 runs of the limiting system, so the energy
 * identity of each row doubles as the accuracy check of the integrator.
 */
struct OrbitTable {
    Potential potential;
    std::vector<double> rho_grid;
    std::size_t phi_count = 0;
    std::vector<double> X1;
    std::vector<double> X2;
    std::vector<double> nu;

    double rho0() const { return potential.rho0(); }
    double phi(std::size_t j) const {
        return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(phi_count);
    }
    double x1(std::size_t i, std::size_t j) const { return X1[i * phi_count + j]; }
    double x2(std::size_t i, std::size_t j) const { return X2[i * phi_count + j]; }

    /// Bilinear interpolation in (log rho, phi) of X1 / rho and X2 / rho^(h+1).
    std::array<double, 2> at(double phi_value, double rho) const {
        const auto [i, wr] = rho_cell(rho);
        constexpr double two_pi = 2.0 * std::numbers::pi;
        double p = std::fmod(phi_value, two_pi);
        if (p < 0.0) {
            p += two_pi;
        }
        const double x = p / two_pi * static_cast<double>(phi_count);
        const auto j = std::min(static_cast<std::size_t>(x), phi_count - 1);
        const auto j1 = (j + 1) % phi_count;
        const double wp = x - static_cast<double>(j);
        const int h = potential.h();
        auto row = [&](std::size_t r) {
            const double s1 = rho_grid[r];
            const double s2 = std::pow(rho_grid[r], h + 1);
            return std::array<double, 2>{
                ((1.0 - wp) * x1(r, j) + wp * x1(r, j1)) / s1,
                ((1.0 - wp) * x2(r, j) + wp * x2(r, j1)) / s2};
        };
        const auto lo = row(i);
        const auto hi = row(std::min(i + 1, rho_grid.size() - 1));
        return {((1.0 - wr) * lo[0] + wr * hi[0]) * rho,
                ((1.0 - wr) * lo[1] + wr * hi[1]) * std::pow(rho, h + 1)};
    }

    /// nu(rho) by linear interpolation of log nu in log rho.
    double frequency(double rho) const {
        const auto [i, w] = rho_cell(rho);
        const auto k = std::min(i + 1, rho_grid.size() - 1);
        return std::exp((1.0 - w) * std::log(nu[i]) + w * std::log(nu[k]));
    }

    double max_energy_error() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < rho_grid.size(); ++i) {
            const double e = potential.level(rho_grid[i]);
            for (std::size_t j = 0; j < phi_count; ++j) {
                worst = std::max(worst, std::abs(potential.energy(x1(i, j), x2(i, j)) - e) / e);
            }
        }
        return worst;
    }

private:
    std::pair<std::size_t, double> rho_cell(double rho) const {
        if (rho_grid.empty()) {
            throw ValidationError("orbit table is empty");
        }
        if (!(rho >= rho_grid.front() * (1.0 - 1e-12)) ||
            !(rho <= rho_grid.back() * (1.0 + 1e-12))) {
            throw DomainError("amplitude " + std::to_string(rho) + " outside the table range",
                              rho_grid.front());
        }
        if (rho_grid.size() == 1) {
            return {0, 0.0};
        }
        const auto it = std::upper_bound(rho_grid.begin(), rho_grid.end(), rho);
        std::size_t i = static_cast<std::size_t>(std::max<long>(
            0, static_cast<long>(it - rho_grid.begin()) - 1));
        i = std::min(i, rho_grid.size() - 2);
        const double w = std::log(rho / rho_grid[i]) / std::log(rho_grid[i + 1] / rho_grid[i]);
        return {i, std::clamp(w, 0.0, 1.0)};
    }
};

/// Geometric grid from rho_min to at least rho_max with per_decade points per decade.
inline std::vector<double> geometric_rho_grid(double rho_min, double rho_max,
                                              int per_decade = 64) {
    if (!(rho_min > 0.0) || !(rho_max >= rho_min) || per_decade < 1) {
        throw ValidationError("invalid rho grid request");
    }
    const double ratio = std::pow(10.0, 1.0 / per_decade);
    std::vector<double> grid{rho_min};
    while (grid.back() < rho_max * (1.0 - 1e-12)) {
        grid.push_back(rho_min * std::pow(ratio, static_cast<double>(grid.size())));
    }
    return grid;
}

inline OrbitTable build_orbit_table(const Potential& U, std::vector<double> rho_grid,
                                    const OrbitTableOptions& options = {}) {
    if (rho_grid.empty() || !std::is_sorted(rho_grid.begin(), rho_grid.end())) {
        throw ValidationError("rho grid must be nonempty and increasing");
    }
    if (options.phi_count < 2 || options.steps_per_period % options.phi_count != 0) {
        throw ValidationError("steps_per_period must be a multiple of phi_count");
    }
    OrbitTable table{U, std::move(rho_grid), options.phi_count, {}, {}, {}};
    const std::size_t n = table.phi_count;
    table.X1.resize(table.rho_grid.size() * n);
    table.X2.resize(table.rho_grid.size() * n);
    table.nu.resize(table.rho_grid.size());
    const std::size_t stride = options.steps_per_period / n;

    for (std::size_t i = 0; i < table.rho_grid.size(); ++i) {
        const double rho = table.rho_grid[i];
        const Orbit orbit(U, rho);
        table.nu[i] = orbit.frequency();
        const double dt = orbit.period() / static_cast<double>(options.steps_per_period);
        const double e = U.level(rho);
        std::array<double, 2> y{orbit.x_plus(), 0.0};
        auto f = [&U](const std::array<double, 2>& s) {
            return std::array<double, 2>{s[1], -U.derivative(s[0])};
        };
        double drift = 0.0;
        for (std::size_t step = 0; step < options.steps_per_period; ++step) {
            if (step % stride == 0) {
                const std::size_t j = step / stride;
                table.X1[i * n + j] = y[0];
                table.X2[i * n + j] = y[1];
                drift = std::max(drift, std::abs(U.energy(y[0], y[1]) - e) / e);
            }
            const auto k1 = f(y);
            const auto k2 = f({y[0] + 0.5 * dt * k1[0], y[1] + 0.5 * dt * k1[1]});
            const auto k3 = f({y[0] + 0.5 * dt * k2[0], y[1] + 0.5 * dt * k2[1]});
            const auto k4 = f({y[0] + dt * k3[0], y[1] + dt * k3[1]});
            y[0] += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
            y[1] += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        }
        if (drift > options.energy_tolerance) {
            std::ostringstream msg;
            msg << "orbit integration at rho = " << rho << " drifted in energy by " << drift
                << " (tolerance " << options.energy_tolerance
                << "); increase steps_per_period";
            throw AccuracyError(msg.str());
        }
    }
    return table;
}

/// Action-angle coordinates of (x1, x2); rho is exact, phi comes from the travel time.
inline ActionAngle invert_orbit(const OrbitTable& table, double x1, double x2) {
    return action_angle(table.potential, x1, x2);
}

inline void write_orbit_table(std::ostream& out, const OrbitTable& table) {
    out << "# orbit-table h=" << table.potential.h() << " u=";
    char buf[64];
    const auto& u = table.potential.u();
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", u[i]);
        out << (i ? "," : "") << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", table.rho0());
    out << " rho0=" << buf << " rho_count=" << table.rho_grid.size()
        << " phi_count=" << table.phi_count << "\n";
    out << "rho,phi,X1,X2,nu\n";
    for (std::size_t i = 0; i < table.rho_grid.size(); ++i) {
        for (std::size_t j = 0; j < table.phi_count; ++j) {
            char line[160];
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          table.rho_grid[i], table.phi(j), table.x1(i, j), table.x2(i, j),
                          table.nu[i]);
            out << line;
        }
    }
}

inline OrbitTable read_orbit_table(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("# orbit-table ", 0) != 0) {
        throw ValidationError("missing orbit-table header line");
    }
    int h = -1;
    std::vector<double> u;
    double rho0 = 0.0;
    std::size_t rho_count = 0, phi_count = 0;
    std::istringstream fields(header.substr(14));
    std::string field;
    while (fields >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("malformed orbit-table header field '" + field + "'");
        }
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        try {
            if (key == "h") {
                h = std::stoi(value);
            } else if (key == "u") {
                std::istringstream list(value);
                std::string item;
                while (std::getline(list, item, ',')) {
                    u.push_back(std::stod(item));
                }
            } else if (key == "rho0") {
                rho0 = std::stod(value);
            } else if (key == "rho_count") {
                rho_count = std::stoul(value);
            } else if (key == "phi_count") {
                phi_count = std::stoul(value);
            } else {
                throw ValidationError("unknown orbit-table header field '" + key + "'");
            }
        } catch (const std::logic_error&) {
            throw ValidationError("unparsable orbit-table header field '" + field + "'");
        }
    }
    if (h < 0 || rho_count == 0 || phi_count == 0) {
        throw ValidationError("orbit-table header lacks h, rho_count or phi_count");
    }
    OrbitTable table{Potential(h, u, rho0), {}, phi_count, {}, {}, {}};
    table.rho_grid.resize(rho_count);
    table.nu.resize(rho_count);
    table.X1.resize(rho_count * phi_count);
    table.X2.resize(rho_count * phi_count);
    std::string line;
    std::getline(in, line);  // column names
    for (std::size_t r = 0; r < rho_count * phi_count; ++r) {
        if (!std::getline(in, line)) {
            throw ValidationError("orbit table truncated at row " + std::to_string(r));
        }
        double v[5];
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3],
                        &v[4]) != 5) {
            throw ValidationError("malformed orbit-table row " + std::to_string(r));
        }
        const std::size_t i = r / phi_count;
        table.rho_grid[i] = v[0];
        table.X1[r] = v[2];
        table.X2[r] = v[3];
        table.nu[i] = v[4];
    }
    return table;
}

}  // namespace autores::oscillator
