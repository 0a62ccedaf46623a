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
#include <cstddef>
#include <map>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "autores/error.hpp"

namespace autores::numerics {

/**
 * Uniform samples of a 2pi-periodic function, f_j = f(2 pi j / n).
 *
 * The trigonometric interpolant is computed once at construction and used for
 * off-grid evaluation, differentiation and resampling. Harmonics whose
 * amplitude is below 1e-15 of the largest one are dropped from evaluation.
 */
class PeriodicSamples {
public:
    PeriodicSamples() = default;

    explicit PeriodicSamples(std::vector<double> values) : v_(std::move(values)) {
        if (v_.size() < 2) {
            throw ValidationError("periodic samples need at least two points");
        }
        build_spectrum();
    }

    template <class F>
    static PeriodicSamples sample(F&& f, std::size_t n) {
        std::vector<double> v(n);
        for (std::size_t j = 0; j < n; ++j) {
            v[j] = f(grid_point(j, n));
        }
        return PeriodicSamples(std::move(v));
    }

    static double grid_point(std::size_t j, std::size_t n) {
        return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    }

    std::size_t size() const noexcept { return v_.size(); }
    bool empty() const noexcept { return v_.empty(); }
    double operator[](std::size_t j) const { return v_[j]; }
    double phi(std::size_t j) const { return grid_point(j, v_.size()); }
    std::span<const double> values() const noexcept { return v_; }

    /// f(phi) = a_0 + sum_k a_k cos(k phi) + b_k sin(k phi), k <= n/2.
    const std::vector<double>& cos_coefficients() const noexcept { return a_; }
    const std::vector<double>& sin_coefficients() const noexcept { return b_; }

    double mean() const noexcept { return a_.empty() ? 0.0 : a_[0]; }

    /// Sample value when phi sits on the grid, trigonometric interpolant otherwise.
    double operator()(double phi) const {
        const double x = phi / (2.0 * std::numbers::pi) * static_cast<double>(v_.size());
        const double j = std::round(x);
        if (std::abs(x - j) < 1e-9) {
            const auto n = static_cast<long long>(v_.size());
            long long idx = static_cast<long long>(j) % n;
            if (idx < 0) {
                idx += n;
            }
            return v_[static_cast<std::size_t>(idx)];
        }
        return interpolate(phi);
    }

    double interpolate(double phi) const { return evaluate(phi, false); }
    double interpolate_derivative(double phi) const { return evaluate(phi, true); }

    PeriodicSamples derivative() const {
        std::vector<double> d(v_.size());
        for (std::size_t j = 0; j < d.size(); ++j) {
            d[j] = evaluate(phi(j), true);
        }
        return PeriodicSamples(std::move(d));
    }

    PeriodicSamples resampled(std::size_t m) const {
        if (m == v_.size()) {
            return *this;
        }
        std::vector<double> r(m);
        for (std::size_t j = 0; j < m; ++j) {
            r[j] = interpolate(grid_point(j, m));
        }
        return PeriodicSamples(std::move(r));
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : v_) {
            m = std::max(m, std::abs(x));
        }
        return m;
    }

private:
    void build_spectrum() {
        const std::size_t n = v_.size();
        const std::size_t kmax = n / 2;
        std::vector<double> c(n), s(n);
        for (std::size_t j = 0; j < n; ++j) {
            c[j] = std::cos(grid_point(j, n));
            s[j] = std::sin(grid_point(j, n));
        }
        a_.assign(kmax + 1, 0.0);
        b_.assign(kmax + 1, 0.0);
        for (std::size_t k = 0; k <= kmax; ++k) {
            double ac = 0.0;
            double as = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t idx = (j * k) % n;
                ac += v_[j] * c[idx];
                as += v_[j] * s[idx];
            }
            const bool nyquist = (n % 2 == 0 && k == kmax);
            const double w = (k == 0 || nyquist) ? 1.0 / static_cast<double>(n)
                                                 : 2.0 / static_cast<double>(n);
            a_[k] = w * ac;
            b_[k] = (k == 0 || nyquist) ? 0.0 : w * as;
        }
        double scale = 0.0;
        for (std::size_t k = 0; k <= kmax; ++k) {
            scale = std::max({scale, std::abs(a_[k]), std::abs(b_[k])});
        }
        top_ = 0;
        for (std::size_t k = 1; k <= kmax; ++k) {
            if (std::abs(a_[k]) + std::abs(b_[k]) > 1e-15 * scale) {
                top_ = k;
            }
        }
    }

    double evaluate(double phi, bool derivative) const {
        const double c1 = std::cos(phi);
        const double s1 = std::sin(phi);
        double ck = 1.0;
        double sk = 0.0;
        double sum = derivative ? 0.0 : a_[0];
        const bool drop_nyquist = derivative && (v_.size() % 2 == 0);
        for (std::size_t k = 1; k <= top_; ++k) {
            const double cn = ck * c1 - sk * s1;
            sk = sk * c1 + ck * s1;
            ck = cn;
            if (derivative) {
                if (drop_nyquist && k == v_.size() / 2) {
                    continue;
                }
                const double kk = static_cast<double>(k);
                sum += kk * (b_[k] * ck - a_[k] * sk);
            } else {
                sum += a_[k] * ck + b_[k] * sk;
            }
        }
        return sum;
    }

    std::vector<double> v_;
    std::vector<double> a_;
    std::vector<double> b_;
    std::size_t top_ = 0;
};

/// One harmonic of a 2pi-periodic coefficient: c cos(kS) + s sin(kS).
struct Harmonic {
    int order = 0;
    double cos_amp = 0.0;
    double sin_amp = 0.0;
};

/// Finite trigonometric series in S, used for the coefficients Q_ij(S), sigma_ij(S).
class TrigSeries {
public:
    TrigSeries() = default;
    explicit TrigSeries(std::vector<Harmonic> terms) {
        for (const auto& h : terms) {
            add(h);
        }
    }

    void add(Harmonic h) {
        if (h.order < 0) {
            h.order = -h.order;
            h.sin_amp = -h.sin_amp;
        }
        auto& slot = terms_[h.order];
        slot.order = h.order;
        slot.cos_amp += h.cos_amp;
        slot.sin_amp += (h.order == 0) ? 0.0 : h.sin_amp;
    }

    double operator()(double S) const {
        double sum = 0.0;
        for (const auto& [k, h] : terms_) {
            if (k == 0) {
                sum += h.cos_amp;
            } else {
                const double ks = k * S;
                sum += h.cos_amp * std::cos(ks) + h.sin_amp * std::sin(ks);
            }
        }
        return sum;
    }

    bool is_zero() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) {
            return kv.second.cos_amp == 0.0 && kv.second.sin_amp == 0.0;
        });
    }

    std::vector<Harmonic> harmonics() const {
        std::vector<Harmonic> out;
        for (const auto& [k, h] : terms_) {
            out.push_back(h);
        }
        return out;
    }

    /// Pointwise product, expanded with the product-to-sum identities.
    TrigSeries operator*(const TrigSeries& other) const {
        TrigSeries out;
        for (const auto& [p, a] : terms_) {
            for (const auto& [q, b] : other.terms_) {
                // cos p cos q, cos p sin q, sin p cos q, sin p sin q
                const double cc = a.cos_amp * b.cos_amp;
                const double cs = a.cos_amp * b.sin_amp;
                const double sc = a.sin_amp * b.cos_amp;
                const double ss = a.sin_amp * b.sin_amp;
                out.add({p + q, 0.5 * (cc - ss), 0.5 * (cs + sc)});
                out.add({p - q, 0.5 * (cc + ss), 0.5 * (sc - cs)});
            }
        }
        return out;
    }

private:
    std::map<int, Harmonic> terms_;
};

}  // namespace autores::numerics
