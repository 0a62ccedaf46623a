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
#include <string>
#include <vector>

#include "autores/error.hpp"
#include "autores/numerics/periodic.hpp"
#include "autores/numerics/rational.hpp"

namespace autores::reduction {

using numerics::Rational;

/// One monomial of a coefficient polynomial: x1^i x2^j (c cos(kS) + s sin(kS)).
struct PolyTerm {
    int i = 0;
    int j = 0;
    int harmonic = 1;
    double cos_amp = 0.0;
    double sin_amp = 0.0;
};

/// Sum of PolyTerms, viewed as a polynomial in (x1, x2) with 2pi-periodic coefficients in S.
class TrigPolynomial {
public:
    TrigPolynomial() = default;
    explicit TrigPolynomial(std::vector<PolyTerm> terms) : terms_(std::move(terms)) {
        for (const auto& t : terms_) {
            if (t.i < 0 || t.j < 0) {
                throw ValidationError("monomial powers must be nonnegative");
            }
            if (!std::isfinite(t.cos_amp) || !std::isfinite(t.sin_amp)) {
                throw ValidationError("coefficient amplitudes must be finite");
            }
        }
    }

    const std::vector<PolyTerm>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    int top_x1() const { return top([](const PolyTerm& t) { return t.i; }); }
    int top_x2() const { return top([](const PolyTerm& t) { return t.j; }); }

    /// Coefficient of x1^i x2^j as a trigonometric series in S.
    numerics::TrigSeries coefficient(int i, int j) const {
        numerics::TrigSeries out;
        for (const auto& t : terms_) {
            if (t.i == i && t.j == j) {
                out.add({t.harmonic, t.cos_amp, t.sin_amp});
            }
        }
        return out;
    }

    double operator()(double x1, double x2, double S) const {
        double sum = 0.0;
        for (const auto& t : terms_) {
            const double k = t.harmonic * S;
            double c = t.cos_amp * std::cos(k);
            if (t.sin_amp != 0.0) {
                c += t.sin_amp * std::sin(k);
            }
            sum += c * ipow(x1, t.i) * ipow(x2, t.j);
        }
        return sum;
    }

private:
    static double ipow(double x, int n) {
        double r = 1.0;
        for (int k = 0; k < n; ++k) {
            r *= x;
        }
        return r;
    }

    template <class G>
    int top(G g) const {
        int m = 0;
        for (const auto& t : terms_) {
            if (t.cos_amp != 0.0 || t.sin_amp != 0.0) {
                m = std::max(m, g(t));
            }
        }
        return m;
    }

    std::vector<PolyTerm> terms_;
};

/// Drift perturbation t^(-alpha) Q(x1, x2, S) with chirped phase S = s t^(beta+1).
struct ForcingSpec {
    Rational alpha{0};
    Rational beta{1, 3};
    double s = 1.0;
    TrigPolynomial Q;

    int p() const { return Q.top_x1(); }
    int l() const { return Q.top_x2(); }

    double phase(double t) const {
        return s * std::pow(t, numerics::to_double(beta) + 1.0);
    }
    double phase_rate(double t) const {
        const double b = numerics::to_double(beta);
        return s * (b + 1.0) * std::pow(t, b);
    }
};

/// Diffusion t^(-gamma) mu sigma(x1, x2, S).
struct NoiseSpec {
    Rational gamma{0};
    double mu = 0.0;
    TrigPolynomial sigma;

    int n() const { return sigma.top_x1(); }
    int m() const { return sigma.top_x2(); }
};

/// Degree bounds 0 <= l <= p <= 2h+1, 0 <= n <= 2h+1, 0 <= m <= l and sign conditions.
inline void validate(const ForcingSpec& f, const NoiseSpec& g, int h) {
    if (f.alpha < 0) {
        throw ValidationError("alpha must be nonnegative");
    }
    if (!(f.beta > 0)) {
        throw ValidationError("beta must be positive");
    }
    if (!(f.s > 0.0) || !std::isfinite(f.s)) {
        throw ValidationError("s must be positive");
    }
    if (g.gamma < 0) {
        throw ValidationError("gamma must be nonnegative");
    }
    if (!(g.mu >= 0.0) || !std::isfinite(g.mu)) {
        throw ValidationError("mu must be nonnegative");
    }
    if (f.Q.empty()) {
        throw ValidationError("forcing has no terms");
    }
    if (g.sigma.empty()) {
        throw ValidationError("noise has no terms");
    }
    const int p = f.p(), l = f.l(), n = g.n(), m = g.m();
    if (!(l <= p && p <= 2 * h + 1)) {
        throw ValidationError("forcing degrees need 0 <= l <= p <= 2h+1 (p = " +
                              std::to_string(p) + ", l = " + std::to_string(l) +
                              ", h = " + std::to_string(h) + ")");
    }
    // n <= p is not enforced: the third Duffing example uses n = 2 > p = 1 and
    // nothing downstream depends on it.
    if (!(n <= 2 * h + 1 && m <= l)) {
        throw ValidationError("noise degrees need n <= 2h+1 and m <= l (n = " +
                              std::to_string(n) + ", m = " + std::to_string(m) + ")");
    }
    if (f.Q.coefficient(p, l).is_zero()) {
        throw ValidationError("forcing needs a nonzero top coefficient Q_{p,l}");
    }
    if (g.sigma.coefficient(n, m).is_zero()) {
        throw ValidationError("noise needs a nonzero top coefficient sigma_{n,m}");
    }
}

}  // namespace autores::reduction
