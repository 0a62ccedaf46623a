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
#include <cstdint>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "autores/error.hpp"

namespace autores::numerics {

/**
 * Bracketed root of a continuous scalar function.
 *
 * Backed by TOMS 748 (Alefeld-Potra-Shi): inverse cubic / quadratic steps that
 * fall back to bisection, so the bracket always shrinks. The returned point is
 * the midpoint of the final bracket, whose width is at most tol.
 */
template <class F>
double solve_scalar(F&& f, double lo, double hi, double tol = 1e-12,
                    std::uintmax_t max_iterations = 200) {
    if (!(lo < hi)) {
        throw ValidationError("solve_scalar requires lo < hi");
    }
    if (!(tol > 0.0)) {
        throw ValidationError("solve_scalar requires a positive tolerance");
    }
    auto checked = [&f](double x) {
        const double v = f(x);
        if (!std::isfinite(v)) {
            throw EvaluationError("root function returned a non-finite value", x);
        }
        return v;
    };
    const double flo = checked(lo);
    const double fhi = checked(hi);
    if (flo == 0.0) {
        return lo;
    }
    if (fhi == 0.0) {
        return hi;
    }
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw BracketError("no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }
    std::uintmax_t iterations = max_iterations;
    auto width_ok = [tol](double a, double b) { return std::abs(b - a) <= tol; };
    const auto bracket = boost::math::tools::toms748_solve(checked, lo, hi, flo, fhi,
                                                           width_ok, iterations);
    if (std::abs(bracket.second - bracket.first) > tol) {
        if (iterations >= max_iterations) {
            throw ConvergenceError("root bracket did not shrink below tolerance within " +
                                   std::to_string(max_iterations) + " iterations");
        }
        // toms748 stops early on an exact zero of f at one endpoint.
        return checked(bracket.first) == 0.0 ? bracket.first : bracket.second;
    }
    return 0.5 * (bracket.first + bracket.second);
}

}  // namespace autores::numerics
