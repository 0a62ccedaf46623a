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

#include <stdexcept>
#include <string>

namespace autores {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input detected before any numerical work: parity, degree bounds,
/// malformed configuration. The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure could not deliver its contract. Exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class EvaluationError : public NumericalError {
public:
    EvaluationError(const std::string& what, double abscissa)
        : NumericalError(what + " (at x = " + std::to_string(abscissa) + ")"),
          abscissa_(abscissa) {}
    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

class BracketError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Query outside the closed-orbit region. Carries the smallest admissible
/// amplitude so callers can report it.
class DomainError : public NumericalError {
public:
    DomainError(const std::string& what, double min_rho)
        : NumericalError(what), min_rho_(min_rho) {}
    double min_rho() const noexcept { return min_rho_; }

private:
    double min_rho_;
};

class AccuracyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateRootError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class UnsupportedRegimeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// The resonance equation has no admissible root yet at the requested time.
class PreAsymptoticError : public NumericalError {
public:
    PreAsymptoticError(const std::string& what, double min_time)
        : NumericalError(what), min_time_(min_time) {}
    double min_time() const noexcept { return min_time_; }

private:
    double min_time_;
};

}  // namespace autores
