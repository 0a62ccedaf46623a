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

#include "autores/error.hpp"
#include "autores/numerics/periodic.hpp"
#include "autores/numerics/quadrature.hpp"
#include "autores/numerics/random.hpp"
#include "autores/numerics/rational.hpp"
#include "autores/numerics/roots.hpp"
#include "autores/oscillator/leading_orbit.hpp"
#include "autores/oscillator/orbit.hpp"
#include "autores/oscillator/orbit_table.hpp"
#include "autores/oscillator/potential.hpp"
#include "autores/reduction/analysis.hpp"
#include "autores/reduction/averages.hpp"
#include "autores/reduction/locking.hpp"
#include "autores/reduction/specs.hpp"
#include "autores/simulate/observables.hpp"
#include "autores/simulate/sde.hpp"
#include "autores/simulate/truncated.hpp"
