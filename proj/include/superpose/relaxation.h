// Copyright 2026 The Superpose Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUPERPOSE_RELAXATION_H
#define SUPERPOSE_RELAXATION_H

#include "superpose/molecule.h"
#include "superpose/qcore.h"

namespace superpose::noise {

/// Independent T1/T2 relaxation of every spin for `dt_s`: amplitude damping
/// towards |0> with gamma = 1 - exp(-dt/T1), followed by pure dephasing so
/// that coherences decay as exp(-dt/T2) overall. Requires a physical state.
DensityOperator relaxation_step(const DensityOperator& rho, const nmr::Molecule& mol, double dt_s);

/// In-place form on a raw matrix; no validation.
void apply_relaxation(Matrix& rho, const nmr::Molecule& mol, double dt_s);

}  // namespace superpose::noise

#endif  // SUPERPOSE_RELAXATION_H
