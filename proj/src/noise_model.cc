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

#include "superpose/noise_model.h"

#include <cmath>
#include <stdexcept>

namespace superpose::noise {

CoherentErrorKind parse_coherent_kind(std::string_view name) {
  if (name == "none") return CoherentErrorKind::kNone;
  if (name == "grape_pulse") return CoherentErrorKind::kGrapePulse;
  if (name == "perturbation") return CoherentErrorKind::kPerturbation;
  throw std::invalid_argument("unknown coherent error kind '" + std::string(name) +
                              "' (expected none, grape_pulse or perturbation)");
}

const char* coherent_kind_name(CoherentErrorKind kind) {
  switch (kind) {
    case CoherentErrorKind::kNone:
      return "none";
    case CoherentErrorKind::kGrapePulse:
      return "grape_pulse";
    case CoherentErrorKind::kPerturbation:
      return "perturbation";
  }
  return "none";
}

NoiseModel NoiseModel::none() { return NoiseModel{}; }

NoiseModel NoiseModel::defaults() {
  NoiseModel m;
  m.relaxation.enabled = true;
  m.prep_error = 0.01;
  m.coherent.kind = CoherentErrorKind::kGrapePulse;
  m.readout_sigma = 0.02;
  m.seed = 2017;
  return m;
}

bool NoiseModel::is_noiseless() const {
  return !relaxation.enabled && prep_error == 0.0 && readout_sigma == 0.0 &&
         (coherent.kind == CoherentErrorKind::kNone ||
          (coherent.kind == CoherentErrorKind::kPerturbation && coherent.strength == 0.0));
}

void NoiseModel::validate() const {
  if (!(prep_error >= 0.0 && prep_error <= 1.0)) throw std::invalid_argument("prep_error must lie in [0, 1]");
  if (!(readout_sigma >= 0.0) || !std::isfinite(readout_sigma)) {
    throw std::invalid_argument("readout_sigma must be finite and >= 0");
  }
  if (!(coherent.strength >= 0.0) || !std::isfinite(coherent.strength)) {
    throw std::invalid_argument("coherent error strength must be finite and >= 0");
  }
  if (!(relaxation.max_step_s > 0.0)) throw std::invalid_argument("relaxation max_step_s must be > 0");
  for (const auto& [t1, t2] : relaxation.t1_t2_overrides) {
    if (!(t2 > 0.0) || !(t1 >= t2)) throw std::invalid_argument("relaxation times must satisfy T1 >= T2 > 0");
  }
  if (coherent.kind == CoherentErrorKind::kGrapePulse && coherent.pulse) coherent.pulse->validate();
}

nmr::Molecule NoiseModel::relaxation_molecule(const nmr::Molecule& mol) const {
  if (relaxation.t1_t2_overrides.empty()) return mol;
  return mol.with_relaxation(relaxation.t1_t2_overrides);
}

}  // namespace superpose::noise
