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

#ifndef SUPERPOSE_NOISE_MODEL_H
#define SUPERPOSE_NOISE_MODEL_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "superpose/molecule.h"
#include "superpose/pulse.h"

namespace superpose::noise {

struct RelaxationSettings {
  bool enabled = false;
  /// Per-spin (T1, T2) replacing the molecule's values; empty keeps them.
  std::vector<std::pair<double, double>> t1_t2_overrides;
  /// Longest interval between relaxation applications inside one event.
  double max_step_s = 1e-3;
};

enum class CoherentErrorKind { kNone, kGrapePulse, kPerturbation };

CoherentErrorKind parse_coherent_kind(std::string_view name);
const char* coherent_kind_name(CoherentErrorKind kind);

struct CoherentError {
  CoherentErrorKind kind = CoherentErrorKind::kNone;
  /// Spectral radius of the random Hermitian generator for kPerturbation.
  double strength = 0.0;
  /// Controlled-SWAP pulse used for kGrapePulse.
  std::optional<grape::ControlPulse> pulse;
  /// Where `pulse` came from, if it was loaded; informational.
  std::string pulse_file;
};

struct NoiseModel {
  RelaxationSettings relaxation;
  double prep_error = 0.0;
  CoherentError coherent;
  double readout_sigma = 0.0;
  std::uint64_t seed = 0;

  /// Every channel disabled.
  static NoiseModel none();
  /// Relaxation on, prep_error 0.01, readout_sigma 0.02 and the synthesized
  /// controlled-SWAP pulse as the coherent error. The pulse itself is not
  /// attached; see NoisyPipeline.
  static NoiseModel defaults();

  bool is_noiseless() const;
  void validate() const;
  /// The molecule whose T1/T2 relaxation acts on.
  nmr::Molecule relaxation_molecule(const nmr::Molecule& mol) const;
};

}  // namespace superpose::noise

#endif  // SUPERPOSE_NOISE_MODEL_H
