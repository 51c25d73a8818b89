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

#ifndef SUPERPOSE_GRAPE_H
#define SUPERPOSE_GRAPE_H

#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "superpose/molecule.h"
#include "superpose/pulse.h"
#include "superpose/qcore.h"

namespace superpose::grape {

using Gradient = std::vector<std::vector<double>>;  // [channel][segment]

/// |tr(target^dag U)| / 2^n.
double gate_fidelity(const Operator& u, const Operator& target);
double gate_fidelity(const Matrix& u, const Matrix& target);

struct FidelityGradient {
  double fidelity = 0.0;
  Gradient gradient;
};

/// Exact derivative of gate_fidelity with respect to every amplitude, from
/// the eigendecomposition of each segment Hamiltonian.
FidelityGradient fidelity_and_gradient(const ControlPulse& pulse, const Operator& target,
                                       const Molecule& mol, double rf_scale = 1.0);

Gradient grape_gradient(const ControlPulse& pulse, const Operator& target, const Molecule& mol,
                        double rf_scale = 1.0);

/// One member of a robustness ensemble: RF amplitudes scaled by rf_scale and
/// every chemical shift moved by shift_offset_hz.
struct EnsembleMember {
  double rf_scale = 1.0;
  double shift_offset_hz = 0.0;
  double weight = 1.0;
};

struct OptimizerConfig {
  Operator target = Operator::identity(1);
  double duration_s = 28e-3;
  int segments = 700;
  double fidelity_goal = 0.999;
  int max_iterations = 1000;
  /// Largest amplitude change of the first step, in rad/s; later steps use
  /// the quasi-Newton scaling. Backtracking halves it until ascent holds.
  double initial_step = 2 * std::numbers::pi * 100;
  double max_amplitude = kDefaultMaxAmplitude;
  /// Spread of the seeded random start, in rad/s.
  double initial_sigma = 2 * std::numbers::pi * 300;
  std::vector<EnsembleMember> ensemble = {EnsembleMember{}};
  std::uint64_t seed = 0;

  void validate() const;
};

struct IterationRecord {
  int iteration = 0;
  double fidelity = 0.0;
  double gradient_norm = 0.0;
  double best_fidelity = 0.0;
};

struct OptimizeResult {
  ControlPulse pulse;
  double fidelity = 0.0;  // ensemble-weighted
  bool goal_met = false;
  std::vector<IterationRecord> log;
};

using IterationCallback = std::function<void(const IterationRecord&)>;

/// L-BFGS ascent with Armijo backtracking; amplitudes are clamped to
/// +-max_amplitude. Starts from `initial` or from a seeded random pulse.
OptimizeResult optimize(const OptimizerConfig& config, const Molecule& mol,
                        const std::optional<ControlPulse>& initial = std::nullopt,
                        const IterationCallback& on_iteration = {});

/// (scale, fidelity) with every amplitude multiplied by scale.
std::vector<std::pair<double, double>> rf_robustness_scan(const ControlPulse& pulse,
                                                          const Molecule& mol,
                                                          const Operator& target,
                                                          const std::vector<double>& scalings);

/// Rotation of one qubit, identity elsewhere.
Operator local_rotation_target(int num_qubits, int qubit, Axis axis, double angle);

}  // namespace superpose::grape

#endif  // SUPERPOSE_GRAPE_H
