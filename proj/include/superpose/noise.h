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

#ifndef SUPERPOSE_NOISE_H
#define SUPERPOSE_NOISE_H

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "superpose/molecule.h"
#include "superpose/nmr.h"
#include "superpose/noise_model.h"
#include "superpose/protocol.h"
#include "superpose/qcore.h"
#include "superpose/relaxation.h"
#include "superpose/tomography.h"

namespace superpose::noise {

inline constexpr double kPrepGateDuration = 2e-3;   // s, the three input-preparation rotations
inline constexpr double kSwapGateDuration = 28e-3;  // s, controlled-SWAP when not pulse-shaped

enum class Mode { kIdeal, kWithEcho, kNoEcho };

Mode parse_mode(std::string_view name);
const char* mode_name(Mode mode);

/// How the no-echo readout isolates the output qubit. kProjection applies the
/// protocol's post-selection numerically; kTraceOut discards the other two
/// qubits without conditioning.
enum class Reduction { kProjection, kTraceOut };

struct TrialResult {
  bool failed = false;
  double fidelity = std::numeric_limits<double>::quiet_NaN();
  double success_probability = 0.0;
  /// <phi1|rho_out|phi1>
  double overlap = std::numeric_limits<double>::quiet_NaN();
};

struct TrialStatistics {
  double mean_fidelity = 0.0;
  double std_fidelity = 0.0;
  int n_trials = 0;
  double mean_success_probability = 0.0;
  double mean_overlap = 0.0;
  double std_overlap = 0.0;
  int failed_trials = 0;
};

class AllTrialsFailedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The physical protocol: pseudo-pure state, preparation rotations,
/// controlled-SWAP, readout. Expensive set-up (pseudo-pure program, pulse
/// propagators) happens once here; trials only vary in their random draws.
class NoisyPipeline {
 public:
  NoisyPipeline(nmr::Molecule mol, NoiseModel noise, Reduction reduction = Reduction::kProjection,
                double post_selection_floor = 1e-12);

  const nmr::Molecule& molecule() const { return mol_; }
  const NoiseModel& noise() const { return noise_; }
  double pps_fidelity() const { return pps_fidelity_; }
  /// Effective register state before preparation, prep error included.
  const DensityOperator& initial_state() const { return initial_; }

  TrialResult run_trial(const protocol::SuperpositionTask& task, Mode mode, std::uint64_t seed) const;

  /// Trial i uses derive_seed(noise().seed, i). Throws AllTrialsFailedError
  /// when no trial passes post-selection.
  TrialStatistics monte_carlo(const protocol::SuperpositionTask& task, Mode mode, int n_trials) const;

 private:
  nmr::Molecule mol_;
  NoiseModel noise_;
  Reduction reduction_;
  double floor_;
  DensityOperator initial_;
  double pps_fidelity_;
  nmr::PulseProgram swap_program_;  // noiseless or pulse-shaped swap
};

TrialResult run_noisy_trial(const NoisyPipeline& pipeline, protocol::Group group, double theta,
                            Mode mode);

TrialStatistics monte_carlo(const NoisyPipeline& pipeline, protocol::Group group, double theta,
                            int n_trials, Mode mode);

/// chi = |0>, equal weights, phi1 = o1|0> + sqrt(1-o1^2)|1>,
/// phi2 = o2|0> + i sqrt(1-o2^2)|1>.
protocol::SuperpositionTask overlap_task(double overlap1, double overlap2);

/// std_fidelity for every (overlap1[r], overlap2[c]); NaN where every trial
/// failed.
Eigen::MatrixXd uncertainty_map(const NoisyPipeline& pipeline, const std::vector<double>& overlap1,
                                const std::vector<double>& overlap2, int n_trials,
                                Mode mode = Mode::kWithEcho);

struct EchoComparisonRow {
  double theta = 0.0;
  TrialStatistics with_echo;
  TrialStatistics without_echo;
};

/// Group-B statistics in both readout modes, with the same trial seeds.
std::vector<EchoComparisonRow> echo_comparison(const NoisyPipeline& pipeline,
                                               const std::vector<double>& theta2_grid, int n_trials);

}  // namespace superpose::noise

#endif  // SUPERPOSE_NOISE_H
