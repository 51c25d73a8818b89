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

#ifndef SUPERPOSE_PULSE_H
#define SUPERPOSE_PULSE_H

#include <numbers>
#include <string>
#include <vector>

#include "superpose/molecule.h"
#include "superpose/qcore.h"

namespace superpose::grape {

using nmr::Molecule;
using nmr::internal_hamiltonian_matrix;

inline constexpr double kDefaultMaxAmplitude = 2 * std::numbers::pi * 10e3;  // rad/s

/// Piecewise-constant RF controls. amplitudes[c][k] is channel c during
/// segment k, in rad/s; a channel drives sum_i sigma_{x|y}^i / 2 over all
/// spins of one species.
struct ControlPulse {
  double dt_s = 0.0;
  std::vector<std::string> channels;
  std::vector<std::vector<double>> amplitudes;

  static ControlPulse zeros(std::vector<std::string> channels, int segments, double dt_s);

  int segment_count() const {
    return amplitudes.empty() ? 0 : static_cast<int>(amplitudes.front().size());
  }
  int channel_count() const { return static_cast<int>(amplitudes.size()); }
  double duration() const { return dt_s * segment_count(); }
  double max_abs_amplitude() const;

  /// Throws std::invalid_argument on ragged arrays, negative dt or amplitudes
  /// above `max_amplitude`.
  void validate(double max_amplitude = kDefaultMaxAmplitude) const;

  /// Same propagator with every segment split in `factor` equal pieces.
  ControlPulse refined(int factor) const;
  ControlPulse scaled(double factor) const;
};

struct ControlSet {
  std::vector<std::string> names;
  std::vector<Matrix> hamiltonians;
};

/// x/y channels per spin species, in order of first appearance
/// ("H_x", "H_y", "C_x", "C_y" for trichloroethylene).
ControlSet control_hamiltonians(const Molecule& mol);

/// Total Hamiltonian of segment k: drift + rf_scale * sum_c u_c[k] H_c.
Matrix segment_hamiltonian(const Matrix& drift, const ControlSet& controls,
                           const ControlPulse& pulse, int segment, double rf_scale = 1.0);

/// One propagator per segment, in time order.
std::vector<Matrix> segment_propagators(const ControlPulse& pulse, const Molecule& mol,
                                        double rf_scale = 1.0);

/// U = U_N ... U_1 under the molecule's internal Hamiltonian.
Operator propagate(const ControlPulse& pulse, const Molecule& mol, double rf_scale = 1.0);

/// Checks that the pulse channels match the molecule's control set.
void check_channels(const ControlPulse& pulse, const ControlSet& controls);

}  // namespace superpose::grape

#endif  // SUPERPOSE_PULSE_H
