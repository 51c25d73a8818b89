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

#ifndef SUPERPOSE_NMR_H
#define SUPERPOSE_NMR_H

#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "superpose/molecule.h"
#include "superpose/noise_model.h"
#include "superpose/pulse.h"
#include "superpose/qcore.h"

namespace superpose::nmr {

inline constexpr double kEchoProcedureDuration = 7e-3;  // s, both measurements

/// Instantaneous ideal rotation exp(-i angle sigma_axis / 2).
struct IdealRotation {
  int qubit = 0;
  Axis axis = Axis::kX;
  double angle = 0.0;
};

struct ShapedPulse {
  grape::ControlPulse pulse;
};

/// Evolution under the internal Hamiltonian.
struct FreeEvolution {
  double duration_s = 0.0;
};

/// Spatially averaged z-gradient: removes every element whose coherence
/// order, counted over `qubits` (all qubits when empty), is nonzero.
struct Crusher {
  std::vector<int> qubits;
};

/// Instantaneous pi_x on each listed qubit.
struct PiRefocus {
  std::vector<int> qubits;
};

/// A calibrated unitary lasting `duration_s`. Its coherent effect is exactly
/// `unitary`; relaxation acts throughout.
struct Gate {
  Operator unitary;
  double duration_s = 0.0;
  std::string label;
};

/// Idle interval whose coherent evolution is refocused; only relaxation acts.
struct Delay {
  double duration_s = 0.0;
};

using Event = std::variant<IdealRotation, ShapedPulse, FreeEvolution, Crusher, PiRefocus, Gate, Delay>;

class PulseProgram {
 public:
  PulseProgram() = default;
  explicit PulseProgram(std::vector<Event> events) : events_(std::move(events)) {}

  const std::vector<Event>& events() const { return events_; }
  bool empty() const { return events_.empty(); }
  double duration() const;
  int crusher_count() const;

  PulseProgram then(const PulseProgram& next) const;

  /// Durations >= 0 and qubit references inside [0, num_qubits).
  void validate(int num_qubits) const;

 private:
  std::vector<Event> events_;
};

/// Zeroes nonzero-coherence-order elements; see Crusher.
DensityOperator crusher(const DensityOperator& rho, std::span<const int> qubits = {});

/// |0...0><0...0| - I/d, the deviation form of the pseudo-pure state.
DensityOperator pps_target(int num_qubits);

/// Correlation of a deviation state with pps_target().
double pps_fidelity(const DensityOperator& deviation);

/// Re-attaches the identity to a pseudo-pure deviation so that it can be
/// propagated as the effective pure state it stands for: I/d + dev / k with k
/// the projection of dev onto pps_target().
DensityOperator pps_effective_state(const DensityOperator& deviation);

class PpsFidelityError : public std::runtime_error {
 public:
  PpsFidelityError(const std::string& what, double fidelity)
      : std::runtime_error(what), fidelity_(fidelity) {}
  double fidelity() const { return fidelity_; }

 private:
  double fidelity_;
};

struct PpsResult {
  DensityOperator deviation;
  double fidelity;
  double duration_s;
};

/// Runs `program` on the thermal deviation without noise. An empty program
/// only reports the thermal baseline. Otherwise the program must contain
/// exactly three crushers and reach `fidelity_floor` (PpsFidelityError).
PpsResult pps_prepare(const Molecule& mol, const PulseProgram& program,
                      double fidelity_floor = 0.99);

/// Spatial-averaging sequence for a three-spin molecule: three rounds of
/// local rotations, a 1/(2J) free evolution, local rotations and a crusher.
/// The rotation angles are refined against the molecule's full Hamiltonian
/// (strong coupling included).
PulseProgram canned_pps_program(const Molecule& mol);

/// Gradient-echo emulation of a non-selective measurement of `qubit` in the
/// {basis_ket, basis_ket_perp} basis.
PulseProgram gradient_echo_program(int num_qubits, int qubit, const StateVector& basis_ket,
                                   double duration_s = kEchoProcedureDuration);

DensityOperator gradient_echo_measurement(const DensityOperator& rho, int qubit,
                                          const StateVector& basis_ket);

/// Applies the events of `program` in order. With `noise` and relaxation
/// enabled, relaxation is interleaved at most every
/// noise->relaxation.max_step_s.
DensityOperator evolve_program(const DensityOperator& rho, const PulseProgram& program,
                               const Molecule& mol, const noise::NoiseModel* noise = nullptr);

/// Noiseless coherent propagator of a program without crushers.
Operator program_unitary(const PulseProgram& program, const Molecule& mol);

/// U^(1/m) with the principal branch of the eigenphases.
Matrix unitary_root(const Matrix& u, int m);

}  // namespace superpose::nmr

#endif  // SUPERPOSE_NMR_H
