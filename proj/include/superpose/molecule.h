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

#ifndef SUPERPOSE_MOLECULE_H
#define SUPERPOSE_MOLECULE_H

#include <string>
#include <string_view>
#include <vector>

#include "superpose/qcore.h"

namespace superpose::nmr {

enum class CouplingRegime { kWeak, kStrong };

CouplingRegime parse_regime(std::string_view name);
const char* regime_name(CouplingRegime regime);

struct Spin {
  std::string name;
  double shift_hz = 0.0;  // rotating-frame offset
  double t1_s = 0.0;
  double t2_s = 0.0;
  double gyro_rel = 1.0;
};

struct Coupling {
  int i = 0;
  int j = 0;
  double j_hz = 0.0;
  CouplingRegime regime = CouplingRegime::kWeak;
};

/// Immutable spin-system description. Spin k is qubit k.
class Molecule {
 public:
  Molecule(std::vector<Spin> spins, std::vector<Coupling> couplings);

  /// Trichloroethylene with qubits ordered H, C2, C1. The C1-C2 shift
  /// difference (1250 Hz) and coupling (100 Hz) are the documented anchors;
  /// the H-C couplings and relaxation times are representative placeholders.
  static Molecule tce();

  const std::vector<Spin>& spins() const { return spins_; }
  const std::vector<Coupling>& couplings() const { return couplings_; }
  int num_qubits() const { return static_cast<int>(spins_.size()); }

  /// Coupling constant between spins i and j, 0 if uncoupled.
  double coupling_hz(int i, int j) const;

  /// Copy with the (i, j) coupling constant replaced.
  Molecule with_coupling(int i, int j, double j_hz) const;
  /// Copy with every chemical shift moved by `offset_hz`.
  Molecule with_shift_offset(double offset_hz) const;
  /// Copy with per-spin relaxation times replaced.
  Molecule with_relaxation(const std::vector<std::pair<double, double>>& t1_t2) const;

  /// Species label of a spin: its name with trailing digits stripped
  /// ("C1" -> "C").
  std::string species(int spin) const;

 private:
  std::vector<Spin> spins_;
  std::vector<Coupling> couplings_;
};

/// Sum_i pi nu_i Z_i + weak (pi/2) J Z_i Z_j + strong (pi/2) J (XX + YY + ZZ),
/// in rad/s.
Matrix internal_hamiltonian_matrix(const Molecule& mol);
Operator internal_hamiltonian(const Molecule& mol);

/// Sum_i gyro_rel_i Z_i as a deviation density operator.
DensityOperator thermal_deviation(const Molecule& mol);

}  // namespace superpose::nmr

#endif  // SUPERPOSE_MOLECULE_H
