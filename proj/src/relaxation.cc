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

#include "superpose/relaxation.h"

#include <cmath>
#include <stdexcept>

namespace superpose::noise {

void apply_relaxation(Matrix& rho, const nmr::Molecule& mol, double dt_s) {
  if (dt_s <= 0.0) return;
  const int n = mol.num_qubits();
  const Eigen::Index dim = rho.rows();
  for (int q = 0; q < n; ++q) {
    const nmr::Spin& s = mol.spins()[static_cast<std::size_t>(q)];
    const double gamma = 1.0 - std::exp(-dt_s / s.t1_s);
    const double keep = std::sqrt(1.0 - gamma);
    const double f = std::exp(-dt_s * (1.0 / s.t2_s - 0.5 / s.t1_s));
    const Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
    // Amplitude damping. The |1><1| block feeds |0><0| before it is scaled.
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (!(r & bit)) continue;
      for (Eigen::Index c = 0; c < dim; ++c) {
        if (!(c & bit)) continue;
        rho(r ^ bit, c ^ bit) += gamma * rho(r, c);
      }
    }
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        const int ones = ((r & bit) ? 1 : 0) + ((c & bit) ? 1 : 0);
        if (ones == 2) {
          rho(r, c) *= 1.0 - gamma;
        } else if (ones == 1) {
          rho(r, c) *= keep * f;
        }
      }
    }
  }
}

DensityOperator relaxation_step(const DensityOperator& rho, const nmr::Molecule& mol, double dt_s) {
  if (rho.kind() != DensityKind::kPhysical) {
    throw std::invalid_argument("relaxation acts on physical states, not deviation operators");
  }
  if (rho.num_qubits() != mol.num_qubits()) {
    throw std::invalid_argument("state and molecule have different qubit counts");
  }
  if (!(dt_s >= 0.0)) throw std::invalid_argument("relaxation interval must be >= 0");
  Matrix m = rho.matrix();
  apply_relaxation(m, mol, dt_s);
  return DensityOperator(std::move(m), DensityKind::kPhysical);
}

}  // namespace superpose::noise
