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

#include "superpose/tomography.h"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace superpose::noise {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

const std::vector<Matrix>& pauli_strings(int num_qubits) {
  if (num_qubits < 1 || num_qubits > 6) throw std::invalid_argument("tomography supports 1 to 6 qubits");
  static std::mutex mu;
  static std::array<std::vector<Matrix>, 7> cache;
  std::lock_guard<std::mutex> lock(mu);
  std::vector<Matrix>& out = cache[static_cast<std::size_t>(num_qubits)];
  if (out.empty()) {
    const std::array<const Matrix*, 4> single = {&pauli::I(), &pauli::X(), &pauli::Y(), &pauli::Z()};
    const std::size_t count = std::size_t{1} << (2 * num_qubits);
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      Matrix m = Matrix::Identity(1, 1);
      for (int q = 0; q < num_qubits; ++q) {
        const std::size_t digit = (k >> (2 * (num_qubits - 1 - q))) & 3U;
        m = kron(m, *single[digit]);
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

DensityOperator noisy_tomography(const DensityOperator& rho, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("readout sigma must be >= 0");
  if (rho.kind() != DensityKind::kPhysical) {
    throw std::invalid_argument("tomography reconstructs physical states");
  }
  const double tr = rho.trace();
  if (!(std::abs(tr) > 0.0)) throw std::invalid_argument("cannot normalize a zero-trace state");
  const Matrix m = rho.matrix() / tr;
  const auto& paulis = pauli_strings(rho.num_qubits());
  const auto dim = static_cast<Eigen::Index>(rho.dim());
  std::normal_distribution<double> noise(0.0, 1.0);
  Matrix out = Matrix::Identity(dim, dim);
  for (std::size_t k = 1; k < paulis.size(); ++k) {
    // tr(rho P) for Hermitian P
    double e = m.cwiseProduct(paulis[k].transpose()).sum().real();
    if (sigma > 0.0) e += sigma * noise(rng);
    out += e * paulis[k];
  }
  out /= static_cast<double>(dim);
  return DensityOperator(std::move(out), DensityKind::kPhysical);
}

}  // namespace superpose::noise
