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

#ifndef SUPERPOSE_TOMOGRAPHY_H
#define SUPERPOSE_TOMOGRAPHY_H

#include <cstdint>
#include <random>
#include <vector>

#include "superpose/qcore.h"

namespace superpose::noise {

using Rng = std::mt19937_64;

/// Independent stream seed for trial `index` of a run seeded with `master`
/// (SplitMix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// All 4^n Pauli strings, identity first; string k uses digit k_q (base 4,
/// qubit 0 most significant) to pick I, X, Y, Z on qubit q.
const std::vector<Matrix>& pauli_strings(int num_qubits);

/// Linear-inversion tomography with additive Gaussian noise of std `sigma` on
/// every non-identity Pauli expectation value. The input is normalized to
/// unit trace first; the output is Hermitian with unit trace and may be
/// non-positive.
DensityOperator noisy_tomography(const DensityOperator& rho, double sigma, Rng& rng);

}  // namespace superpose::noise

#endif  // SUPERPOSE_TOMOGRAPHY_H
