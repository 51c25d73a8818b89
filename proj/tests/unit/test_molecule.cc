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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "superpose/molecule.h"
#include "superpose/pulse.h"

namespace superpose::nmr {
namespace {

constexpr double kPi = std::numbers::pi;

Molecule three_spins(double j23, CouplingRegime regime, double nu = 0.0) {
  return Molecule({{"H", nu, 4, 1, 4}, {"C2", -nu, 10, 1, 1}, {"C1", 2 * nu, 10, 1, 1}}, {{1, 2, j23, regime}});
}

TEST(Molecule, Validation) {
  EXPECT_THROW(Molecule({{"H", 0, 1, 2, 1}}, {}), std::invalid_argument);   // T2 > T1
  EXPECT_THROW(Molecule({{"H", 0, 1, 0, 1}}, {}), std::invalid_argument);   // T2 = 0
  EXPECT_THROW(Molecule({{"H", 0, 1, 1, 1}}, {{0, 1, 5.0}}), std::invalid_argument);
  EXPECT_THROW(Molecule({{"H", 0, 1, 1, 1}, {"C", 0, 1, 1, 1}}, {{0, 0, 5.0}}), std::invalid_argument);
  EXPECT_THROW(parse_regime("medium"), std::invalid_argument);
}

TEST(Molecule, TceAnchors) {
  const Molecule m = Molecule::tce();
  ASSERT_EQ(m.num_qubits(), 3);
  EXPECT_NEAR(std::abs(m.spins()[1].shift_hz - m.spins()[2].shift_hz), 1250.0, 1e-12);
  EXPECT_NEAR(m.coupling_hz(1, 2), 100.0, 1e-12);
  EXPECT_NEAR(m.coupling_hz(2, 1), 100.0, 1e-12);
  EXPECT_EQ(m.species(1), "C");
  EXPECT_EQ(m.species(0), "H");
  EXPECT_NEAR(m.with_coupling(1, 2, 200.0).coupling_hz(1, 2), 200.0, 1e-12);
  EXPECT_NEAR(m.with_shift_offset(10.0).spins()[2].shift_hz, -615.0, 1e-12);
}

TEST(Hamiltonian, ZeemanOnlyIsDiagonal) {
  const Molecule m({{"a", 100, 1, 1, 1}, {"b", -40, 1, 1, 1}}, {});
  const Matrix h = internal_hamiltonian_matrix(m);
  EXPECT_LT((h - Matrix(h.diagonal().asDiagonal())).norm(), 1e-12);
  // |00>: pi(100 - 40); |11>: -pi(100 - 40)
  EXPECT_NEAR(h(0, 0).real(), kPi * 60, 1e-9);
  EXPECT_NEAR(h(3, 3).real(), -kPi * 60, 1e-9);
  EXPECT_NEAR(h(1, 1).real(), kPi * 140, 1e-9);
}

TEST(Hamiltonian, StrongExchangeSpectrum) {
  const double j = 100.0;
  const Matrix h = internal_hamiltonian_matrix(three_spins(j, CouplingRegime::kStrong));
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 8);
  std::sort(ev.begin(), ev.end());
  // Each spin-1 value twice (qubit 0 idles): singlet -3piJ/2, triplet +piJ/2.
  EXPECT_NEAR(ev[0], -1.5 * kPi * j, 1e-9);
  EXPECT_NEAR(ev[1], -1.5 * kPi * j, 1e-9);
  for (int k = 2; k < 8; ++k) EXPECT_NEAR(ev[static_cast<std::size_t>(k)], 0.5 * kPi * j, 1e-9);
}

TEST(Hamiltonian, WeakCouplingIsZZ) {
  const double j = 50.0;
  const Matrix h = internal_hamiltonian_matrix(three_spins(j, CouplingRegime::kWeak));
  const Matrix expected = kPi / 2 * j * oracle::kron(Matrix::Identity(2, 2), oracle::kron(pauli::Z(), pauli::Z()));
  EXPECT_LT((h - expected).norm(), 1e-9);
}

TEST(Hamiltonian, Hermitian) {
  const Matrix h = internal_hamiltonian_matrix(Molecule::tce());
  EXPECT_LT((h - h.adjoint()).norm(), 1e-12);
}

TEST(ThermalDeviation, Examples) {
  const DensityOperator d = thermal_deviation(Molecule::tce());
  EXPECT_EQ(d.kind(), DensityKind::kDeviation);
  EXPECT_NEAR(d.matrix()(0, 0).real(), 6.0, 1e-12);
  EXPECT_NEAR(d.trace(), 0.0, 1e-12);
  const Molecule equal({{"a", 0, 1, 1, 1}, {"b", 0, 1, 1, 1}, {"c", 0, 1, 1, 1}}, {});
  const Matrix zsum = oracle::kron(oracle::kron(pauli::Z(), pauli::I()), pauli::I()) +
                      oracle::kron(oracle::kron(pauli::I(), pauli::Z()), pauli::I()) +
                      oracle::kron(oracle::kron(pauli::I(), pauli::I()), pauli::Z());
  EXPECT_LT((thermal_deviation(equal).matrix() - zsum).norm(), 1e-12);
}

}  // namespace
}  // namespace superpose::nmr

namespace superpose::grape {
namespace {

ControlPulse random_pulse(const Molecule& mol, int segments, double dt, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 2 * std::numbers::pi * 500);
  ControlPulse p = ControlPulse::zeros(control_hamiltonians(mol).names, segments, dt);
  for (auto& ch : p.amplitudes)
    for (double& a : ch) a = n(rng);
  return p;
}

TEST(ControlSet, ChannelsPerSpecies) {
  const ControlSet cs = control_hamiltonians(Molecule::tce());
  ASSERT_EQ(cs.names.size(), 4u);
  EXPECT_EQ(cs.names[0], "H_x");
  EXPECT_EQ(cs.names[3], "C_y");
  // Carbon x drives both carbons together.
  const Matrix cx = (embed(pauli::X(), 1, 3) + embed(pauli::X(), 2, 3)) / 2.0;
  EXPECT_LT((cs.hamiltonians[2] - cx).norm(), 1e-15);
}

TEST(ControlPulse, Validation) {
  ControlPulse p = ControlPulse::zeros({"H_x"}, 3, 1e-5);
  EXPECT_NO_THROW(p.validate());
  p.amplitudes[0][1] = 2 * kDefaultMaxAmplitude;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  ControlPulse ragged = ControlPulse::zeros({"H_x", "H_y"}, 3, 1e-5);
  ragged.amplitudes[1].pop_back();
  EXPECT_THROW(ragged.validate(), std::invalid_argument);
  ControlPulse negative = ControlPulse::zeros({"H_x"}, 3, -1e-5);
  EXPECT_THROW(negative.validate(), std::invalid_argument);
  EXPECT_NEAR(ControlPulse::zeros({"H_x"}, 700, 40e-6).duration(), 28e-3, 1e-15);
}

TEST(Propagate, ZeroAmplitudesIsDrift) {
  const Molecule mol = Molecule::tce();
  const ControlPulse p = ControlPulse::zeros(control_hamiltonians(mol).names, 25, 40e-6);
  const Matrix drift = evolve(internal_hamiltonian_matrix(mol), 1e-3);
  EXPECT_LT((propagate(p, mol).matrix() - drift).norm(), 1e-10);
  const ControlPulse instant = ControlPulse::zeros(control_hamiltonians(mol).names, 25, 0.0);
  EXPECT_LT((propagate(instant, mol).matrix() - Matrix::Identity(8, 8)).norm(), 1e-12);
}

TEST(Propagate, TimeOrderMatchesOracle) {
  const Molecule mol = Molecule::tce();
  std::mt19937_64 rng(21);
  const ControlPulse p = random_pulse(mol, 6, 40e-6, rng);
  const ControlSet cs = control_hamiltonians(mol);
  const Matrix h0 = internal_hamiltonian_matrix(mol);
  Matrix u = Matrix::Identity(8, 8);
  for (int k = 0; k < 6; ++k) {
    Matrix h = h0;
    for (std::size_t c = 0; c < cs.hamiltonians.size(); ++c) h += p.amplitudes[c][static_cast<std::size_t>(k)] * cs.hamiltonians[c];
    u = oracle::expm_hermitian(h, p.dt_s) * u;
  }
  EXPECT_LT((propagate(p, mol).matrix() - u).norm(), 1e-10);
}

TEST(Propagate, UnitaryAndRefinementInvariant) {
  const Molecule mol = Molecule::tce();
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 5; ++trial) {
    const ControlPulse p = random_pulse(mol, 40, 40e-6, rng);
    const Matrix u = propagate(p, mol).matrix();
    EXPECT_TRUE(is_unitary(u, 1e-10));
    const ControlPulse r = p.refined(2);
    EXPECT_EQ(r.segment_count(), 80);
    EXPECT_NEAR(r.duration(), p.duration(), 1e-18);
    EXPECT_LT((propagate(r, mol).matrix() - u).norm(), 1e-12);
  }
}

TEST(Propagate, ChecksChannels) {
  const Molecule mol = Molecule::tce();
  const ControlPulse wrong = ControlPulse::zeros({"H_x", "H_y"}, 3, 1e-5);
  EXPECT_THROW(propagate(wrong, mol), std::invalid_argument);
}

}  // namespace
}  // namespace superpose::grape
