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

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "superpose/nmr.h"
#include "superpose/relaxation.h"

namespace superpose::noise {
namespace {

using nmr::Molecule;

Molecule single(double t1, double t2) { return Molecule({{"H", 0.0, t1, t2, 1.0}}, {}); }

// Amplitude damping (Kraus pair) followed by phase damping on one spin, with
// the phase damping set so transverse decay is exp(-dt/T2) overall.
Matrix kraus_oracle(const Matrix& rho, const Molecule& mol, double dt) {
  const int n = mol.num_qubits();
  Matrix out = rho;
  for (int q = 0; q < n; ++q) {
    const double t1 = mol.spins()[static_cast<std::size_t>(q)].t1_s;
    const double t2 = mol.spins()[static_cast<std::size_t>(q)].t2_s;
    const double gamma = 1 - std::exp(-dt / t1);
    Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1 - gamma);
    k1(0, 1) = std::sqrt(gamma);
    const double lambda = std::exp(-dt / t2) / std::sqrt(1 - gamma);  // remaining coherence factor
    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1;
    p0(1, 1) = lambda;
    p1(1, 1) = std::sqrt(1 - lambda * lambda);
    const Matrix a0 = embed(k0, q, n), a1 = embed(k1, q, n), b0 = embed(p0, q, n), b1 = embed(p1, q, n);
    out = a0 * out * a0.adjoint() + a1 * out * a1.adjoint();
    out = b0 * out * b0.adjoint() + b1 * out * b1.adjoint();
  }
  return out;
}

Matrix choi(const Molecule& mol, double dt) {
  const int n = mol.num_qubits();
  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix c = Matrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = 1.0;
      apply_relaxation(e, mol, dt);
      Matrix eij = Matrix::Zero(d, d);
      eij(i, j) = 1.0;
      c += oracle::kron(eij, e);
    }
  }
  return c;
}

TEST(Relaxation, ClosedFormSingleSpin) {
  const double t1 = 2.0, t2 = 0.5, dt = 0.3;
  const Molecule mol = single(t1, t2);
  const DensityOperator excited = DensityOperator::from_state(StateVector::basis(1, 1));
  const Matrix a = relaxation_step(excited, mol, dt).matrix();
  EXPECT_NEAR(a(1, 1).real(), std::exp(-dt / t1), 1e-10);
  EXPECT_NEAR(a(0, 0).real(), 1 - std::exp(-dt / t1), 1e-10);

  const DensityOperator plus((pauli::I() + pauli::X()) / 2.0, DensityKind::kPhysical);
  const Matrix b = relaxation_step(plus, mol, dt).matrix();
  EXPECT_NEAR(b(0, 1).real(), 0.5 * std::exp(-dt / t2), 1e-10);
  EXPECT_NEAR(b(0, 1).imag(), 0.0, 1e-12);
}

TEST(Relaxation, DisabledIsIdentity) {
  const double inf = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(51);
  const DensityOperator rho(oracle::random_density(2, rng), DensityKind::kPhysical);
  EXPECT_LT((relaxation_step(rho, single(inf, inf), 1.0).matrix() - rho.matrix()).norm(), 1e-15);
  EXPECT_LT((relaxation_step(rho, single(1.0, 1.0), 0.0).matrix() - rho.matrix()).norm(), 1e-15);
}

TEST(Relaxation, MatchesKrausOracle) {
  const Molecule mol = Molecule::tce();
  std::mt19937_64 rng(52);
  for (double dt : {1e-4, 1e-3, 0.05, 0.7}) {
    const DensityOperator rho(oracle::random_density(8, rng), DensityKind::kPhysical);
    EXPECT_LT((relaxation_step(rho, mol, dt).matrix() - kraus_oracle(rho.matrix(), mol, dt)).norm(), 1e-10);
  }
}

TEST(Relaxation, TracePreservingAndHermitian) {
  const Molecule mol = Molecule::tce();
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityOperator rho(oracle::random_density(8, rng), DensityKind::kPhysical);
    const Matrix out = relaxation_step(rho, mol, 0.01 * (trial + 1)).matrix();
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(out.trace().imag(), 0.0, 1e-12);
    EXPECT_LT((out - out.adjoint()).norm(), 1e-12);
  }
}

TEST(Relaxation, CompletelyPositiveByChoi) {
  for (double dt : {1e-3, 0.1, 1.0, 10.0}) {
    for (const Molecule& mol : {single(2.0, 0.5), single(1.0, 1.0), single(3.0, 0.01)}) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(choi(mol, dt));
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
      // Trace preservation as a partial trace of the Choi matrix.
      const Matrix c = choi(mol, dt);
      EXPECT_NEAR((c(0, 0) + c(1, 1)).real(), 1.0, 1e-12);
      EXPECT_NEAR((c(2, 2) + c(3, 3)).real(), 1.0, 1e-12);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> two(choi(Molecule({{"a", 0, 2, 1, 1}, {"b", 0, 5, 0.2, 1}}, {}), dt));
    EXPECT_GE(two.eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(Relaxation, Semigroup) {
  const Molecule mol = Molecule::tce();
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityOperator rho(oracle::random_density(8, rng), DensityKind::kPhysical);
    const double dt1 = 0.013 * (trial + 1), dt2 = 0.2;
    const DensityOperator two = relaxation_step(relaxation_step(rho, mol, dt1), mol, dt2);
    EXPECT_LT((two.matrix() - relaxation_step(rho, mol, dt1 + dt2).matrix()).norm(), 1e-10);
  }
}

TEST(Relaxation, FixedPointIsGround) {
  const DensityOperator ground = DensityOperator::from_state(StateVector::basis(3, 0));
  EXPECT_LT((relaxation_step(ground, Molecule::tce(), 5.0).matrix() - ground.matrix()).norm(), 1e-14);
}

TEST(Relaxation, Validation) {
  const Molecule mol = Molecule::tce();
  EXPECT_THROW(relaxation_step(DensityOperator(nmr::pps_target(3).matrix(), DensityKind::kDeviation), mol, 1e-3),
               std::invalid_argument);
  EXPECT_THROW(relaxation_step(DensityOperator::maximally_mixed(3), mol, -1.0), std::invalid_argument);
  EXPECT_THROW(relaxation_step(DensityOperator::maximally_mixed(2), mol, 1.0), std::invalid_argument);
  EXPECT_THROW(single(1.0, 2.0), std::invalid_argument);
}

}  // namespace
}  // namespace superpose::noise
