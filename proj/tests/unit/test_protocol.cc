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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "superpose/protocol.h"

namespace superpose::protocol {
namespace {

constexpr double kPi = std::numbers::pi;
const double kRt2 = std::sqrt(0.5);

StateVector ket(Complex a, Complex b) { return StateVector(Vector((Vector(2) << a, b).finished())); }

// Random task with both |<phi_i|chi>| >= min_overlap.
SuperpositionTask random_task(std::mt19937_64& rng, double min_overlap) {
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  for (;;) {
    const StateVector phi1(oracle::random_ket(2, rng));
    const StateVector phi2(oracle::random_ket(2, rng));
    const StateVector chi(oracle::random_ket(2, rng));
    if (std::abs(phi1.inner(chi)) < min_overlap || std::abs(phi2.inner(chi)) < min_overlap) continue;
    const Vector w = oracle::random_ket(2, rng);
    return SuperpositionTask(phi1, phi2, chi, w(0), w(1));
  }
}

TEST(Task, ValidatesWeights) {
  const StateVector z = StateVector::basis(1, 0);
  EXPECT_THROW(SuperpositionTask(z, z, z, 1.0, 1.0), std::invalid_argument);
  const SuperpositionTask t(z, ket(kRt2, kRt2), z, kRt2, kRt2);
  EXPECT_NEAR(std::abs(t.overlap2()), kRt2, 1e-15);
}

TEST(AncillaState, Examples) {
  EXPECT_LT(phase_distance(ancilla_state(1.0, 0.0), StateVector::basis(1, 0)), 1e-15);
  EXPECT_LT(phase_distance(ancilla_state(kRt2, kRt2), ket(kRt2, kRt2)), 1e-15);
  const double t = 0.9;
  EXPECT_LT(phase_distance(ancilla_state(std::cos(t / 2), std::sin(t / 2)), bloch_ket(t, 0.0)), 1e-15);
  EXPECT_THROW(ancilla_state(1.0, 1.0), std::invalid_argument);
}

TEST(MuState, Examples) {
  const StateVector plus = ket(kRt2, kRt2);
  const StateVector minus = ket(kRt2, -kRt2);
  const StateVector zero = StateVector::basis(1, 0);
  EXPECT_LT(phase_distance(mu_state(plus, minus, zero), plus), 1e-15);

  const double th = 1.1;
  const double c = std::cos(th / 2);
  const StateVector expected = StateVector::normalized((Vector(2) << 1.0, c).finished());
  EXPECT_LT(phase_distance(mu_state(zero, bloch_ket(th, kPi / 2), zero), expected), 1e-15);

  EXPECT_LT(phase_distance(mu_state(zero, StateVector::basis(1, 1), zero), zero), 1e-15);
  EXPECT_THROW(mu_state(StateVector::basis(1, 1), StateVector::basis(1, 1), zero), std::invalid_argument);
}

TEST(ControlledSwap, Examples) {
  const Operator u = controlled_swap();
  EXPECT_LT(phase_distance(u.apply(StateVector::basis(3, 0b101)), StateVector::basis(3, 0b110)), 1e-15);
  EXPECT_LT(phase_distance(u.apply(StateVector::basis(3, 0b001)), StateVector::basis(3, 0b001)), 1e-15);
  EXPECT_TRUE((u.matrix() * u.matrix()).isApprox(Matrix::Identity(8, 8)));
}

TEST(RunIdeal, MatchesBruteForceAndAnalytic) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const SuperpositionTask t = random_task(rng, 0.05);
    const ProtocolOutcome o = run_ideal(t);
    const Vector mu = mu_state(t.phi1(), t.phi2(), t.chi()).amplitudes();
    const Vector nu = ancilla_state(t.alpha(), t.beta()).amplitudes();
    const Vector raw = oracle::brute_force_protocol(nu, t.phi1().amplitudes(), t.phi2().amplitudes(),
                                                    t.chi().amplitudes(), mu);
    EXPECT_NEAR(o.success_probability, raw.squaredNorm(), 1e-12);
    EXPECT_LT(oracle::phase_distance(o.output.amplitudes(), raw / raw.norm()), 1e-10);
    EXPECT_LT(phase_distance(o.output, analytic_superposition(t)), 1e-10);
    EXPECT_GE(o.success_probability, 0.0);
    EXPECT_LE(o.success_probability, 1.0);
  }
}

TEST(RunIdeal, AnalyticFormulaOracle) {
  // alpha <chi|phi2>/|.| phi1 + beta <chi|phi1>/|.| phi2, renormalized.
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const SuperpositionTask t = random_task(rng, 0.05);
    const Complex c2 = t.chi().inner(t.phi2());
    const Complex c1 = t.chi().inner(t.phi1());
    Vector v = t.alpha() * (c2 / std::abs(c2)) * t.phi1().amplitudes() +
               t.beta() * (c1 / std::abs(c1)) * t.phi2().amplitudes();
    v /= v.norm();
    EXPECT_LT(oracle::phase_distance(analytic_superposition(t).amplitudes(), v), 1e-12);
  }
}

TEST(RunIdeal, GroupA) {
  for (int k = 0; k < 12; ++k) {
    const double th = k * kPi / 12;
    const SuperpositionTask t = SuperpositionTask::group_a(th);
    const ProtocolOutcome o = run_ideal(t);
    const StateVector expected =
        StateVector(Vector(std::cos(th / 2) * ket(kRt2, kRt2).amplitudes() + std::sin(th / 2) * ket(kRt2, -kRt2).amplitudes()));
    EXPECT_LT(phase_distance(o.output, expected), 1e-10);
    EXPECT_NEAR(o.success_probability, 0.25, 1e-12);
    EXPECT_NEAR(std::norm(t.phi1().inner(o.output)), std::pow(std::cos(th / 2), 2), 1e-12);
    EXPECT_NEAR(theory_overlap(Group::kA, th), std::pow(std::cos(th / 2), 2), 1e-15);
  }
}

TEST(RunIdeal, GroupB) {
  for (int k = 0; k < 12; ++k) {
    const double th = k * kPi / 12;
    const double c = std::cos(th / 2);
    const double s = std::sin(th / 2);
    const SuperpositionTask t = SuperpositionTask::group_b(th);
    const ProtocolOutcome o = run_ideal(t);
    const StateVector expected = ket((1 + c) / std::sqrt(2 + 2 * c), Complex(0, s / std::sqrt(2 + 2 * c)));
    EXPECT_LT(phase_distance(o.output, expected), 1e-10);
    EXPECT_NEAR(o.success_probability, c * c * (1 + c) / (1 + c * c), 1e-12);
    const double overlap = (1 + 2 * c + c * c) / (2 + 2 * c);
    EXPECT_NEAR(std::norm(t.phi1().inner(o.output)), overlap, 1e-12);
    EXPECT_NEAR(theory_overlap(Group::kB, th), overlap, 1e-15);
    EXPECT_NEAR(theory_success_probability(Group::kB, th), o.success_probability, 1e-12);
  }
  const ProtocolOutcome zero = run_ideal(SuperpositionTask::group_b(0.0));
  EXPECT_NEAR(zero.success_probability, 1.0, 1e-12);
  EXPECT_LT(phase_distance(zero.output, StateVector::basis(1, 0)), 1e-12);
}

TEST(TheoryOverlap, Examples) {
  EXPECT_NEAR(theory_overlap(Group::kA, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(theory_overlap(Group::kB, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(theory_overlap(Group::kB, kPi), 0.5, 1e-15);
  for (int k = 0; k < 12; ++k) EXPECT_NEAR(theory_success_probability(Group::kA, k * kPi / 12), 0.25, 1e-15);
}

TEST(RunIdeal, SuccessProbabilityIgnoresGlobalPhases) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const SuperpositionTask t = random_task(rng, 0.05);
    const Complex g1 = std::polar(1.0, 0.3), g2 = std::polar(1.0, -1.2), g3 = std::polar(1.0, 2.0),
                  g4 = std::polar(1.0, 0.9);
    const SuperpositionTask rotated(StateVector(Vector(g1 * t.phi1().amplitudes())),
                                    StateVector(Vector(g2 * t.phi2().amplitudes())),
                                    StateVector(Vector(g3 * t.chi().amplitudes())), g4 * t.alpha(), g4 * t.beta());
    EXPECT_NEAR(run_ideal(rotated).success_probability, run_ideal(t).success_probability, 1e-12);
  }
}

TEST(RunIdeal, SuperposingAStateWithItself) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector phi(oracle::random_ket(2, rng));
    const Vector w = oracle::random_ket(2, rng);
    if (std::abs(w(0) + w(1)) < 0.1) continue;  // alpha + beta ~ 0 cancels the output
    const ProtocolOutcome o = run_ideal(SuperpositionTask(phi, phi, phi, w(0), w(1)));
    EXPECT_LT(phase_distance(o.output, phi), 1e-10);
  }
}

TEST(RunIdeal, OrthogonalReferenceFails) {
  const StateVector zero = StateVector::basis(1, 0);
  const StateVector one = StateVector::basis(1, 1);
  // phi2 orthogonal to chi: the phase factor is undefined.
  EXPECT_THROW(analytic_superposition(SuperpositionTask(zero, one, zero, kRt2, kRt2)), std::invalid_argument);
  // Both inputs orthogonal to chi.
  EXPECT_ANY_THROW(run_ideal(SuperpositionTask(one, one, zero, kRt2, kRt2)));
  // alpha = -beta on identical inputs: the two branches cancel.
  EXPECT_THROW(run_ideal(SuperpositionTask(zero, zero, zero, kRt2, -kRt2)), PostSelectionError);
}

TEST(Group, Parsing) {
  EXPECT_EQ(parse_group("A"), Group::kA);
  EXPECT_EQ(parse_group("b"), Group::kB);
  EXPECT_THROW(parse_group("C"), std::invalid_argument);
}

}  // namespace
}  // namespace superpose::protocol
