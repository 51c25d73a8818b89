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
#include "superpose/grape.h"
#include "superpose/protocol.h"

namespace superpose::grape {
namespace {

constexpr double kPi = std::numbers::pi;

ControlPulse random_pulse(const Molecule& mol, int segments, double dt, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 2 * kPi * 800);
  ControlPulse p = ControlPulse::zeros(control_hamiltonians(mol).names, segments, dt);
  for (auto& ch : p.amplitudes)
    for (double& a : ch) a = n(rng);
  return p;
}

double fidelity_of(const ControlPulse& p, const Operator& target, const Molecule& mol) {
  return gate_fidelity(propagate(p, mol), target);
}

// Central differences for every amplitude; error budget 1e-6 relative, with a
// floor tied to the largest component for entries that are nearly zero.
void expect_matches_finite_differences(const ControlPulse& pulse, const Operator& target, const Molecule& mol) {
  const Gradient g = grape_gradient(pulse, target, mol);
  const double h = 1e-2;  // rad/s
  std::vector<std::vector<double>> fd(g.size());
  double scale = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) {
    for (std::size_t k = 0; k < g[c].size(); ++k) {
      ControlPulse up = pulse, down = pulse;
      up.amplitudes[c][k] += h;
      down.amplitudes[c][k] -= h;
      fd[c].push_back((fidelity_of(up, target, mol) - fidelity_of(down, target, mol)) / (2 * h));
      scale = std::max(scale, std::abs(fd[c].back()));
    }
  }
  ASSERT_GT(scale, 0.0);
  for (std::size_t c = 0; c < g.size(); ++c)
    for (std::size_t k = 0; k < g[c].size(); ++k)
      EXPECT_LE(std::abs(g[c][k] - fd[c][k]), 1e-6 * std::abs(fd[c][k]) + 1e-8 * scale)
          << "channel " << c << " segment " << k;
}

TEST(GateFidelity, Examples) {
  std::mt19937_64 rng(41);
  const Matrix u = oracle::expm_hermitian(oracle::random_hermitian(8, rng), 1.0);
  EXPECT_NEAR(gate_fidelity(u, u), 1.0, 1e-14);
  EXPECT_NEAR(gate_fidelity(Matrix(std::polar(1.0, 0.77) * u), u), 1.0, 1e-14);
  EXPECT_NEAR(gate_fidelity(Matrix::Identity(8, 8), embed(pauli::X(), 0, 3)), 0.0, 1e-15);
  EXPECT_THROW(gate_fidelity(Matrix::Identity(4, 4), Matrix::Identity(8, 8)), std::invalid_argument);
}

TEST(Gradient, FiniteDifferencesControlledSwap) {
  const Molecule mol = Molecule::tce();
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    expect_matches_finite_differences(random_pulse(mol, 12, 40e-6, rng), protocol::controlled_swap(), mol);
  }
}

TEST(Gradient, FiniteDifferencesLocalRotation) {
  const Molecule mol = Molecule::tce();
  const Operator target = local_rotation_target(3, 1, Axis::kX, kPi / 2);
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 5; ++trial) expect_matches_finite_differences(random_pulse(mol, 12, 40e-6, rng), target, mol);
}

TEST(Gradient, FiniteDifferencesWithScaledRf) {
  const Molecule mol = Molecule::tce();
  std::mt19937_64 rng(44);
  const ControlPulse p = random_pulse(mol, 8, 40e-6, rng);
  const Operator target = protocol::controlled_swap();
  const double s = 1.07;
  const Gradient g = grape_gradient(p, target, mol, s);
  const double h = 1e-2;
  ControlPulse up = p, down = p;
  up.amplitudes[2][3] += h;
  down.amplitudes[2][3] -= h;
  const double fd =
      (gate_fidelity(propagate(up, mol, s), target) - gate_fidelity(propagate(down, mol, s), target)) / (2 * h);
  EXPECT_NEAR(g[2][3], fd, 1e-6 * std::abs(fd) + 1e-12);
}

TEST(Gradient, StationaryAtPerfectFidelity) {
  const Molecule mol = Molecule::tce();
  std::mt19937_64 rng(45);
  const ControlPulse p = random_pulse(mol, 10, 40e-6, rng);
  const FidelityGradient fg = fidelity_and_gradient(p, propagate(p, mol), mol);
  EXPECT_NEAR(fg.fidelity, 1.0, 1e-12);
  double norm2 = 0.0;
  for (const auto& ch : fg.gradient)
    for (double v : ch) norm2 += v * v;
  EXPECT_LE(std::sqrt(norm2), 1e-6);
}

TEST(Gradient, SingleControlClosedForm) {
  // One undriven spin, one segment: F = |cos(u dt / 2)|.
  const Molecule mol({{"H", 0.0, 1.0, 1.0, 1.0}}, {});
  const double dt = 1e-4;
  for (double u : {1000.0, 5000.0, 20000.0, -12000.0}) {
    ControlPulse p = ControlPulse::zeros({"H_x", "H_y"}, 1, dt);
    p.amplitudes[0][0] = u;
    const FidelityGradient fg = fidelity_and_gradient(p, Operator::identity(1), mol);
    const double c = std::cos(u * dt / 2);
    EXPECT_NEAR(fg.fidelity, std::abs(c), 1e-14);
    const double expected = -(c > 0 ? 1.0 : -1.0) * std::sin(u * dt / 2) * dt / 2;
    EXPECT_NEAR(fg.gradient[0][0], expected, 1e-12);
    EXPECT_NEAR(fg.gradient[1][0], 0.0, 1e-12);
  }
}

TEST(Optimize, DriftTargetConvergesImmediately) {
  const Molecule mol = Molecule::tce();
  OptimizerConfig c;
  c.duration_s = 2e-3;
  c.segments = 50;
  c.target = Operator(evolve(internal_hamiltonian_matrix(mol), 2e-3), true);
  const ControlPulse zero = ControlPulse::zeros(control_hamiltonians(mol).names, 50, 40e-6);
  const OptimizeResult r = optimize(c, mol, zero);
  EXPECT_TRUE(r.goal_met);
  EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.log.back().iteration, 0);
}

TEST(Optimize, LocalRotationsInTwoMilliseconds) {
  const Molecule mol = Molecule::tce();
  for (int q = 0; q < 3; ++q) {
    OptimizerConfig c;
    c.target = local_rotation_target(3, q, Axis::kX, kPi / 2);
    c.duration_s = 2e-3;
    c.segments = 50;
    c.fidelity_goal = 0.999;
    c.seed = 7;
    const OptimizeResult r = optimize(c, mol);
    EXPECT_TRUE(r.goal_met) << "qubit " << q;
    EXPECT_GE(r.fidelity, 0.999);
    EXPECT_NEAR(fidelity_of(r.pulse, c.target, mol), r.fidelity, 1e-12);
    EXPECT_LE(r.pulse.max_abs_amplitude(), c.max_amplitude);
    for (std::size_t i = 1; i < r.log.size(); ++i) EXPECT_GE(r.log[i].best_fidelity, r.log[i - 1].best_fidelity);
  }
}

TEST(Optimize, DeterministicGivenSeed) {
  const Molecule mol = Molecule::tce();
  OptimizerConfig c;
  c.target = local_rotation_target(3, 0, Axis::kY, kPi);
  c.duration_s = 1e-3;
  c.segments = 25;
  c.max_iterations = 30;
  c.seed = 99;
  const OptimizeResult a = optimize(c, mol);
  const OptimizeResult b = optimize(c, mol);
  EXPECT_EQ(a.pulse.amplitudes, b.pulse.amplitudes);
  EXPECT_EQ(a.fidelity, b.fidelity);
  c.seed = 100;
  EXPECT_NE(optimize(c, mol).pulse.amplitudes, a.pulse.amplitudes);
}

TEST(Optimize, GoalNotMetIsReportedNotThrown) {
  const Molecule mol = Molecule::tce();
  OptimizerConfig c;
  c.target = protocol::controlled_swap();
  c.duration_s = 1e-3;
  c.segments = 10;
  c.max_iterations = 3;
  const OptimizeResult r = optimize(c, mol);
  EXPECT_FALSE(r.goal_met);
  EXPECT_LT(r.fidelity, c.fidelity_goal);
}

TEST(Optimize, ConfigValidation) {
  const Molecule mol = Molecule::tce();
  OptimizerConfig c;
  c.target = protocol::controlled_swap();
  c.fidelity_goal = 1.5;
  EXPECT_THROW(optimize(c, mol), std::invalid_argument);
  c.fidelity_goal = 0.99;
  c.ensemble = {{0.9, 0.0, 0.5}, {1.1, 0.0, 0.4}};
  EXPECT_THROW(optimize(c, mol), std::invalid_argument);
  c.ensemble = {EnsembleMember{}};
  c.target = Operator::identity(2);
  EXPECT_THROW(optimize(c, mol), std::invalid_argument);
}

TEST(RobustnessScan, Examples) {
  const Molecule mol = Molecule::tce();
  const Operator target = protocol::controlled_swap();
  std::mt19937_64 rng(46);
  const ControlPulse p = random_pulse(mol, 10, 40e-6, rng);
  const auto scan = rf_robustness_scan(p, mol, target, {0.9, 1.0, 1.1});
  ASSERT_EQ(scan.size(), 3u);
  EXPECT_NEAR(scan[1].second, fidelity_of(p, target, mol), 1e-14);
  const ControlPulse zero = ControlPulse::zeros(control_hamiltonians(mol).names, 10, 40e-6);
  const auto flat = rf_robustness_scan(zero, mol, target, {0.5, 1.0, 2.0});
  EXPECT_NEAR(flat[0].second, flat[1].second, 1e-14);
  EXPECT_NEAR(flat[2].second, flat[1].second, 1e-14);
}

TEST(RobustnessScan, EnsemblePulseIsFlatter) {
  const Molecule mol = Molecule::tce();
  OptimizerConfig c;
  c.target = local_rotation_target(3, 0, Axis::kX, kPi);
  c.duration_s = 2e-3;
  c.segments = 50;
  c.fidelity_goal = 0.999;
  c.seed = 3;
  const OptimizeResult plain = optimize(c, mol);
  c.ensemble = {{0.95, 0.0, 1.0 / 3}, {1.0, 0.0, 1.0 / 3}, {1.05, 0.0, 1.0 / 3}};
  const OptimizeResult robust = optimize(c, mol);
  ASSERT_TRUE(plain.goal_met);
  ASSERT_TRUE(robust.goal_met);
  auto spread = [&](const ControlPulse& p) {
    const auto s = rf_robustness_scan(p, mol, c.target, {0.95, 1.0, 1.05});
    double lo = 1.0, hi = 0.0;
    for (const auto& [scale, f] : s) {
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    return hi - lo;
  };
  // Both sit near the same nominal fidelity.
  EXPECT_GE(gate_fidelity(propagate(robust.pulse, mol), c.target), 0.999);
  EXPECT_LT(spread(robust.pulse), spread(plain.pulse));
}

}  // namespace
}  // namespace superpose::grape
