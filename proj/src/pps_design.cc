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

// Spatial-averaging pseudo-pure preparation for three spins.
//
// Each round is: local rotations, free evolution, local rotations, crusher.
// The free evolution runs under the complete internal Hamiltonian, so the
// local rotations have to absorb chemical shifts and the strongly coupled
// flip-flop terms. They are found by least squares from a fixed seed.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

#include "superpose/nmr.h"

namespace superpose::nmr {
namespace {

constexpr int kRounds = 3;
constexpr int kLayerParams = 9;  // three Euler angles per qubit
constexpr int kParams = kRounds * 2 * kLayerParams;
constexpr double kTargetDeficit = 1e-11;

// Solution for the bundled trichloroethylene parameters; a good start for
// nearby molecules.
constexpr std::array<double, kParams> kSeed = {
    -2.403348, 1.716326,  0.828312,  1.270487,  -1.208251, -1.890018, 0.801723,  -0.22671,
    0.014329,  -1.853814, -2.554079, 1.437475,  2.260715,  2.54285,   -2.945536, -1.432079,
    0.037974,  2.050513,  -2.209584, -0.284362, 1.381485,  0.15901,   0.37893,   0.948209,
    2.896181,  2.014756,  1.958005,  -2.757699, -0.26584,  2.045958,  -0.673911, -3.126691,
    3.075121,  -0.160831, -2.367508, 2.597981,  -0.706646, -3.140095, -0.350691, 0.682,
    2.562838,  0.225251,  2.106006,  0.249465,  -2.409135, -3.138658, -3.140228, 1.264988,
    -0.425144, 2.133955,  0.200254,  -2.391512, -0.033321, -2.225571,
};

// rz(a) ry(b) rz(c)
Matrix euler(const double* p) {
  return rotation_matrix(Axis::kZ, p[0]) * rotation_matrix(Axis::kY, p[1]) *
         rotation_matrix(Axis::kZ, p[2]);
}

Matrix layer(const double* p) { return kron(kron(euler(p), euler(p + 3)), euler(p + 6)); }

struct PpsModel {
  Matrix thermal;
  std::array<Matrix, kRounds> free;
  Eigen::MatrixXd keep;  // 1 on zero-coherence-order elements
  Matrix target;         // unit Frobenius norm

  explicit PpsModel(const Molecule& mol, const std::array<double, kRounds>& taus) {
    thermal = thermal_deviation(mol).matrix();
    const Matrix h = internal_hamiltonian_matrix(mol);
    for (int k = 0; k < kRounds; ++k) free[static_cast<std::size_t>(k)] = evolve(h, taus[static_cast<std::size_t>(k)]);
    // Zero total coherence order: bra and ket have the same number of 1s.
    keep.resize(8, 8);
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) keep(r, c) = std::popcount(unsigned(r)) == std::popcount(unsigned(c)) ? 1.0 : 0.0;
    }
    target = pps_target(3).matrix();
    target /= target.norm();
  }

  Matrix run(const double* p) const {
    Matrix rho = thermal;
    for (int k = 0; k < kRounds; ++k) {
      const double* pre = p + 2 * kLayerParams * k;
      const Matrix u = layer(pre + kLayerParams) * free[static_cast<std::size_t>(k)] * layer(pre);
      rho = (u * rho * u.adjoint()).cwiseProduct(keep.cast<Complex>());
    }
    return rho;
  }
};

struct Residual : Eigen::DenseFunctor<double> {
  const PpsModel* model;
  explicit Residual(const PpsModel* m) : DenseFunctor<double>(kParams, 128), model(m) {}

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const Matrix rho = model->run(x.data());
    const double norm = rho.norm();
    if (norm < 1e-9) {
      f.setOnes();
      return 0;
    }
    const Matrix d = rho / norm - model->target;
    for (Eigen::Index k = 0; k < 64; ++k) {
      f(k) = d(k).real();
      f(64 + k) = d(k).imag();
    }
    return 0;
  }
};

double deficit(const PpsModel& model, const Eigen::VectorXd& x) {
  const Matrix rho = model.run(x.data());
  const double norm = rho.norm();
  if (norm < 1e-9) return 1.0;
  return 1.0 - (rho / norm).cwiseProduct(model.target.conjugate()).sum().real();
}

Eigen::VectorXd refine(const PpsModel& model, Eigen::VectorXd x) {
  Residual functor(&model);
  Eigen::NumericalDiff<Residual> numdiff(functor);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Residual>> lm(numdiff);
  lm.setMaxfev(400 * (kParams + 1));
  lm.setXtol(1e-14);
  lm.setFtol(1e-14);
  lm.minimize(x);
  return x;
}

std::vector<Event> layer_events(const double* p) {
  std::vector<Event> events;
  for (int q = 0; q < 3; ++q) {
    const double* e = p + 3 * q;
    // rz(a) ry(b) rz(c) acts as rz(c) first.
    events.emplace_back(IdealRotation{q, Axis::kZ, e[2]});
    events.emplace_back(IdealRotation{q, Axis::kY, e[1]});
    events.emplace_back(IdealRotation{q, Axis::kZ, e[0]});
  }
  return events;
}

}  // namespace

PulseProgram canned_pps_program(const Molecule& mol) {
  if (mol.num_qubits() != 3) {
    throw std::invalid_argument("the canned pseudo-pure program is defined for three spins");
  }
  std::vector<double> js;
  for (const Coupling& c : mol.couplings()) js.push_back(std::abs(c.j_hz));
  std::sort(js.rbegin(), js.rend());
  if (js.size() < 2 || js[1] <= 0.0) {
    throw std::invalid_argument("pseudo-pure preparation needs at least two nonzero couplings");
  }
  const std::array<double, kRounds> taus = {1 / (2 * js[0]), 1 / (2 * js[1]), 1 / (2 * js[1])};
  const PpsModel model(mol, taus);

  Eigen::VectorXd best = Eigen::Map<const Eigen::VectorXd>(kSeed.data(), kParams);
  best = refine(model, best);
  double best_deficit = deficit(model, best);
  // Restarts around the seed, then from scratch, if the seed basin is lost.
  std::mt19937_64 rng(20170123);
  std::normal_distribution<double> jitter(0.0, 0.3);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int attempt = 0; attempt < 40 && best_deficit > kTargetDeficit; ++attempt) {
    Eigen::VectorXd x(kParams);
    for (int k = 0; k < kParams; ++k) {
      x(k) = attempt < 20 ? kSeed[static_cast<std::size_t>(k)] + jitter(rng) : angle(rng);
    }
    x = refine(model, x);
    const double d = deficit(model, x);
    if (d < best_deficit) {
      best_deficit = d;
      best = x;
    }
  }

  std::vector<Event> events;
  for (int k = 0; k < kRounds; ++k) {
    const double* pre = best.data() + 2 * kLayerParams * k;
    for (Event& e : layer_events(pre)) events.push_back(std::move(e));
    events.emplace_back(FreeEvolution{taus[static_cast<std::size_t>(k)]});
    for (Event& e : layer_events(pre + kLayerParams)) events.push_back(std::move(e));
    events.emplace_back(Crusher{});
  }
  return PulseProgram(std::move(events));
}

}  // namespace superpose::nmr
