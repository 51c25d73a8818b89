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

#include "superpose/grape.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace superpose::grape {
namespace {

using Flat = Eigen::VectorXd;  // amplitudes flattened channel-major

Flat flatten(const ControlPulse& p) {
  const int nc = p.channel_count();
  const int ns = p.segment_count();
  Flat x(static_cast<Eigen::Index>(nc) * ns);
  for (int c = 0; c < nc; ++c) {
    for (int k = 0; k < ns; ++k) x(c * ns + k) = p.amplitudes[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
  }
  return x;
}

void unflatten(const Flat& x, ControlPulse& p) {
  const int nc = p.channel_count();
  const int ns = p.segment_count();
  for (int c = 0; c < nc; ++c) {
    for (int k = 0; k < ns; ++k) p.amplitudes[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] = x(c * ns + k);
  }
}

// Everything about one ensemble member that does not depend on amplitudes.
struct Problem {
  Matrix drift;
  ControlSet controls;
  double rf_scale = 1.0;
  double weight = 1.0;
};

Problem make_problem(const Molecule& mol, double rf_scale, double shift_offset_hz, double weight) {
  const Molecule m = shift_offset_hz == 0.0 ? mol : mol.with_shift_offset(shift_offset_hz);
  return {internal_hamiltonian_matrix(m), control_hamiltonians(m), rf_scale, weight};
}

double fidelity_only(const Problem& pr, const ControlPulse& pulse, const Matrix& target) {
  const auto dim = target.rows();
  Matrix u = Matrix::Identity(dim, dim);
  for (int k = 0; k < pulse.segment_count(); ++k) {
    const Matrix h = segment_hamiltonian(pr.drift, pr.controls, pulse, k, pr.rf_scale);
    u = (evolve(h, pulse.dt_s) * u).eval();
  }
  return gate_fidelity(u, target);
}

// Adds weight * dF/du into grad (flattened) and returns F.
double accumulate_gradient(const Problem& pr, const ControlPulse& pulse, const Matrix& target,
                           Flat* grad) {
  const auto dim = target.rows();
  const int ns = pulse.segment_count();
  const int nc = pulse.channel_count();
  const double dt = pulse.dt_s;
  std::vector<Matrix> vecs(static_cast<std::size_t>(ns));
  std::vector<Eigen::VectorXd> vals(static_cast<std::size_t>(ns));
  std::vector<Vector> phases(static_cast<std::size_t>(ns));
  std::vector<Matrix> forward(static_cast<std::size_t>(ns) + 1);
  forward[0] = Matrix::Identity(dim, dim);
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  for (int k = 0; k < ns; ++k) {
    const auto i = static_cast<std::size_t>(k);
    es.compute(segment_hamiltonian(pr.drift, pr.controls, pulse, k, pr.rf_scale));
    vecs[i] = es.eigenvectors();
    vals[i] = es.eigenvalues();
    phases[i] = (vals[i].cast<Complex>() * (-kI * dt)).array().exp();
    forward[i + 1] = vecs[i] * phases[i].asDiagonal() * vecs[i].adjoint() * forward[i];
  }
  const Complex g = (target.adjoint() * forward[static_cast<std::size_t>(ns)]).trace();
  const double f = std::abs(g) / static_cast<double>(dim);
  if (grad == nullptr) return f;
  if (std::abs(g) < 1e-300) return f;  // |g| is not differentiable at 0

  Matrix backward = target.adjoint();
  Matrix phi(dim, dim);
  for (int k = ns - 1; k >= 0; --k) {
    const auto i = static_cast<std::size_t>(k);
    const Matrix& v = vecs[i];
    const Eigen::VectorXd& w = vals[i];
    const Vector& e = phases[i];
    for (Eigen::Index a = 0; a < dim; ++a) {
      for (Eigen::Index b = 0; b < dim; ++b) {
        const double dw = w(a) - w(b);
        phi(a, b) = std::abs(dw) > 1e-9 ? (e(a) - e(b)) / dw : -kI * dt * e(a);
      }
    }
    // d tr(B U_k F) = tr(V (Phi o V^dag dH V) V^dag F B); fold Phi into
    // M = Phi o (V^dag F B V)^T so that the channel derivative is tr(dH V M^T V^dag).
    const Matrix a_mat = v.adjoint() * forward[i] * backward * v;
    const Matrix m = phi.cwiseProduct(a_mat.transpose());
    const Matrix bmat = v * m.transpose() * v.adjoint();
    for (int c = 0; c < nc; ++c) {
      const Matrix& hc = pr.controls.hamiltonians[static_cast<std::size_t>(c)];
      const Complex dg = pr.rf_scale * hc.cwiseProduct(bmat.transpose()).sum();
      (*grad)(c * ns + k) += pr.weight * std::real(std::conj(g) * dg) / (std::abs(g) * static_cast<double>(dim));
    }
    backward = (backward * v * e.asDiagonal() * v.adjoint()).eval();
  }
  return f;
}

double ensemble_value(const std::vector<Problem>& probs, const ControlPulse& pulse,
                      const Matrix& target, Flat* grad) {
  if (grad) grad->setZero(static_cast<Eigen::Index>(pulse.channel_count()) * pulse.segment_count());
  double f = 0.0;
  for (const Problem& pr : probs) {
    f += pr.weight * (grad ? accumulate_gradient(pr, pulse, target, grad) : fidelity_only(pr, pulse, target));
  }
  return f;
}

void clamp(Flat& x, double bound) { x = x.cwiseMax(-bound).cwiseMin(bound); }

}  // namespace

double gate_fidelity(const Matrix& u, const Matrix& target) {
  if (u.rows() != target.rows() || u.cols() != target.cols()) {
    throw std::invalid_argument("gate fidelity: dimension mismatch");
  }
  return std::abs((target.adjoint() * u).trace()) / static_cast<double>(u.rows());
}

double gate_fidelity(const Operator& u, const Operator& target) {
  if (!u.is_unitary() || !target.is_unitary()) {
    throw std::invalid_argument("gate fidelity needs unitary operators");
  }
  return gate_fidelity(u.matrix(), target.matrix());
}

FidelityGradient fidelity_and_gradient(const ControlPulse& pulse, const Operator& target,
                                       const Molecule& mol, double rf_scale) {
  const Problem pr = make_problem(mol, rf_scale, 0.0, 1.0);
  check_channels(pulse, pr.controls);
  if (target.dim() != static_cast<std::size_t>(pr.drift.rows())) {
    throw std::invalid_argument("target does not act on the molecule's state space");
  }
  Flat grad = Flat::Zero(static_cast<Eigen::Index>(pulse.channel_count()) * pulse.segment_count());
  FidelityGradient out;
  out.fidelity = accumulate_gradient(pr, pulse, target.matrix(), &grad);
  ControlPulse shaped = pulse;
  unflatten(grad, shaped);
  out.gradient = std::move(shaped.amplitudes);
  return out;
}

Gradient grape_gradient(const ControlPulse& pulse, const Operator& target, const Molecule& mol,
                        double rf_scale) {
  return fidelity_and_gradient(pulse, target, mol, rf_scale).gradient;
}

void OptimizerConfig::validate() const {
  if (!target.is_unitary()) throw std::invalid_argument("optimizer target must be unitary");
  if (!(fidelity_goal > 0.0 && fidelity_goal <= 1.0)) {
    throw std::invalid_argument("fidelity goal must lie in (0, 1]");
  }
  if (max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
  if (segments < 1) throw std::invalid_argument("segments must be >= 1");
  if (!(duration_s >= 0.0)) throw std::invalid_argument("duration must be >= 0");
  if (!(initial_step > 0.0)) throw std::invalid_argument("initial step must be > 0");
  if (!(max_amplitude > 0.0)) throw std::invalid_argument("amplitude bound must be > 0");
  if (!(initial_sigma >= 0.0)) throw std::invalid_argument("initial sigma must be >= 0");
  if (ensemble.empty()) throw std::invalid_argument("ensemble must have at least one member");
  double total = 0.0;
  for (const EnsembleMember& m : ensemble) {
    if (!(m.weight >= 0.0)) throw std::invalid_argument("ensemble weights must be >= 0");
    total += m.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("ensemble weights must sum to 1");
}

OptimizeResult optimize(const OptimizerConfig& config, const Molecule& mol,
                        const std::optional<ControlPulse>& initial,
                        const IterationCallback& on_iteration) {
  config.validate();
  std::vector<Problem> probs;
  for (const EnsembleMember& m : config.ensemble) {
    probs.push_back(make_problem(mol, m.rf_scale, m.shift_offset_hz, m.weight));
  }
  const Matrix& target = config.target.matrix();
  if (target.rows() != probs.front().drift.rows()) {
    throw std::invalid_argument("target does not act on the molecule's state space");
  }

  ControlPulse pulse;
  if (initial) {
    pulse = *initial;
    pulse.validate(config.max_amplitude);
  } else {
    pulse = ControlPulse::zeros(probs.front().controls.names, config.segments,
                                config.duration_s / config.segments);
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> dist(0.0, config.initial_sigma);
    for (auto& ch : pulse.amplitudes) {
      for (double& a : ch) a = config.initial_sigma > 0.0 ? dist(rng) : 0.0;
    }
  }
  check_channels(pulse, probs.front().controls);

  Flat x = flatten(pulse);
  clamp(x, config.max_amplitude);
  unflatten(x, pulse);
  Flat grad;
  double f = ensemble_value(probs, pulse, target, &grad);

  OptimizeResult result;
  auto record = [&](int it) {
    IterationRecord r{it, f, grad.norm(), f};
    if (!result.log.empty()) r.best_fidelity = std::max(f, result.log.back().best_fidelity);
    result.log.push_back(r);
    if (on_iteration) on_iteration(r);
  };
  record(0);

  // Quasi-Newton memory for the minimization of -F.
  constexpr std::size_t kMemory = 12;
  std::deque<std::pair<Flat, Flat>> memory;  // (s, y)
  const double bound = config.max_amplitude;
  for (int it = 1; it <= config.max_iterations && f < config.fidelity_goal; ++it) {
    // Two-loop recursion on q = -grad (the gradient of -F).
    Flat q = -grad;
    std::vector<double> alpha(memory.size());
    for (std::size_t j = memory.size(); j-- > 0;) {
      const auto& [s, y] = memory[j];
      alpha[j] = s.dot(q) / y.dot(s);
      q -= alpha[j] * y;
    }
    if (memory.empty()) {
      const double gmax = grad.cwiseAbs().maxCoeff();
      if (gmax == 0.0) break;
      q *= config.initial_step / gmax;
    } else {
      const auto& [s, y] = memory.back();
      q *= s.dot(y) / y.dot(y);
    }
    for (std::size_t j = 0; j < memory.size(); ++j) {
      const auto& [s, y] = memory[j];
      const double beta = y.dot(q) / y.dot(s);
      q += (alpha[j] - beta) * s;
    }
    Flat dir = -q;  // ascent direction for F
    if (dir.dot(grad) <= 0.0) {
      memory.clear();
      dir = grad * (config.initial_step / grad.cwiseAbs().maxCoeff());
    }

    double step = 1.0;
    bool accepted = false;
    Flat x_new;
    ControlPulse trial = pulse;
    double f_new = f;
    for (int bt = 0; bt < 40; ++bt, step *= 0.5) {
      x_new = x + step * dir;
      clamp(x_new, bound);
      unflatten(x_new, trial);
      f_new = ensemble_value(probs, trial, target, nullptr);
      if (f_new >= f + 1e-4 * grad.dot(x_new - x) && f_new > f) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    Flat grad_new;
    f_new = ensemble_value(probs, trial, target, &grad_new);
    Flat s = x_new - x;
    Flat y = grad - grad_new;  // gradient change of -F
    if (s.dot(y) > 1e-12 * s.norm() * y.norm()) {
      memory.emplace_back(std::move(s), std::move(y));
      if (memory.size() > kMemory) memory.pop_front();
    }
    x = std::move(x_new);
    pulse = std::move(trial);
    f = f_new;
    grad = std::move(grad_new);
    record(it);
  }

  result.pulse = std::move(pulse);
  result.fidelity = f;
  result.goal_met = f >= config.fidelity_goal;
  return result;
}

std::vector<std::pair<double, double>> rf_robustness_scan(const ControlPulse& pulse,
                                                          const Molecule& mol,
                                                          const Operator& target,
                                                          const std::vector<double>& scalings) {
  std::vector<std::pair<double, double>> out;
  out.reserve(scalings.size());
  for (double s : scalings) out.emplace_back(s, gate_fidelity(propagate(pulse, mol, s), target));
  return out;
}

Operator local_rotation_target(int num_qubits, int qubit, Axis axis, double angle) {
  if (qubit < 0 || qubit >= num_qubits) throw std::invalid_argument("rotation qubit out of range");
  return Operator(embed(rotation_matrix(axis, angle), qubit, num_qubits), true);
}

}  // namespace superpose::grape
