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

#include "superpose/protocol.h"

#include <cmath>
#include <sstream>
#include <string>

namespace superpose::protocol {

namespace {

constexpr double kOverlapFloor = 1e-12;

void require_single_qubit(const StateVector& s, const char* name) {
  if (s.num_qubits() != 1) {
    std::ostringstream ss;
    ss << name << " must be a single-qubit state";
    throw std::invalid_argument(ss.str());
  }
}

void require_nonzero_overlaps(const SuperpositionTask& task) {
  if (std::abs(task.overlap1()) <= kOverlapFloor || std::abs(task.overlap2()) <= kOverlapFloor) {
    throw std::invalid_argument(
        "referential state is orthogonal to an input; the relative phase is undefined");
  }
}

StateVector ket(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return StateVector::normalized(std::move(v));
}

}  // namespace

Group parse_group(std::string_view name) {
  if (name == "A" || name == "a") return Group::kA;
  if (name == "B" || name == "b") return Group::kB;
  throw std::invalid_argument("unknown experiment group '" + std::string(name) + "'");
}

const char* group_name(Group g) { return g == Group::kA ? "A" : "B"; }

SuperpositionTask::SuperpositionTask(StateVector phi1, StateVector phi2, StateVector chi,
                                     Complex alpha, Complex beta)
    : phi1_(std::move(phi1)),
      phi2_(std::move(phi2)),
      chi_(std::move(chi)),
      alpha_(alpha),
      beta_(beta),
      overlap1_(phi1_.inner(chi_)),
      overlap2_(phi2_.inner(chi_)) {
  require_single_qubit(phi1_, "phi1");
  require_single_qubit(phi2_, "phi2");
  require_single_qubit(chi_, "chi");
  const double weight = std::norm(alpha_) + std::norm(beta_);
  if (std::abs(weight - 1.0) > 1e-12) {
    std::ostringstream ss;
    ss << "superposition weights satisfy |alpha|^2 + |beta|^2 = " << weight << ", not 1";
    throw std::invalid_argument(ss.str());
  }
}

SuperpositionTask SuperpositionTask::group_a(double theta1) {
  const double r = 1.0 / std::sqrt(2.0);
  return SuperpositionTask(ket(r, r), ket(r, -r), StateVector::basis(1, 0), std::cos(theta1 / 2),
                           std::sin(theta1 / 2));
}

SuperpositionTask SuperpositionTask::group_b(double theta2) {
  const double r = 1.0 / std::sqrt(2.0);
  return SuperpositionTask(StateVector::basis(1, 0),
                           ket(std::cos(theta2 / 2), kI * std::sin(theta2 / 2)),
                           StateVector::basis(1, 0), r, r);
}

SuperpositionTask SuperpositionTask::for_group(Group g, double theta) {
  return g == Group::kA ? group_a(theta) : group_b(theta);
}

StateVector ancilla_state(Complex alpha, Complex beta) {
  Vector v(2);
  v << alpha, beta;
  try {
    return StateVector(std::move(v));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("ancilla weights are not normalized");
  }
}

StateVector mu_state(const StateVector& phi1, const StateVector& phi2, const StateVector& chi) {
  const double m1 = std::abs(phi1.inner(chi));
  const double m2 = std::abs(phi2.inner(chi));
  if (m1 <= kOverlapFloor && m2 <= kOverlapFloor) {
    throw std::invalid_argument("referential state orthogonal to both inputs");
  }
  return ket(m1, m2);
}

Operator controlled_swap() {
  Matrix u = Matrix::Identity(8, 8);
  // |1,0,1> <-> |1,1,0>
  u(5, 5) = 0;
  u(6, 6) = 0;
  u(5, 6) = 1;
  u(6, 5) = 1;
  return Operator(std::move(u), true);
}

StateVector input_register(const SuperpositionTask& task) {
  return tensor(tensor(ancilla_state(task.alpha(), task.beta()), task.phi1()), task.phi2());
}

ProtocolOutcome run_ideal(const SuperpositionTask& task, double floor) {
  require_nonzero_overlaps(task);
  const StateVector mu = mu_state(task.phi1(), task.phi2(), task.chi());
  const StateVector swapped = controlled_swap().apply(input_register(task));

  const auto after_chi = project_subsystem(swapped, kSecondInputQubit, task.chi(), floor);
  const auto after_mu = project_subsystem(after_chi.state, kAncillaQubit, mu, floor);
  const double p = after_chi.probability * after_mu.probability;
  if (p < floor) {
    std::ostringstream ss;
    ss << "post-selection failed: joint probability " << p;
    throw PostSelectionError(ss.str(), p);
  }

  // Both projected qubits are now in product form; contracting them leaves
  // the first-input register.
  Vector rest = contract_qubit(after_mu.state.amplitudes(), kSecondInputQubit, 3, task.chi());
  rest = contract_qubit(rest, kAncillaQubit, 2, mu);
  return {StateVector::normalized(std::move(rest)), p};
}

StateVector analytic_superposition(const SuperpositionTask& task) {
  require_nonzero_overlaps(task);
  // <chi|phi> = conj(<phi|chi>)
  const Complex c2 = std::conj(task.overlap2());
  const Complex c1 = std::conj(task.overlap1());
  Vector v = task.alpha() * (c2 / std::abs(c2)) * task.phi1().amplitudes() +
             task.beta() * (c1 / std::abs(c1)) * task.phi2().amplitudes();
  return StateVector::normalized(std::move(v));
}

double theory_overlap(Group group, double theta) {
  const double c = std::cos(theta / 2);
  if (group == Group::kA) return c * c;
  return (1.0 + 2.0 * c + c * c) / (2.0 + 2.0 * c);
}

double theory_success_probability(Group group, double theta) {
  if (group == Group::kA) return 0.25;
  const double c = std::cos(theta / 2);
  return c * c * (1.0 + c) / (1.0 + c * c);
}

}  // namespace superpose::protocol
