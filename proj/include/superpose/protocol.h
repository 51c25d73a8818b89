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

#ifndef SUPERPOSE_PROTOCOL_H
#define SUPERPOSE_PROTOCOL_H

#include <string_view>

#include "superpose/qcore.h"

/// Gate-level probabilistic superposition of two pure single-qubit states.
///
/// Register layout: qubit 0 is the ancilla, qubit 1 carries phi1 (and the
/// output), qubit 2 carries phi2 and is post-selected onto the referential
/// state chi.
namespace superpose::protocol {

inline constexpr int kAncillaQubit = 0;
inline constexpr int kFirstInputQubit = 1;
inline constexpr int kSecondInputQubit = 2;

enum class Group { kA, kB };

Group parse_group(std::string_view name);
const char* group_name(Group g);

class SuperpositionTask {
 public:
  SuperpositionTask(StateVector phi1, StateVector phi2, StateVector chi, Complex alpha,
                    Complex beta);

  /// Fixed inputs |+>, |->; ancilla cos(theta/2)|0> + sin(theta/2)|1>.
  static SuperpositionTask group_a(double theta1);
  /// Ancilla |+>, phi1 = |0>, phi2 = cos(theta/2)|0> + i sin(theta/2)|1>.
  static SuperpositionTask group_b(double theta2);
  static SuperpositionTask for_group(Group g, double theta);

  const StateVector& phi1() const { return phi1_; }
  const StateVector& phi2() const { return phi2_; }
  const StateVector& chi() const { return chi_; }
  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }

  /// <phi1|chi> and <phi2|chi>, fixed at construction.
  Complex overlap1() const { return overlap1_; }
  Complex overlap2() const { return overlap2_; }

 private:
  StateVector phi1_;
  StateVector phi2_;
  StateVector chi_;
  Complex alpha_;
  Complex beta_;
  Complex overlap1_;
  Complex overlap2_;
};

struct ProtocolOutcome {
  StateVector output;
  double success_probability;
};

StateVector ancilla_state(Complex alpha, Complex beta);

/// Normalized |<phi1|chi>| |0> + |<phi2|chi>| |1>.
StateVector mu_state(const StateVector& phi1, const StateVector& phi2, const StateVector& chi);

/// Fredkin gate on three qubits: qubit 0 controls, qubits 1 and 2 swap when
/// the control is |1>.
Operator controlled_swap();

/// Product state |nu> (x) |phi1> (x) |phi2> that enters the controlled-SWAP.
StateVector input_register(const SuperpositionTask& task);

/// Runs the circuit with exact projections. Throws PostSelectionError if the
/// joint success probability is below `floor`.
ProtocolOutcome run_ideal(const SuperpositionTask& task, double floor = 1e-12);

/// Closed-form output, with the relative phases fixed by the overlaps.
StateVector analytic_superposition(const SuperpositionTask& task);

/// |<phi_sup|phi1>|^2 for the two experiment families.
double theory_overlap(Group group, double theta);

/// Closed-form success probabilities of the two families.
double theory_success_probability(Group group, double theta);

}  // namespace superpose::protocol

#endif  // SUPERPOSE_PROTOCOL_H
