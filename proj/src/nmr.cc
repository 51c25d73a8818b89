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

#include "superpose/nmr.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "superpose/relaxation.h"

namespace superpose::nmr {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_qubit(int q, int n, const char* what) {
  if (q < 0 || q >= n) {
    std::ostringstream ss;
    ss << what << " references qubit " << q << " of a " << n << "-qubit register";
    throw std::invalid_argument(ss.str());
  }
}

void check_duration(double d, const char* what) {
  if (!(d >= 0.0) || !std::isfinite(d)) {
    throw std::invalid_argument(std::string(what) + " duration must be finite and >= 0");
  }
}

Matrix pi_x_on(std::span<const int> qubits, int n) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Matrix u = Matrix::Identity(dim, dim);
  const Matrix pix = rotation_matrix(Axis::kX, std::numbers::pi);
  for (int q : qubits) u = (embed(pix, q, n) * u).eval();
  return u;
}

// Applies the coherent step u and then relaxation for dt, m times.
void conjugate_steps(Matrix& rho, const Matrix& u, int m, double dt, const Molecule* relax) {
  for (int s = 0; s < m; ++s) {
    rho = (u * rho * u.adjoint()).eval();
    if (relax) noise::apply_relaxation(rho, *relax, dt);
  }
}

int step_count(double duration, double max_step) {
  if (duration <= 0.0 || max_step <= 0.0) return 1;
  return std::max(1, static_cast<int>(std::ceil(duration / max_step - 1e-9)));
}

}  // namespace

double PulseProgram::duration() const {
  double total = 0.0;
  for (const Event& e : events_) {
    std::visit(Overloaded{
                   [&](const ShapedPulse& p) { total += p.pulse.duration(); },
                   [&](const FreeEvolution& f) { total += f.duration_s; },
                   [&](const Gate& g) { total += g.duration_s; },
                   [&](const Delay& d) { total += d.duration_s; },
                   [](const auto&) {},
               },
               e);
  }
  return total;
}

int PulseProgram::crusher_count() const {
  int count = 0;
  for (const Event& e : events_) count += std::holds_alternative<Crusher>(e) ? 1 : 0;
  return count;
}

PulseProgram PulseProgram::then(const PulseProgram& next) const {
  std::vector<Event> all = events_;
  all.insert(all.end(), next.events_.begin(), next.events_.end());
  return PulseProgram(std::move(all));
}

void PulseProgram::validate(int n) const {
  for (const Event& e : events_) {
    std::visit(Overloaded{
                   [&](const IdealRotation& r) {
                     check_qubit(r.qubit, n, "rotation");
                     if (!std::isfinite(r.angle)) throw std::invalid_argument("rotation angle is not finite");
                   },
                   [&](const ShapedPulse& p) { p.pulse.validate(); },
                   [&](const FreeEvolution& f) { check_duration(f.duration_s, "free evolution"); },
                   [&](const Crusher& c) {
                     for (int q : c.qubits) check_qubit(q, n, "crusher");
                   },
                   [&](const PiRefocus& p) {
                     for (int q : p.qubits) check_qubit(q, n, "refocusing pulse");
                   },
                   [&](const Gate& g) {
                     if (g.unitary.num_qubits() != n || !g.unitary.is_unitary()) {
                       throw std::invalid_argument("gate '" + g.label + "' is not a unitary on the register");
                     }
                     check_duration(g.duration_s, "gate");
                   },
                   [&](const Delay& d) { check_duration(d.duration_s, "delay"); },
               },
               e);
  }
}

DensityOperator crusher(const DensityOperator& rho, std::span<const int> qubits) {
  const int n = rho.num_qubits();
  std::vector<int> all;
  if (qubits.empty()) {
    for (int q = 0; q < n; ++q) all.push_back(q);
    qubits = all;
  }
  for (int q : qubits) check_qubit(q, n, "crusher");
  Matrix m = rho.matrix();
  const Eigen::Index dim = m.rows();
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      int order = 0;
      for (int q : qubits) {
        const Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
        order += ((c & bit) ? 1 : 0) - ((r & bit) ? 1 : 0);
      }
      if (order != 0) m(r, c) = 0.0;
    }
  }
  return DensityOperator(std::move(m), rho.kind());
}

DensityOperator pps_target(int num_qubits) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  Matrix d = Matrix::Identity(dim, dim) * (-1.0 / static_cast<double>(dim));
  d(0, 0) += 1.0;
  return DensityOperator(std::move(d), DensityKind::kDeviation);
}

double pps_fidelity(const DensityOperator& deviation) {
  return fidelity(deviation, pps_target(deviation.num_qubits()));
}

DensityOperator pps_effective_state(const DensityOperator& deviation) {
  if (deviation.kind() != DensityKind::kDeviation) {
    throw std::invalid_argument("pseudo-pure conversion expects a deviation operator");
  }
  const Matrix d = pps_target(deviation.num_qubits()).matrix();
  const double k = (deviation.matrix() * d).trace().real() / (d * d).trace().real();
  if (!(k > 0.0)) throw std::invalid_argument("deviation has no pseudo-pure component");
  const auto dim = static_cast<Eigen::Index>(deviation.dim());
  Matrix rho = Matrix::Identity(dim, dim) / static_cast<double>(dim) + deviation.matrix() / k;
  return DensityOperator(std::move(rho), DensityKind::kPhysical);
}

PpsResult pps_prepare(const Molecule& mol, const PulseProgram& program, double fidelity_floor) {
  const DensityOperator thermal = thermal_deviation(mol);
  if (program.empty()) return {thermal, pps_fidelity(thermal), 0.0};
  if (program.crusher_count() != 3) {
    std::ostringstream ss;
    ss << "pseudo-pure program needs exactly 3 crusher events, got " << program.crusher_count();
    throw std::invalid_argument(ss.str());
  }
  DensityOperator dev = evolve_program(thermal, program, mol);
  const double f = pps_fidelity(dev);
  if (f < fidelity_floor) {
    std::ostringstream ss;
    ss << "pseudo-pure preparation reached fidelity " << f << ", below the floor " << fidelity_floor;
    throw PpsFidelityError(ss.str(), f);
  }
  return {std::move(dev), f, program.duration()};
}

PulseProgram gradient_echo_program(int num_qubits, int qubit, const StateVector& basis_ket,
                                   double duration_s) {
  check_qubit(qubit, num_qubits, "gradient echo");
  check_duration(duration_s, "gradient echo");
  if (basis_ket.num_qubits() != 1) throw std::invalid_argument("echo basis must be a single-qubit ket");
  const Matrix r = embed(basis_rotation(basis_ket), qubit, num_qubits);
  std::vector<int> others;
  for (int q = 0; q < num_qubits; ++q) {
    if (q != qubit) others.push_back(q);
  }
  // The pi pulses on the other spins cancel what the gradients do to them;
  // the net effect is a crusher restricted to the measured spin.
  std::vector<Event> events;
  events.emplace_back(Gate{Operator(r.adjoint(), true), 0.0, "basis-out"});
  events.emplace_back(Delay{duration_s / 2});
  events.emplace_back(PiRefocus{others});
  events.emplace_back(Delay{duration_s / 2});
  events.emplace_back(Crusher{{qubit}});
  events.emplace_back(PiRefocus{others});
  events.emplace_back(Gate{Operator(r, true), 0.0, "basis-in"});
  return PulseProgram(std::move(events));
}

DensityOperator gradient_echo_measurement(const DensityOperator& rho, int qubit,
                                          const StateVector& basis_ket) {
  const int n = rho.num_qubits();
  check_qubit(qubit, n, "measurement");
  const Matrix p = embed(basis_ket.projector(), qubit, n);
  const auto dim = static_cast<Eigen::Index>(rho.dim());
  const Matrix q = Matrix::Identity(dim, dim) - p;
  return DensityOperator(p * rho.matrix() * p + q * rho.matrix() * q, rho.kind());
}

Matrix unitary_root(const Matrix& u, int m) {
  if (m < 1) throw std::invalid_argument("root order must be >= 1");
  if (m == 1) return u;
  // A unitary is normal, so its Schur form is diagonal.
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& t = schur.matrixT();
  const Matrix& qm = schur.matrixU();
  Vector d(t.rows());
  for (Eigen::Index k = 0; k < t.rows(); ++k) d(k) = std::exp(kI * (std::arg(t(k, k)) / m));
  return qm * d.asDiagonal() * qm.adjoint();
}

DensityOperator evolve_program(const DensityOperator& rho, const PulseProgram& program,
                               const Molecule& mol, const noise::NoiseModel* noise) {
  const int n = mol.num_qubits();
  if (rho.num_qubits() != n) throw std::invalid_argument("state and molecule have different qubit counts");
  program.validate(n);
  const bool relaxing = noise != nullptr && noise->relaxation.enabled;
  if (relaxing && rho.kind() != DensityKind::kPhysical) {
    throw std::invalid_argument("relaxation acts on physical states, not deviation operators");
  }
  const double max_step = relaxing ? noise->relaxation.max_step_s : 0.0;
  std::optional<Molecule> relax_mol;
  if (relaxing) relax_mol = noise->relaxation_molecule(mol);
  const Molecule* relax = relax_mol ? &*relax_mol : nullptr;

  Matrix m = rho.matrix();
  Matrix drift;  // built on first use
  auto get_drift = [&]() -> const Matrix& {
    if (drift.size() == 0) drift = internal_hamiltonian_matrix(mol);
    return drift;
  };

  for (const Event& e : program.events()) {
    std::visit(Overloaded{
                   [&](const IdealRotation& r) {
                     const Matrix u = embed(rotation_matrix(r.axis, r.angle), r.qubit, n);
                     m = (u * m * u.adjoint()).eval();
                   },
                   [&](const ShapedPulse& p) {
                     const grape::ControlSet controls = grape::control_hamiltonians(mol);
                     grape::check_channels(p.pulse, controls);
                     const int sub = relaxing ? step_count(p.pulse.dt_s, max_step) : 1;
                     const double dt = p.pulse.dt_s / sub;
                     for (int k = 0; k < p.pulse.segment_count(); ++k) {
                       const Matrix u =
                           evolve(grape::segment_hamiltonian(get_drift(), controls, p.pulse, k), dt);
                       conjugate_steps(m, u, sub, dt, relax);
                     }
                   },
                   [&](const FreeEvolution& f) {
                     const int sub = relaxing ? step_count(f.duration_s, max_step) : 1;
                     const double dt = f.duration_s / sub;
                     conjugate_steps(m, evolve(get_drift(), dt), sub, dt, relax);
                   },
                   [&](const Crusher& c) {
                     m = crusher(DensityOperator(m, rho.kind()), c.qubits).matrix();
                   },
                   [&](const PiRefocus& p) {
                     const Matrix u = pi_x_on(p.qubits, n);
                     m = (u * m * u.adjoint()).eval();
                   },
                   [&](const Gate& g) {
                     if (!relaxing || g.duration_s == 0.0) {
                       const Matrix& u = g.unitary.matrix();
                       m = (u * m * u.adjoint()).eval();
                       return;
                     }
                     const int sub = step_count(g.duration_s, max_step);
                     conjugate_steps(m, unitary_root(g.unitary.matrix(), sub), sub, g.duration_s / sub,
                                     relax);
                   },
                   [&](const Delay& d) {
                     if (relax) noise::apply_relaxation(m, *relax, d.duration_s);
                   },
               },
               e);
  }
  return DensityOperator(std::move(m), rho.kind(), Tolerances{.hermitian = 1e-9, .trace = 1e-8});
}

Operator program_unitary(const PulseProgram& program, const Molecule& mol) {
  const int n = mol.num_qubits();
  program.validate(n);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Matrix u = Matrix::Identity(dim, dim);
  for (const Event& e : program.events()) {
    std::visit(Overloaded{
                   [&](const IdealRotation& r) { u = (embed(rotation_matrix(r.axis, r.angle), r.qubit, n) * u).eval(); },
                   [&](const ShapedPulse& p) { u = (grape::propagate(p.pulse, mol).matrix() * u).eval(); },
                   [&](const FreeEvolution& f) { u = (evolve(internal_hamiltonian_matrix(mol), f.duration_s) * u).eval(); },
                   [&](const Crusher&) {
                     throw std::invalid_argument("a program with crushers has no unitary propagator");
                   },
                   [&](const PiRefocus& p) { u = (pi_x_on(p.qubits, n) * u).eval(); },
                   [&](const Gate& g) { u = (g.unitary.matrix() * u).eval(); },
                   [](const Delay&) {},
               },
               e);
  }
  return Operator(std::move(u), true);
}

}  // namespace superpose::nmr
