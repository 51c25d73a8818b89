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

#ifndef SUPERPOSE_QCORE_H
#define SUPERPOSE_QCORE_H

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

/// Dense complex linear algebra and quantum-state primitives.
///
/// Qubit indices are zero based. Qubit 0 is the leftmost tensor factor, which
/// is the most significant bit of a computational-basis index.
namespace superpose {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Numerical tolerances shared by validation code. Checks on matrices are
/// relative to max(1, ||M||) so that Hamiltonians in rad/s and unit-trace
/// states are judged on the same footing.
struct Tolerances {
  double norm = 1e-12;
  double hermitian = 1e-12;
  double trace = 1e-10;
  double positivity = 1e-10;
  double unitary = 1e-10;
  double post_selection_floor = 1e-12;
};

/// Raised when a projection has probability below the configured floor.
class PostSelectionError : public std::runtime_error {
 public:
  PostSelectionError(const std::string& what, double probability)
      : std::runtime_error(what), probability_(probability) {}
  double probability() const { return probability_; }

 private:
  double probability_;
};

/// Number of qubits of a 2^n dimension; throws for anything else.
int qubits_for_dimension(std::size_t dim);

class StateVector {
 public:
  explicit StateVector(Vector amplitudes, const Tolerances& tol = {});

  /// Rescales to unit norm; throws std::invalid_argument on a zero vector.
  static StateVector normalized(Vector amplitudes);
  static StateVector basis(int num_qubits, std::size_t index);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

  /// <this|other>
  Complex inner(const StateVector& other) const;
  Matrix projector() const;

 private:
  Vector amplitudes_;
  int num_qubits_;
};

enum class DensityKind { kPhysical, kDeviation };

/// Hermitian density matrix. Physical operators have unit trace, deviation
/// operators are traceless. Positivity is not enforced at construction since
/// linear-inversion estimates are legitimately non-positive; use
/// is_positive() where it matters.
class DensityOperator {
 public:
  DensityOperator(Matrix matrix, DensityKind kind, const Tolerances& tol = {});

  static DensityOperator from_state(const StateVector& psi);
  static DensityOperator maximally_mixed(int num_qubits);

  const Matrix& matrix() const { return matrix_; }
  DensityKind kind() const { return kind_; }
  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  double trace() const { return matrix_.trace().real(); }
  double purity() const;
  bool is_positive(double tol = 1e-10) const;

 private:
  Matrix matrix_;
  DensityKind kind_;
  int num_qubits_;
};

class Operator {
 public:
  explicit Operator(Matrix matrix, bool unitary = false, const Tolerances& tol = {});

  static Operator identity(int num_qubits);

  const Matrix& matrix() const { return matrix_; }
  bool is_unitary() const { return unitary_; }
  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  Operator adjoint() const;
  Operator operator*(const Operator& rhs) const;

  StateVector apply(const StateVector& psi) const;
  DensityOperator conjugate(const DensityOperator& rho) const;

 private:
  Matrix matrix_;
  bool unitary_;
  int num_qubits_;
};

namespace pauli {
const Matrix& I();
const Matrix& X();
const Matrix& Y();
const Matrix& Z();
}  // namespace pauli

enum class Axis { kX, kY, kZ };

/// exp(-i angle sigma_axis / 2) on a single qubit.
Matrix rotation_matrix(Axis axis, double angle);

/// Single-qubit unitary mapping |0> to `ket` (and |1> to its orthogonal
/// complement).
Matrix basis_rotation(const StateVector& ket);

/// Lifts a 2x2 operator to act on `qubit` of an n-qubit register.
Matrix embed(const Matrix& single, int qubit, int num_qubits);

/// Applies a 2x2 operator to `qubit` of a state vector in place.
void apply_single_qubit(Vector& psi, const Matrix& single, int qubit, int num_qubits);

StateVector tensor(const StateVector& a, const StateVector& b);
Operator tensor(const Operator& a, const Operator& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// Traces out every qubit not in `keep`. Kept qubits retain their relative
/// order.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep);

template <typename State>
struct Projection {
  State state;
  double probability;
};

/// Applies |onto><onto| to `qubit` and renormalizes. The result stays on the
/// full register.
Projection<StateVector> project_subsystem(const StateVector& psi, int qubit,
                                          const StateVector& onto,
                                          double floor = 1e-12);
Projection<DensityOperator> project_subsystem(const DensityOperator& rho, int qubit,
                                              const StateVector& onto,
                                              double floor = 1e-12);

/// Contracts `qubit` with <bra|, returning the unnormalized amplitudes on the
/// remaining qubits.
Vector contract_qubit(const Vector& psi, int qubit, int num_qubits, const StateVector& bra);

/// tr(a b) / sqrt(tr(a^2) tr(b^2)). Both operands must be of the same kind.
double fidelity(const DensityOperator& a, const DensityOperator& b);

/// exp(-i H t) for Hermitian H given in rad/s.
Operator evolve(const Operator& hamiltonian, double t);
Matrix evolve(const Matrix& hamiltonian, double t);

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
StateVector bloch_ket(double theta, double phi);

/// min over global phase of ||a - e^{i g} b||.
double phase_distance(const StateVector& a, const StateVector& b);

bool is_hermitian(const Matrix& m, double tol);
bool is_unitary(const Matrix& m, double tol);

}  // namespace superpose

#endif  // SUPERPOSE_QCORE_H
