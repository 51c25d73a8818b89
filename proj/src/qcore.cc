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

#include "superpose/qcore.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace superpose {

namespace {

double scale_of(const Matrix& m) { return std::max(1.0, m.norm()); }

std::size_t bit_of(int qubit, int num_qubits) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

void check_qubit(int qubit, int num_qubits) {
  if (qubit < 0 || qubit >= num_qubits) {
    std::ostringstream ss;
    ss << "qubit index " << qubit << " out of range for " << num_qubits << " qubits";
    throw std::out_of_range(ss.str());
  }
}

void check_single_qubit_ket(const StateVector& ket) {
  if (ket.num_qubits() != 1) {
    throw std::invalid_argument("projection target must be a single-qubit ket");
  }
}

}  // namespace

int qubits_for_dimension(std::size_t dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    std::ostringstream ss;
    ss << "dimension " << dim << " is not a power of two >= 2";
    throw std::invalid_argument(ss.str());
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol * scale_of(m);
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Vector amplitudes, const Tolerances& tol)
    : amplitudes_(std::move(amplitudes)),
      num_qubits_(qubits_for_dimension(static_cast<std::size_t>(amplitudes_.size()))) {
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol.norm) {
    std::ostringstream ss;
    ss << "state vector norm " << norm << " differs from 1";
    throw std::invalid_argument(ss.str());
  }
}

StateVector StateVector::normalized(Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalize a zero vector");
  }
  amplitudes /= norm;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw std::out_of_range("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

Complex StateVector::inner(const StateVector& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("inner product dimension mismatch");
  return amplitudes_.dot(other.amplitudes_);
}

Matrix StateVector::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(Matrix matrix, DensityKind kind, const Tolerances& tol)
    : matrix_(std::move(matrix)), kind_(kind), num_qubits_(0) {
  if (matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("density operator must be square");
  }
  num_qubits_ = qubits_for_dimension(static_cast<std::size_t>(matrix_.rows()));
  if (!is_hermitian(matrix_, tol.hermitian)) {
    throw std::invalid_argument("density operator is not Hermitian");
  }
  const double tr = matrix_.trace().real();
  const double expected = kind_ == DensityKind::kPhysical ? 1.0 : 0.0;
  if (std::abs(tr - expected) > tol.trace * scale_of(matrix_)) {
    std::ostringstream ss;
    ss << (kind_ == DensityKind::kPhysical ? "physical" : "deviation")
       << " density operator has trace " << tr;
    throw std::invalid_argument(ss.str());
  }
  // Remove the anti-Hermitian rounding residue so downstream code can rely on
  // exact symmetry.
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
}

DensityOperator DensityOperator::from_state(const StateVector& psi) {
  return DensityOperator(psi.projector(), DensityKind::kPhysical);
}

DensityOperator DensityOperator::maximally_mixed(int num_qubits) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim),
                         DensityKind::kPhysical);
}

double DensityOperator::purity() const {
  return (matrix_.cwiseProduct(matrix_.transpose())).sum().real();
}

bool DensityOperator::is_positive(double tol) const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(Matrix matrix, bool unitary, const Tolerances& tol)
    : matrix_(std::move(matrix)), unitary_(unitary), num_qubits_(0) {
  if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("operator must be square");
  num_qubits_ = qubits_for_dimension(static_cast<std::size_t>(matrix_.rows()));
  if (unitary_ && !superpose::is_unitary(matrix_, tol.unitary)) {
    throw std::invalid_argument("operator flagged unitary violates U^dag U = I");
  }
}

Operator Operator::identity(int num_qubits) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  return Operator(Matrix::Identity(dim, dim), true);
}

Operator Operator::adjoint() const { return Operator(matrix_.adjoint(), unitary_); }

Operator Operator::operator*(const Operator& rhs) const {
  if (dim() != rhs.dim()) throw std::invalid_argument("operator product dimension mismatch");
  return Operator(matrix_ * rhs.matrix_, unitary_ && rhs.unitary_);
}

StateVector Operator::apply(const StateVector& psi) const {
  if (dim() != psi.dim()) throw std::invalid_argument("operator/state dimension mismatch");
  if (!unitary_) throw std::invalid_argument("only unitary operators map states to states");
  return StateVector::normalized(matrix_ * psi.amplitudes());
}

DensityOperator Operator::conjugate(const DensityOperator& rho) const {
  if (dim() != rho.dim()) throw std::invalid_argument("operator/state dimension mismatch");
  return DensityOperator(matrix_ * rho.matrix() * matrix_.adjoint(), rho.kind());
}

// ---------------------------------------------------------------------------
// Pauli matrices and single-qubit helpers

namespace pauli {
const Matrix& I() {
  static const Matrix m = Matrix::Identity(2, 2);
  return m;
}
const Matrix& X() {
  static const Matrix m = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  return m;
}
const Matrix& Y() {
  static const Matrix m = (Matrix(2, 2) << 0, -kI, kI, 0).finished();
  return m;
}
const Matrix& Z() {
  static const Matrix m = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  return m;
}
}  // namespace pauli

Matrix rotation_matrix(Axis axis, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  Matrix r(2, 2);
  switch (axis) {
    case Axis::kX:
      r << c, -kI * s, -kI * s, c;
      break;
    case Axis::kY:
      r << c, -s, s, c;
      break;
    case Axis::kZ:
      r << std::exp(-kI * (angle / 2)), 0, 0, std::exp(kI * (angle / 2));
      break;
  }
  return r;
}

Matrix basis_rotation(const StateVector& ket) {
  check_single_qubit_ket(ket);
  const Complex a = ket[0];
  const Complex b = ket[1];
  Matrix r(2, 2);
  r << a, -std::conj(b), b, std::conj(a);
  return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix embed(const Matrix& single, int qubit, int num_qubits) {
  check_qubit(qubit, num_qubits);
  if (single.rows() != 2 || single.cols() != 2) {
    throw std::invalid_argument("embed expects a 2x2 operator");
  }
  const auto left = static_cast<Eigen::Index>(std::size_t{1} << qubit);
  const auto right = static_cast<Eigen::Index>(std::size_t{1} << (num_qubits - qubit - 1));
  return kron(kron(Matrix::Identity(left, left), single), Matrix::Identity(right, right));
}

void apply_single_qubit(Vector& psi, const Matrix& single, int qubit, int num_qubits) {
  check_qubit(qubit, num_qubits);
  const std::size_t bit = bit_of(qubit, num_qubits);
  const std::size_t dim = static_cast<std::size_t>(psi.size());
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const auto i0 = static_cast<Eigen::Index>(i);
    const auto i1 = static_cast<Eigen::Index>(i | bit);
    const Complex a = psi(i0);
    const Complex b = psi(i1);
    psi(i0) = single(0, 0) * a + single(0, 1) * b;
    psi(i1) = single(1, 0) * a + single(1, 1) * b;
  }
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Vector out(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    out.segment(i * b.amplitudes().size(), b.amplitudes().size()) =
        a.amplitudes()(i) * b.amplitudes();
  }
  return StateVector::normalized(std::move(out));
}

Operator tensor(const Operator& a, const Operator& b) {
  return Operator(kron(a.matrix(), b.matrix()), a.is_unitary() && b.is_unitary());
}

// ---------------------------------------------------------------------------
// Reductions and measurements

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep) {
  const int n = rho.num_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::invalid_argument("partial_trace: duplicate qubit index");
  }
  for (int q : kept) check_qubit(q, n);

  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }

  auto scatter = [n](std::size_t compact, const std::vector<int>& qubits) {
    std::size_t full = 0;
    const int m = static_cast<int>(qubits.size());
    for (int k = 0; k < m; ++k) {
      if (compact & (std::size_t{1} << (m - 1 - k))) full |= bit_of(qubits[k], n);
    }
    return full;
  };

  const std::size_t kdim = std::size_t{1} << kept.size();
  const std::size_t tdim = std::size_t{1} << traced.size();
  std::vector<std::size_t> kfull(kdim), tfull(tdim);
  for (std::size_t i = 0; i < kdim; ++i) kfull[i] = scatter(i, kept);
  for (std::size_t i = 0; i < tdim; ++i) tfull[i] = scatter(i, traced);

  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(kdim), static_cast<Eigen::Index>(kdim));
  for (std::size_t r = 0; r < kdim; ++r) {
    for (std::size_t c = 0; c < kdim; ++c) {
      Complex acc = 0;
      for (std::size_t t = 0; t < tdim; ++t) {
        acc += m(static_cast<Eigen::Index>(kfull[r] | tfull[t]),
                 static_cast<Eigen::Index>(kfull[c] | tfull[t]));
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  }
  return DensityOperator(std::move(out), rho.kind());
}

Vector contract_qubit(const Vector& psi, int qubit, int num_qubits, const StateVector& bra) {
  check_qubit(qubit, num_qubits);
  check_single_qubit_ket(bra);
  if (num_qubits < 2) throw std::invalid_argument("cannot contract the only qubit");
  const std::size_t bit = bit_of(qubit, num_qubits);
  const std::size_t low_mask = bit - 1;
  const std::size_t out_dim = std::size_t{1} << (num_qubits - 1);
  const Complex b0 = std::conj(bra[0]);
  const Complex b1 = std::conj(bra[1]);
  Vector out(static_cast<Eigen::Index>(out_dim));
  for (std::size_t r = 0; r < out_dim; ++r) {
    const std::size_t full0 = ((r & ~low_mask) << 1) | (r & low_mask);
    out(static_cast<Eigen::Index>(r)) = b0 * psi(static_cast<Eigen::Index>(full0)) +
                                        b1 * psi(static_cast<Eigen::Index>(full0 | bit));
  }
  return out;
}

Projection<StateVector> project_subsystem(const StateVector& psi, int qubit,
                                          const StateVector& onto, double floor) {
  check_single_qubit_ket(onto);
  check_qubit(qubit, psi.num_qubits());
  Vector projected = psi.amplitudes();
  apply_single_qubit(projected, onto.projector(), qubit, psi.num_qubits());
  const double p = projected.squaredNorm();
  if (p < floor) {
    std::ostringstream ss;
    ss << "post-selection failed: probability " << p << " below floor " << floor;
    throw PostSelectionError(ss.str(), p);
  }
  projected /= std::sqrt(p);
  return {StateVector(std::move(projected)), p};
}

Projection<DensityOperator> project_subsystem(const DensityOperator& rho, int qubit,
                                              const StateVector& onto, double floor) {
  check_single_qubit_ket(onto);
  check_qubit(qubit, rho.num_qubits());
  if (rho.kind() != DensityKind::kPhysical) {
    throw std::invalid_argument("projection requires a physical density operator");
  }
  const Matrix p_full = embed(onto.projector(), qubit, rho.num_qubits());
  const Matrix projected = p_full * rho.matrix() * p_full;
  const double p = projected.trace().real();
  if (!(p >= floor)) {
    std::ostringstream ss;
    ss << "post-selection failed: probability " << p << " below floor " << floor;
    throw PostSelectionError(ss.str(), p);
  }
  return {DensityOperator(projected / p, DensityKind::kPhysical), p};
}

double fidelity(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  if (a.kind() != b.kind()) throw std::invalid_argument("fidelity: mixed density kinds");
  const double pa = a.purity();
  const double pb = b.purity();
  if (!(pa > 0.0) || !(pb > 0.0)) throw std::invalid_argument("fidelity: zero purity");
  const double overlap = a.matrix().cwiseProduct(b.matrix().transpose()).sum().real();
  return overlap / std::sqrt(pa * pb);
}

Matrix evolve(const Matrix& hamiltonian, double t) {
  Tolerances tol;
  if (!is_hermitian(hamiltonian, tol.hermitian)) {
    throw std::invalid_argument("evolve: Hamiltonian is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian);
  const Eigen::VectorXd& w = es.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::exp(-kI * (w(i) * t));
  const Matrix& v = es.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

Operator evolve(const Operator& hamiltonian, double t) {
  return Operator(evolve(hamiltonian.matrix(), t), true);
}

StateVector bloch_ket(double theta, double phi) {
  Vector v(2);
  v << std::cos(theta / 2), std::exp(kI * phi) * std::sin(theta / 2);
  return StateVector::normalized(std::move(v));
}

double phase_distance(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("phase_distance: dimension mismatch");
  const Complex ip = b.inner(a);
  const Complex phase = std::abs(ip) > 0 ? ip / std::abs(ip) : Complex{1.0, 0.0};
  return (a.amplitudes() - phase * b.amplitudes()).norm();
}

}  // namespace superpose
