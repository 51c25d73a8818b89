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

#include "superpose/molecule.h"

#include <cctype>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace superpose::nmr {

CouplingRegime parse_regime(std::string_view name) {
  if (name == "weak") return CouplingRegime::kWeak;
  if (name == "strong") return CouplingRegime::kStrong;
  throw std::invalid_argument("unknown coupling regime '" + std::string(name) +
                              "' (expected 'weak' or 'strong')");
}

const char* regime_name(CouplingRegime regime) {
  return regime == CouplingRegime::kWeak ? "weak" : "strong";
}

Molecule::Molecule(std::vector<Spin> spins, std::vector<Coupling> couplings)
    : spins_(std::move(spins)), couplings_(std::move(couplings)) {
  if (spins_.empty()) throw std::invalid_argument("molecule has no spins");
  if (spins_.size() > 6) throw std::invalid_argument("molecule has more than 6 spins");
  for (std::size_t k = 0; k < spins_.size(); ++k) {
    const Spin& s = spins_[k];
    if (!(s.t2_s > 0.0) || !(s.t1_s >= s.t2_s)) {
      std::ostringstream ss;
      ss << "spin " << k << " (" << s.name << "): relaxation times must satisfy T1 >= T2 > 0, got T1="
         << s.t1_s << " T2=" << s.t2_s;
      throw std::invalid_argument(ss.str());
    }
    if (!std::isfinite(s.shift_hz)) throw std::invalid_argument("chemical shift must be finite");
  }
  std::set<std::pair<int, int>> seen;
  const int n = num_qubits();
  for (const Coupling& c : couplings_) {
    if (c.i < 0 || c.j < 0 || c.i >= n || c.j >= n || c.i == c.j) {
      std::ostringstream ss;
      ss << "coupling (" << c.i << ", " << c.j << ") references invalid spins";
      throw std::invalid_argument(ss.str());
    }
    auto key = std::minmax(c.i, c.j);
    if (!seen.insert({key.first, key.second}).second) {
      std::ostringstream ss;
      ss << "coupling (" << c.i << ", " << c.j << ") listed twice";
      throw std::invalid_argument(ss.str());
    }
  }
}

Molecule Molecule::tce() {
  // T1/T2 and the H-C couplings are representative values, not measured ones.
  std::vector<Spin> spins = {
      {"H", 0.0, 4.0, 0.8, 4.0},
      {"C2", 625.0, 18.0, 0.5, 1.0},
      {"C1", -625.0, 12.0, 0.4, 1.0},
  };
  std::vector<Coupling> couplings = {
      {0, 1, 9.0, CouplingRegime::kWeak},
      {0, 2, 200.0, CouplingRegime::kWeak},
      {1, 2, 100.0, CouplingRegime::kStrong},
  };
  return Molecule(std::move(spins), std::move(couplings));
}

double Molecule::coupling_hz(int i, int j) const {
  for (const Coupling& c : couplings_) {
    if ((c.i == i && c.j == j) || (c.i == j && c.j == i)) return c.j_hz;
  }
  return 0.0;
}

Molecule Molecule::with_coupling(int i, int j, double j_hz) const {
  std::vector<Coupling> couplings = couplings_;
  for (Coupling& c : couplings) {
    if ((c.i == i && c.j == j) || (c.i == j && c.j == i)) {
      c.j_hz = j_hz;
      return Molecule(spins_, std::move(couplings));
    }
  }
  couplings.push_back({i, j, j_hz, CouplingRegime::kWeak});
  return Molecule(spins_, std::move(couplings));
}

Molecule Molecule::with_shift_offset(double offset_hz) const {
  std::vector<Spin> spins = spins_;
  for (Spin& s : spins) s.shift_hz += offset_hz;
  return Molecule(std::move(spins), couplings_);
}

Molecule Molecule::with_relaxation(const std::vector<std::pair<double, double>>& t1_t2) const {
  if (t1_t2.size() != spins_.size()) {
    throw std::invalid_argument("relaxation override must list every spin");
  }
  std::vector<Spin> spins = spins_;
  for (std::size_t k = 0; k < spins.size(); ++k) {
    spins[k].t1_s = t1_t2[k].first;
    spins[k].t2_s = t1_t2[k].second;
  }
  return Molecule(std::move(spins), couplings_);
}

std::string Molecule::species(int spin) const {
  std::string name = spins_.at(static_cast<std::size_t>(spin)).name;
  while (!name.empty() && std::isdigit(static_cast<unsigned char>(name.back()))) name.pop_back();
  return name.empty() ? "S" : name;
}

Matrix internal_hamiltonian_matrix(const Molecule& mol) {
  using std::numbers::pi;
  const int n = mol.num_qubits();
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Matrix h = Matrix::Zero(dim, dim);
  for (int k = 0; k < n; ++k) {
    h += pi * mol.spins()[static_cast<std::size_t>(k)].shift_hz * embed(pauli::Z(), k, n);
  }
  for (const Coupling& c : mol.couplings()) {
    const double w = pi / 2 * c.j_hz;
    h += w * embed(pauli::Z(), c.i, n) * embed(pauli::Z(), c.j, n);
    if (c.regime == CouplingRegime::kStrong) {
      h += w * embed(pauli::X(), c.i, n) * embed(pauli::X(), c.j, n);
      h += w * embed(pauli::Y(), c.i, n) * embed(pauli::Y(), c.j, n);
    }
  }
  return h;
}

Operator internal_hamiltonian(const Molecule& mol) {
  return Operator(internal_hamiltonian_matrix(mol));
}

DensityOperator thermal_deviation(const Molecule& mol) {
  const int n = mol.num_qubits();
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Matrix d = Matrix::Zero(dim, dim);
  for (int k = 0; k < n; ++k) {
    d += mol.spins()[static_cast<std::size_t>(k)].gyro_rel * embed(pauli::Z(), k, n);
  }
  return DensityOperator(std::move(d), DensityKind::kDeviation);
}

}  // namespace superpose::nmr
