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

#include "superpose/pulse.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace superpose::grape {

ControlPulse ControlPulse::zeros(std::vector<std::string> channels, int segments, double dt_s) {
  ControlPulse p;
  p.dt_s = dt_s;
  p.amplitudes.assign(channels.size(), std::vector<double>(static_cast<std::size_t>(segments), 0.0));
  p.channels = std::move(channels);
  return p;
}

double ControlPulse::max_abs_amplitude() const {
  double m = 0.0;
  for (const auto& ch : amplitudes) {
    for (double a : ch) m = std::max(m, std::abs(a));
  }
  return m;
}

void ControlPulse::validate(double max_amplitude) const {
  if (!(dt_s >= 0.0) || !std::isfinite(dt_s)) {
    throw std::invalid_argument("pulse segment duration must be finite and >= 0");
  }
  if (channels.size() != amplitudes.size()) {
    throw std::invalid_argument("pulse channel names do not match amplitude rows");
  }
  if (amplitudes.empty() || amplitudes.front().empty()) {
    throw std::invalid_argument("pulse has no segments");
  }
  for (const auto& ch : amplitudes) {
    if (ch.size() != amplitudes.front().size()) {
      throw std::invalid_argument("pulse amplitude rows have different lengths");
    }
    for (double a : ch) {
      if (!std::isfinite(a)) throw std::invalid_argument("pulse amplitude is not finite");
    }
  }
  if (max_abs_amplitude() > max_amplitude * (1 + 1e-12)) {
    std::ostringstream ss;
    ss << "pulse amplitude " << max_abs_amplitude() << " rad/s exceeds bound " << max_amplitude;
    throw std::invalid_argument(ss.str());
  }
}

ControlPulse ControlPulse::refined(int factor) const {
  if (factor < 1) throw std::invalid_argument("refinement factor must be >= 1");
  ControlPulse out;
  out.dt_s = dt_s / factor;
  out.channels = channels;
  out.amplitudes.resize(amplitudes.size());
  for (std::size_t c = 0; c < amplitudes.size(); ++c) {
    for (double a : amplitudes[c]) {
      for (int r = 0; r < factor; ++r) out.amplitudes[c].push_back(a);
    }
  }
  return out;
}

ControlPulse ControlPulse::scaled(double factor) const {
  ControlPulse out = *this;
  for (auto& ch : out.amplitudes) {
    for (double& a : ch) a *= factor;
  }
  return out;
}

ControlSet control_hamiltonians(const Molecule& mol) {
  const int n = mol.num_qubits();
  std::vector<std::string> species;
  for (int k = 0; k < n; ++k) {
    const std::string s = mol.species(k);
    if (std::find(species.begin(), species.end(), s) == species.end()) species.push_back(s);
  }
  ControlSet set;
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  for (const std::string& s : species) {
    Matrix hx = Matrix::Zero(dim, dim);
    Matrix hy = Matrix::Zero(dim, dim);
    for (int k = 0; k < n; ++k) {
      if (mol.species(k) != s) continue;
      hx += 0.5 * embed(pauli::X(), k, n);
      hy += 0.5 * embed(pauli::Y(), k, n);
    }
    set.names.push_back(s + "_x");
    set.hamiltonians.push_back(std::move(hx));
    set.names.push_back(s + "_y");
    set.hamiltonians.push_back(std::move(hy));
  }
  return set;
}

void check_channels(const ControlPulse& pulse, const ControlSet& controls) {
  if (pulse.channels != controls.names) {
    std::ostringstream ss;
    ss << "pulse channels [";
    for (const auto& c : pulse.channels) ss << c << ' ';
    ss << "] do not match molecule controls [";
    for (const auto& c : controls.names) ss << c << ' ';
    ss << "]";
    throw std::invalid_argument(ss.str());
  }
}

Matrix segment_hamiltonian(const Matrix& drift, const ControlSet& controls,
                           const ControlPulse& pulse, int segment, double rf_scale) {
  Matrix h = drift;
  const auto k = static_cast<std::size_t>(segment);
  for (std::size_t c = 0; c < controls.hamiltonians.size(); ++c) {
    const double u = pulse.amplitudes[c][k];
    if (u != 0.0) h += (rf_scale * u) * controls.hamiltonians[c];
  }
  return h;
}

std::vector<Matrix> segment_propagators(const ControlPulse& pulse, const Molecule& mol,
                                        double rf_scale) {
  const ControlSet controls = control_hamiltonians(mol);
  check_channels(pulse, controls);
  const Matrix drift = internal_hamiltonian_matrix(mol);
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(pulse.segment_count()));
  for (int k = 0; k < pulse.segment_count(); ++k) {
    out.push_back(evolve(segment_hamiltonian(drift, controls, pulse, k, rf_scale), pulse.dt_s));
  }
  return out;
}

Operator propagate(const ControlPulse& pulse, const Molecule& mol, double rf_scale) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << mol.num_qubits());
  Matrix u = Matrix::Identity(dim, dim);
  for (const Matrix& step : segment_propagators(pulse, mol, rf_scale)) u = (step * u).eval();
  return Operator(std::move(u), true);
}

}  // namespace superpose::grape
