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

// JSON documents: molecule, control pulse, noise model, pulse program and the
// experiment configuration. Loaders report problems as ConfigError carrying
// either "file:line:col" (syntax) or a JSON path such as
// "$.noise.relaxation.t1_t2[2]" (schema).

#ifndef SUPERPOSE_IO_H
#define SUPERPOSE_IO_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "superpose/grape.h"
#include "superpose/molecule.h"
#include "superpose/nmr.h"
#include "superpose/noise.h"
#include "superpose/noise_model.h"
#include "superpose/protocol.h"

namespace superpose::io {

using Json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& doc);

nmr::Molecule molecule_from_json(const Json& j, const std::string& where = "$");
Json molecule_to_json(const nmr::Molecule& mol);
nmr::Molecule load_molecule(const std::filesystem::path& path);

grape::ControlPulse pulse_from_json(const Json& j, const std::string& where = "$");
Json pulse_to_json(const grape::ControlPulse& pulse);
grape::ControlPulse load_pulse(const std::filesystem::path& path);

/// Relative pulse_file paths are resolved against `base_dir`.
noise::NoiseModel noise_from_json(const Json& j, const std::filesystem::path& base_dir,
                                  const std::string& where = "$");
Json noise_to_json(const noise::NoiseModel& model);

nmr::PulseProgram program_from_json(const Json& j, const std::string& where = "$");
Json program_to_json(const nmr::PulseProgram& program);

/// Unitary target for GRAPE: "cswap", "identity", "rot:<qubit>:<x|y|z>:<angle>"
/// (angle in radians, or "pi", "pi/N", "K*pi/N") or "file:<path>" holding a
/// complex matrix as [[[re, im], ...], ...].
Operator parse_target(const std::string& spec, int num_qubits,
                      const std::filesystem::path& base_dir = {});
double parse_angle(const std::string& text);

struct GrapeSettings {
  std::string target = "cswap";
  double duration_s = 28e-3;
  int segments = 700;
  double goal = 0.999;
  int max_iterations = 1000;
  std::uint64_t seed = 7;
  std::vector<grape::EnsembleMember> ensemble = {grape::EnsembleMember{}};
};

struct ExperimentConfig {
  std::filesystem::path base_dir = ".";
  nmr::Molecule molecule = nmr::Molecule::tce();
  /// "A", "B" or "custom"
  std::string group = "B";
  std::optional<protocol::SuperpositionTask> custom_task;
  std::vector<double> theta_grid;
  noise::NoiseModel noise = noise::NoiseModel::defaults();
  int n_trials = 200;
  noise::Mode mode = noise::Mode::kWithEcho;
  noise::Reduction reduction = noise::Reduction::kProjection;
  double post_selection_floor = 1e-12;
  std::vector<double> overlap1_grid;
  std::vector<double> overlap2_grid;
  GrapeSettings grape;
  bool plots = true;

  /// Defaults with the twelve k*pi/12 angles and a 5x5 overlap grid.
  static ExperimentConfig defaults();
};

ExperimentConfig config_from_json(const Json& j, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace superpose::io

#endif  // SUPERPOSE_IO_H
