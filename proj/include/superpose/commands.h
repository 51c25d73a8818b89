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

#ifndef SUPERPOSE_COMMANDS_H
#define SUPERPOSE_COMMANDS_H

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "superpose/grape.h"
#include "superpose/io.h"

namespace superpose::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 1,
  kGoalNotMet = 2,
  kInternalError = 3,
};

struct CommonOptions {
  std::optional<std::filesystem::path> config;
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::string> mode;
};

struct GrapeOptions {
  std::optional<std::string> target;
  std::optional<double> duration_s;
  std::optional<int> segments;
  std::optional<double> goal;
  std::optional<int> max_iterations;
};

/// Config file (or defaults) with the command-line overrides applied.
io::ExperimentConfig resolve_config(const CommonOptions& opts);

/// The controlled-SWAP pulse used as the coherent error: the configured
/// pulse_file, else `<out>/cswap_pulse.json` when its settings match, else a
/// fresh synthesis that is then cached there.
grape::ControlPulse ensure_swap_pulse(const io::ExperimentConfig& config,
                                      const std::filesystem::path& out_dir, std::ostream& log);

int run_group(const CommonOptions& opts, std::ostream& out, std::ostream& log);
int uncertainty_map(const CommonOptions& opts, std::ostream& out, std::ostream& log);
int echo_comparison(const CommonOptions& opts, std::ostream& out, std::ostream& log);
int grape(const CommonOptions& opts, const GrapeOptions& gopts, std::ostream& out, std::ostream& log);
int pps_check(const CommonOptions& opts, const std::optional<std::filesystem::path>& molecule,
              std::ostream& out, std::ostream& log);

/// Runs `body`, mapping exceptions to exit codes and printing them to `log`.
int guarded(const std::function<int()>& body, std::ostream& log);

}  // namespace superpose::cli

#endif  // SUPERPOSE_COMMANDS_H
