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

// superpose: command line front end.
//
//   superpose run-group       --config cfg.json --out results --mode with_echo
//   superpose uncertainty-map --config cfg.json --out results --trials 200
//   superpose echo-comparison --config cfg.json --out results
//   superpose grape           --target cswap --duration 0.028 --segments 700
//   superpose pps-check       --molecule tce.json

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "superpose/commands.h"

namespace {

using superpose::cli::CommonOptions;

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option_function<std::string>("--config", [&opts](const std::string& v) { opts.config = v; },
                                        "experiment configuration (JSON)");
  cmd->add_option_function<std::string>("--out", [&opts](const std::string& v) { opts.out = v; },
                                        "output directory (default: current directory)");
  cmd->add_option_function<std::uint64_t>("--seed", [&opts](const std::uint64_t& v) { opts.seed = v; },
                                          "master random seed");
  cmd->add_option_function<int>("--trials", [&opts](const int& v) { opts.trials = v; },
                                "Monte-Carlo trials per point");
  cmd->add_option_function<std::string>("--mode", [&opts](const std::string& v) { opts.mode = v; },
                                        "ideal | with_echo | no_echo");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic state-superposition laboratory"};
  app.require_subcommand(1);

  CommonOptions opts;
  superpose::cli::GrapeOptions gopts;
  std::optional<std::filesystem::path> molecule;

  auto* run_group = app.add_subcommand("run-group", "sweep an experiment group and tabulate overlaps and fidelities");
  auto* map = app.add_subcommand("uncertainty-map", "fidelity spread over a grid of input overlaps");
  auto* echo = app.add_subcommand("echo-comparison", "group B with and without the gradient-echo readout");
  auto* grape = app.add_subcommand("grape", "synthesize a shaped pulse for a target unitary");
  auto* pps = app.add_subcommand("pps-check", "run the pseudo-pure preparation and report its fidelity");
  for (auto* cmd : {run_group, map, echo, grape, pps}) add_common(cmd, opts);

  grape->add_option_function<std::string>("--target", [&](const std::string& v) { gopts.target = v; },
                                          "cswap | identity | rot:<qubit>:<axis>:<angle> | file:<matrix.json>");
  grape->add_option_function<double>("--duration", [&](const double& v) { gopts.duration_s = v; }, "pulse length in s");
  grape->add_option_function<int>("--segments", [&](const int& v) { gopts.segments = v; }, "number of segments");
  grape->add_option_function<double>("--goal", [&](const double& v) { gopts.goal = v; }, "fidelity goal");
  grape->add_option_function<int>("--max-iterations", [&](const int& v) { gopts.max_iterations = v; },
                                  "iteration budget");
  pps->add_option_function<std::string>("--molecule", [&](const std::string& v) { molecule = v; },
                                        "molecule JSON (default: configuration or trichloroethylene)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : superpose::cli::kValidationError;
  }

  std::ostream& out = std::cout;
  std::ostream& log = std::cerr;
  return superpose::cli::guarded(
      [&]() -> int {
        if (*run_group) return superpose::cli::run_group(opts, out, log);
        if (*map) return superpose::cli::uncertainty_map(opts, out, log);
        if (*echo) return superpose::cli::echo_comparison(opts, out, log);
        if (*grape) return superpose::cli::grape(opts, gopts, out, log);
        return superpose::cli::pps_check(opts, molecule, out, log);
      },
      log);
}
