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

#include "superpose/commands.h"

#include <cmath>
#include <numbers>

#include "superpose/csv.h"
#include "superpose/nmr.h"
#include "superpose/noise.h"
#include "superpose/protocol.h"
#include "superpose/svg.h"

namespace superpose::cli {
namespace {

namespace fs = std::filesystem;
using io::CsvTable;
using io::format_number;
using io::Json;

constexpr double kPpsThreshold = 0.99;

void prepare_out_dir(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (!fs::is_directory(out)) throw std::invalid_argument("cannot create output directory " + out.string());
}

Json grape_meta(const io::GrapeSettings& g, const std::string& target) {
  return {{"target", target},          {"duration_s", g.duration_s}, {"segments", g.segments},
          {"goal", g.goal},            {"max_iterations", g.max_iterations},
          {"seed", g.seed}};
}

grape::OptimizerConfig optimizer_config(const io::GrapeSettings& g, Operator target) {
  grape::OptimizerConfig oc;
  oc.target = std::move(target);
  oc.duration_s = g.duration_s;
  oc.segments = g.segments;
  oc.fidelity_goal = g.goal;
  oc.max_iterations = g.max_iterations;
  oc.seed = g.seed;
  oc.ensemble = g.ensemble;
  return oc;
}

grape::IterationCallback progress(std::ostream& log) {
  return [&log](const grape::IterationRecord& r) {
    if (r.iteration % 50 == 0) log << "  iteration " << r.iteration << "  fidelity " << format_number(r.fidelity) << '\n';
  };
}

noise::NoisyPipeline make_pipeline(io::ExperimentConfig config, const fs::path& out, std::ostream& log) {
  if (config.noise.coherent.kind == noise::CoherentErrorKind::kGrapePulse && !config.noise.coherent.pulse) {
    config.noise.coherent.pulse = ensure_swap_pulse(config, out, log);
  }
  return noise::NoisyPipeline(config.molecule, config.noise, config.reduction, config.post_selection_floor);
}

std::string theta_label(double theta) { return format_number(theta); }

}  // namespace

io::ExperimentConfig resolve_config(const CommonOptions& opts) {
  io::ExperimentConfig c = opts.config ? io::load_config(*opts.config) : io::ExperimentConfig::defaults();
  if (opts.seed) c.noise.seed = *opts.seed;
  if (opts.trials) {
    if (*opts.trials < 1) throw std::invalid_argument("--trials must be >= 1");
    c.n_trials = *opts.trials;
  }
  if (opts.mode) c.mode = noise::parse_mode(*opts.mode);
  return c;
}

grape::ControlPulse ensure_swap_pulse(const io::ExperimentConfig& config, const fs::path& out_dir,
                                      std::ostream& log) {
  if (config.noise.coherent.pulse) return *config.noise.coherent.pulse;
  const Json meta = grape_meta(config.grape, "cswap");
  const fs::path cache = out_dir / "cswap_pulse.json";
  if (fs::exists(cache)) {
    const Json doc = io::read_json_file(cache);
    if (doc.contains("meta") && doc["meta"].contains("settings") && doc["meta"]["settings"] == meta) {
      return io::pulse_from_json(doc, cache.string());
    }
  }
  log << "synthesizing the controlled-SWAP pulse (" << config.grape.segments << " segments, "
      << format_number(config.grape.duration_s * 1e3) << " ms)\n";
  const grape::OptimizeResult r = grape::optimize(
      optimizer_config(config.grape, protocol::controlled_swap()), config.molecule, std::nullopt, progress(log));
  log << "controlled-SWAP pulse fidelity " << format_number(r.fidelity) << (r.goal_met ? "" : " (goal not met)") << '\n';
  prepare_out_dir(out_dir);
  Json doc = io::pulse_to_json(r.pulse);
  doc["meta"] = {{"settings", meta}, {"fidelity", r.fidelity}, {"goal_met", r.goal_met}};
  io::write_json_file(cache, doc);
  return r.pulse;
}

int run_group(const CommonOptions& opts, std::ostream& out, std::ostream& log) {
  const io::ExperimentConfig config = resolve_config(opts);
  prepare_out_dir(opts.out);
  std::optional<noise::NoisyPipeline> pipeline;
  if (config.mode != noise::Mode::kIdeal) pipeline.emplace(make_pipeline(config, opts.out, log));

  std::vector<std::pair<double, protocol::SuperpositionTask>> tasks;
  if (config.group == "custom") {
    tasks.emplace_back(0.0, *config.custom_task);
  } else {
    const protocol::Group g = protocol::parse_group(config.group);
    for (double theta : config.theta_grid) tasks.emplace_back(theta, protocol::SuperpositionTask::for_group(g, theta));
  }

  CsvTable table({"theta_rad", "overlap_theory", "overlap_sim_mean", "overlap_sim_std", "fidelity_mean",
                  "fidelity_std", "success_prob_mean", "failed_trials"});
  io::PlotSeries theory{"theory", {}, {}, {}, false, "#d62728"};
  io::PlotSeries sim{"simulated", {}, {}, {}, true, "#1f77b4"};
  for (const auto& [theta, task] : tasks) {
    const StateVector target = protocol::analytic_superposition(task);
    const double overlap_theory = std::norm(task.phi1().inner(target));
    noise::TrialStatistics s;
    if (config.mode == noise::Mode::kIdeal) {
      const protocol::ProtocolOutcome o = protocol::run_ideal(task, config.post_selection_floor);
      s.n_trials = 1;
      s.mean_fidelity = std::norm(target.inner(o.output));
      s.mean_overlap = std::norm(task.phi1().inner(o.output));
      s.mean_success_probability = o.success_probability;
    } else {
      try {
        s = pipeline->monte_carlo(task, config.mode, config.n_trials);
      } catch (const noise::AllTrialsFailedError&) {
        s.n_trials = config.n_trials;
        s.failed_trials = config.n_trials;
        s.mean_fidelity = s.std_fidelity = s.mean_overlap = s.std_overlap = s.mean_success_probability =
            std::numeric_limits<double>::quiet_NaN();
      }
    }
    table.add_row({theta, overlap_theory, s.mean_overlap, s.std_overlap, s.mean_fidelity, s.std_fidelity,
                   s.mean_success_probability, static_cast<double>(s.failed_trials)});
    theory.x.push_back(theta);
    theory.y.push_back(overlap_theory);
    sim.x.push_back(theta);
    sim.y.push_back(s.mean_overlap);
    sim.error.push_back(s.std_overlap);
    out << "theta " << theta_label(theta) << "  overlap " << format_number(s.mean_overlap) << " (theory "
        << format_number(overlap_theory) << ")  fidelity " << format_number(s.mean_fidelity) << " +- "
        << format_number(s.std_fidelity) << '\n';
  }
  const std::string stem = "group_" + config.group + "_" + noise::mode_name(config.mode);
  table.write(opts.out / (stem + ".csv"));
  if (config.plots) {
    io::write_xy_plot(opts.out / (stem + ".svg"), "Group " + config.group + " (" + noise::mode_name(config.mode) + ")",
                      "theta (rad)", "overlap with phi1", {sim, theory});
  }
  out << "wrote " << (opts.out / (stem + ".csv")).string() << '\n';
  return kSuccess;
}

int uncertainty_map(const CommonOptions& opts, std::ostream& out, std::ostream& log) {
  io::ExperimentConfig config = resolve_config(opts);
  if (config.mode == noise::Mode::kIdeal) throw std::invalid_argument("uncertainty-map needs a noisy mode");
  prepare_out_dir(opts.out);
  const noise::NoisyPipeline pipeline = make_pipeline(config, opts.out, log);
  const Eigen::MatrixXd map =
      noise::uncertainty_map(pipeline, config.overlap1_grid, config.overlap2_grid, config.n_trials, config.mode);
  std::vector<std::string> header = {"overlap1"};
  for (double o2 : config.overlap2_grid) header.push_back(format_number(o2));
  CsvTable table(header);
  for (std::size_t r = 0; r < config.overlap1_grid.size(); ++r) {
    std::vector<double> row = {config.overlap1_grid[r]};
    for (Eigen::Index c = 0; c < map.cols(); ++c) row.push_back(map(static_cast<Eigen::Index>(r), c));
    table.add_row(row);
  }
  table.write(opts.out / "uncertainty_map.csv");
  if (config.plots) {
    io::write_heatmap(opts.out / "uncertainty_map.svg", "Fidelity uncertainty", "|<phi2|chi>|", "|<phi1|chi>|",
                      config.overlap2_grid, config.overlap1_grid, map);
  }
  out << table.str();
  return kSuccess;
}

int echo_comparison(const CommonOptions& opts, std::ostream& out, std::ostream& log) {
  const io::ExperimentConfig config = resolve_config(opts);
  prepare_out_dir(opts.out);
  const noise::NoisyPipeline pipeline = make_pipeline(config, opts.out, log);
  const auto rows = noise::echo_comparison(pipeline, config.theta_grid, config.n_trials);
  CsvTable table({"theta_rad", "fidelity_with_echo_mean", "fidelity_with_echo_std", "fidelity_no_echo_mean",
                  "fidelity_no_echo_std"});
  io::PlotSeries with{"with echo", {}, {}, {}, false, "#1f77b4"};
  io::PlotSeries without{"without echo", {}, {}, {}, false, "#ff7f0e"};
  for (const auto& r : rows) {
    table.add_row({r.theta, r.with_echo.mean_fidelity, r.with_echo.std_fidelity, r.without_echo.mean_fidelity,
                   r.without_echo.std_fidelity});
    with.x.push_back(r.theta);
    with.y.push_back(r.with_echo.mean_fidelity);
    with.error.push_back(r.with_echo.std_fidelity);
    without.x.push_back(r.theta);
    without.y.push_back(r.without_echo.mean_fidelity);
    without.error.push_back(r.without_echo.std_fidelity);
  }
  table.write(opts.out / "echo_comparison.csv");
  if (config.plots) {
    io::write_xy_plot(opts.out / "echo_comparison.svg", "Group B with and without gradient echo", "theta2 (rad)",
                      "fidelity", {with, without});
  }
  out << table.str();
  return kSuccess;
}

int grape(const CommonOptions& opts, const GrapeOptions& gopts, std::ostream& out, std::ostream& log) {
  io::ExperimentConfig config = resolve_config(opts);
  io::GrapeSettings& g = config.grape;
  if (gopts.target) g.target = *gopts.target;
  if (gopts.duration_s) g.duration_s = *gopts.duration_s;
  if (gopts.segments) g.segments = *gopts.segments;
  if (gopts.goal) g.goal = *gopts.goal;
  if (gopts.max_iterations) g.max_iterations = *gopts.max_iterations;
  if (opts.seed) g.seed = *opts.seed;
  prepare_out_dir(opts.out);

  const Operator target = io::parse_target(g.target, config.molecule.num_qubits(), config.base_dir);
  const grape::OptimizeResult r =
      grape::optimize(optimizer_config(g, target), config.molecule, std::nullopt, progress(log));

  std::string stem = "custom";
  if (g.target == "cswap" || g.target == "identity") stem = g.target;
  if (g.target.rfind("rot:", 0) == 0) stem = "rotation";
  Json doc = io::pulse_to_json(r.pulse);
  doc["meta"] = {{"settings", grape_meta(g, g.target)}, {"fidelity", r.fidelity}, {"goal_met", r.goal_met}};
  io::write_json_file(opts.out / (stem + "_pulse.json"), doc);

  CsvTable iterations({"iteration", "fidelity", "gradient_norm", "best_fidelity"});
  for (const auto& rec : r.log) {
    iterations.add_row({static_cast<double>(rec.iteration), rec.fidelity, rec.gradient_norm, rec.best_fidelity});
  }
  iterations.write(opts.out / (stem + "_iterations.csv"));

  CsvTable scan({"rf_scale", "fidelity"});
  for (const auto& [s, f] : grape::rf_robustness_scan(r.pulse, config.molecule, target, {0.9, 0.95, 1.0, 1.05, 1.1})) {
    scan.add_row({s, f});
  }
  scan.write(opts.out / (stem + "_rf_scan.csv"));

  out << "target " << g.target << "  fidelity " << format_number(r.fidelity) << "  iterations "
      << r.log.back().iteration << "  goal " << format_number(g.goal) << (r.goal_met ? " met" : " NOT met") << '\n';
  return r.goal_met ? kSuccess : kGoalNotMet;
}

int pps_check(const CommonOptions& opts, const std::optional<fs::path>& molecule, std::ostream& out,
              std::ostream& log) {
  (void)log;
  const io::ExperimentConfig config = resolve_config(opts);
  const nmr::Molecule mol = molecule ? io::load_molecule(*molecule) : config.molecule;
  prepare_out_dir(opts.out);
  const nmr::PulseProgram program = nmr::canned_pps_program(mol);
  const double thermal = nmr::pps_prepare(mol, {}).fidelity;
  double fidelity = 0.0;
  try {
    fidelity = nmr::pps_prepare(mol, program, 0.0).fidelity;
  } catch (const nmr::PpsFidelityError& e) {
    fidelity = e.fidelity();
  }
  std::vector<double> delays;
  for (const nmr::Event& e : program.events()) {
    if (const auto* f = std::get_if<nmr::FreeEvolution>(&e)) delays.push_back(f->duration_s);
  }
  CsvTable table({"fidelity", "thermal_fidelity", "duration_s", "delay1_s", "delay2_s", "delay3_s"});
  table.add_row({fidelity, thermal, program.duration(), delays.at(0), delays.at(1), delays.at(2)});
  table.write(opts.out / "pps_check.csv");
  io::write_json_file(opts.out / "pps_program.json", io::program_to_json(program));
  out << "pseudo-pure fidelity " << format_number(fidelity) << " (thermal " << format_number(thermal)
      << "), sequence length " << format_number(program.duration() * 1e3) << " ms\n";
  if (fidelity < kPpsThreshold) {
    out << "below the " << format_number(kPpsThreshold) << " threshold\n";
    return kGoalNotMet;
  }
  return kSuccess;
}

int guarded(const std::function<int()>& body, std::ostream& log) {
  try {
    return body();
  } catch (const io::ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const Json::exception& e) {
    log << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const noise::AllTrialsFailedError& e) {
    log << "error: " << e.what() << '\n';
    return kGoalNotMet;
  } catch (const std::exception& e) {
    log << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace superpose::cli
