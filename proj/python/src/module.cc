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

// Python bindings for the superposition simulator. States and operators cross
// the boundary as NumPy arrays; molecules and configs as JSON file paths.

#include <optional>
#include <stdexcept>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "superpose/grape.h"
#include "superpose/io.h"
#include "superpose/nmr.h"
#include "superpose/noise.h"
#include "superpose/protocol.h"
#include "superpose/relaxation.h"
#include "superpose/tomography.h"

namespace py = pybind11;

namespace superpose {
namespace {

using protocol::SuperpositionTask;

nmr::Molecule molecule_or_default(const std::optional<std::string>& path) {
  return path ? io::load_molecule(*path) : nmr::Molecule::tce();
}

SuperpositionTask make_task(const Vector& phi1, const Vector& phi2, const Vector& chi, Complex alpha,
                            Complex beta) {
  return SuperpositionTask(StateVector(phi1), StateVector(phi2), StateVector(chi), alpha, beta);
}

DensityOperator physical(const Matrix& rho) { return DensityOperator(rho, DensityKind::kPhysical); }

py::dict stats_dict(const noise::TrialStatistics& s) {
  py::dict d;
  d["mean_fidelity"] = s.mean_fidelity;
  d["std_fidelity"] = s.std_fidelity;
  d["mean_overlap"] = s.mean_overlap;
  d["std_overlap"] = s.std_overlap;
  d["mean_success_probability"] = s.mean_success_probability;
  d["n_trials"] = s.n_trials;
  d["failed_trials"] = s.failed_trials;
  return d;
}

Eigen::MatrixXd gradient_matrix(const grape::Gradient& g) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(g.size()), g.empty() ? 0 : static_cast<Eigen::Index>(g[0].size()));
  for (std::size_t c = 0; c < g.size(); ++c) {
    for (std::size_t k = 0; k < g[c].size(); ++k) out(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(k)) = g[c][k];
  }
  return out;
}

grape::ControlPulse pulse_from_array(const Eigen::MatrixXd& amplitudes, double dt_s, const nmr::Molecule& mol) {
  grape::ControlPulse p;
  p.dt_s = dt_s;
  p.channels = grape::control_hamiltonians(mol).names;
  if (amplitudes.rows() != static_cast<Eigen::Index>(p.channels.size())) {
    throw std::invalid_argument("amplitudes need one row per control channel (" +
                                std::to_string(p.channels.size()) + ")");
  }
  for (Eigen::Index c = 0; c < amplitudes.rows(); ++c) {
    std::vector<double>& row = p.amplitudes.emplace_back(static_cast<std::size_t>(amplitudes.cols()));
    for (Eigen::Index k = 0; k < amplitudes.cols(); ++k) row[static_cast<std::size_t>(k)] = amplitudes(c, k);
  }
  return p;
}

// Noisy pipeline with its controlled-SWAP pulse resolved.
noise::NoisyPipeline build_pipeline(io::ExperimentConfig config) {
  if (config.noise.coherent.kind == noise::CoherentErrorKind::kGrapePulse && !config.noise.coherent.pulse) {
    grape::OptimizerConfig oc;
    oc.target = protocol::controlled_swap();
    oc.duration_s = config.grape.duration_s;
    oc.segments = config.grape.segments;
    oc.fidelity_goal = config.grape.goal;
    oc.max_iterations = config.grape.max_iterations;
    oc.seed = config.grape.seed;
    oc.ensemble = config.grape.ensemble;
    config.noise.coherent.pulse = grape::optimize(oc, config.molecule).pulse;
  }
  return noise::NoisyPipeline(config.molecule, config.noise, config.reduction, config.post_selection_floor);
}

io::ExperimentConfig config_or_default(const std::optional<std::string>& path, std::optional<std::uint64_t> seed) {
  io::ExperimentConfig c = path ? io::load_config(*path) : io::ExperimentConfig::defaults();
  if (seed) c.noise.seed = *seed;
  return c;
}

}  // namespace
}  // namespace superpose

PYBIND11_MODULE(_core, m) {
  using namespace superpose;
  m.doc() = "Probabilistic superposition of two qubit states, ideal and NMR-noisy.";

  py::register_exception<PostSelectionError>(m, "PostSelectionError", PyExc_RuntimeError);
  py::register_exception<noise::AllTrialsFailedError>(m, "AllTrialsFailedError", PyExc_RuntimeError);
  py::register_exception<io::ConfigError>(m, "ConfigError", PyExc_ValueError);

  // Protocol.
  m.def(
      "analytic_superposition",
      [](const Vector& phi1, const Vector& phi2, const Vector& chi, Complex alpha, Complex beta) {
        return Vector(protocol::analytic_superposition(make_task(phi1, phi2, chi, alpha, beta)).amplitudes());
      },
      py::arg("phi1"), py::arg("phi2"), py::arg("chi"), py::arg("alpha"), py::arg("beta"));
  m.def(
      "run_ideal",
      [](const Vector& phi1, const Vector& phi2, const Vector& chi, Complex alpha, Complex beta, double floor) {
        const protocol::ProtocolOutcome o = protocol::run_ideal(make_task(phi1, phi2, chi, alpha, beta), floor);
        return py::make_tuple(Vector(o.output.amplitudes()), o.success_probability);
      },
      py::arg("phi1"), py::arg("phi2"), py::arg("chi"), py::arg("alpha"), py::arg("beta"),
      py::arg("floor") = 1e-12, "Returns (output state, success probability).");
  m.def(
      "group_task",
      [](const std::string& group, double theta) {
        const auto t = SuperpositionTask::for_group(protocol::parse_group(group), theta);
        py::dict d;
        d["phi1"] = Vector(t.phi1().amplitudes());
        d["phi2"] = Vector(t.phi2().amplitudes());
        d["chi"] = Vector(t.chi().amplitudes());
        d["alpha"] = t.alpha();
        d["beta"] = t.beta();
        return d;
      },
      py::arg("group"), py::arg("theta"));
  m.def(
      "theory_overlap",
      [](const std::string& group, double theta) { return protocol::theory_overlap(protocol::parse_group(group), theta); },
      py::arg("group"), py::arg("theta"));
  m.def(
      "theory_success_probability",
      [](const std::string& group, double theta) {
        return protocol::theory_success_probability(protocol::parse_group(group), theta);
      },
      py::arg("group"), py::arg("theta"));
  m.def("controlled_swap", [] { return Matrix(protocol::controlled_swap().matrix()); });

  // Density matrices.
  m.def(
      "fidelity", [](const Matrix& a, const Matrix& b) { return fidelity(physical(a), physical(b)); }, py::arg("a"),
      py::arg("b"), "tr(ab) / sqrt(tr(a^2) tr(b^2)) for unit-trace density matrices.");
  m.def(
      "partial_trace",
      [](const Matrix& rho, const std::vector<int>& keep) { return Matrix(partial_trace(physical(rho), keep).matrix()); },
      py::arg("rho"), py::arg("keep"));

  // NMR.
  m.def(
      "pps_check",
      [](const std::optional<std::string>& molecule) {
        const nmr::Molecule mol = molecule_or_default(molecule);
        const nmr::PpsResult r = nmr::pps_prepare(mol, nmr::canned_pps_program(mol), 0.0);
        py::dict d;
        d["fidelity"] = r.fidelity;
        d["thermal_fidelity"] = nmr::pps_fidelity(nmr::thermal_deviation(mol));
        d["duration_s"] = r.duration_s;
        return d;
      },
      py::arg("molecule") = py::none(), "Noiseless pseudo-pure preparation of the canned sequence.");

  // GRAPE.
  m.def(
      "gate_fidelity", [](const Matrix& u, const Matrix& target) { return grape::gate_fidelity(u, target); },
      py::arg("u"), py::arg("target"));
  m.def(
      "target_unitary",
      [](const std::string& spec) { return Matrix(io::parse_target(spec, 3).matrix()); }, py::arg("spec"));
  m.def(
      "grape_gradient",
      [](const Eigen::MatrixXd& amplitudes, double dt_s, const std::string& target,
         const std::optional<std::string>& molecule) {
        const nmr::Molecule mol = molecule_or_default(molecule);
        const grape::FidelityGradient fg = grape::fidelity_and_gradient(
            pulse_from_array(amplitudes, dt_s, mol), io::parse_target(target, mol.num_qubits()), mol);
        return py::make_tuple(fg.fidelity, gradient_matrix(fg.gradient));
      },
      py::arg("amplitudes"), py::arg("dt_s"), py::arg("target") = "cswap", py::arg("molecule") = py::none(),
      "Returns (fidelity, d fidelity / d amplitude) with shape (channels, segments).");
  m.def(
      "grape_optimize",
      [](const std::string& target, double duration_s, int segments, double goal, int max_iterations,
         std::uint64_t seed, const std::optional<std::string>& molecule) {
        const nmr::Molecule mol = molecule_or_default(molecule);
        grape::OptimizerConfig oc;
        oc.target = io::parse_target(target, mol.num_qubits());
        oc.duration_s = duration_s;
        oc.segments = segments;
        oc.fidelity_goal = goal;
        oc.max_iterations = max_iterations;
        oc.seed = seed;
        grape::OptimizeResult r;
        {
          py::gil_scoped_release release;
          r = grape::optimize(oc, mol);
        }
        std::vector<double> history;
        for (const grape::IterationRecord& rec : r.log) history.push_back(rec.fidelity);
        py::dict d;
        d["fidelity"] = r.fidelity;
        d["goal_met"] = r.goal_met;
        d["dt_s"] = r.pulse.dt_s;
        d["channels"] = r.pulse.channels;
        d["amplitudes"] = gradient_matrix(r.pulse.amplitudes);
        d["history"] = history;
        return d;
      },
      py::arg("target") = "cswap", py::arg("duration_s") = 28e-3, py::arg("segments") = 700,
      py::arg("goal") = 0.999, py::arg("max_iterations") = 1000, py::arg("seed") = 7,
      py::arg("molecule") = py::none());

  // Noise.
  m.def(
      "relaxation_step",
      [](const Matrix& rho, double dt_s, const std::optional<std::vector<std::pair<double, double>>>& t1_t2,
         const std::optional<std::string>& molecule) {
        nmr::Molecule mol = molecule_or_default(molecule);
        if (t1_t2) mol = mol.with_relaxation(*t1_t2);
        return Matrix(noise::relaxation_step(physical(rho), mol, dt_s).matrix());
      },
      py::arg("rho"), py::arg("dt_s"), py::arg("t1_t2") = py::none(), py::arg("molecule") = py::none());
  m.def(
      "noisy_tomography",
      [](const Matrix& rho, double sigma, std::uint64_t seed) {
        noise::Rng rng(seed);
        return Matrix(noise::noisy_tomography(physical(rho), sigma, rng).matrix());
      },
      py::arg("rho"), py::arg("sigma"), py::arg("seed"));
  m.def("derive_seed", &noise::derive_seed, py::arg("master"), py::arg("index"));

  py::class_<noise::NoisyPipeline>(m, "Pipeline")
      .def(py::init([](const std::optional<std::string>& config, std::optional<std::uint64_t> seed) {
             return build_pipeline(config_or_default(config, seed));
           }),
           py::arg("config") = py::none(), py::arg("seed") = py::none(),
           "Noisy pipeline from a config file (defaults otherwise). Synthesizes the controlled-SWAP pulse when "
           "the config does not name one.")
      .def_property_readonly("pps_fidelity", &noise::NoisyPipeline::pps_fidelity)
      .def(
          "monte_carlo",
          [](const noise::NoisyPipeline& p, const std::string& group, double theta, int n_trials,
             const std::string& mode) {
            noise::TrialStatistics s;
            {
              py::gil_scoped_release release;
              s = noise::monte_carlo(p, protocol::parse_group(group), theta, n_trials, noise::parse_mode(mode));
            }
            return stats_dict(s);
          },
          py::arg("group"), py::arg("theta"), py::arg("n_trials") = 200, py::arg("mode") = "with_echo")
      .def(
          "uncertainty_map",
          [](const noise::NoisyPipeline& p, const std::vector<double>& o1, const std::vector<double>& o2,
             int n_trials, const std::string& mode) {
            return noise::uncertainty_map(p, o1, o2, n_trials, noise::parse_mode(mode));
          },
          py::arg("overlap1"), py::arg("overlap2"), py::arg("n_trials") = 200, py::arg("mode") = "with_echo");
}
