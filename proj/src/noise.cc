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

#include "superpose/noise.h"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace superpose::noise {
namespace {

using protocol::kAncillaQubit;
using protocol::kFirstInputQubit;
using protocol::kSecondInputQubit;

// Random Hermitian generator with unit spectral radius.
Matrix random_hermitian(int dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix a(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = Complex(g(rng), g(rng));
  }
  Matrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const double radius = es.eigenvalues().cwiseAbs().maxCoeff();
  return radius > 0.0 ? Matrix(h / radius) : h;
}

double eq8_fidelity(const Matrix& a, const Matrix& b) {
  const double num = (a * b).trace().real();
  const double den = std::sqrt((a * a).trace().real() * (b * b).trace().real());
  return den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();
}

void summarize(const std::vector<TrialResult>& trials, TrialStatistics& s) {
  double fsum = 0.0, osum = 0.0, psum = 0.0;
  int ok = 0;
  for (const TrialResult& t : trials) {
    if (t.failed) {
      ++s.failed_trials;
      continue;
    }
    fsum += t.fidelity;
    osum += t.overlap;
    psum += t.success_probability;
    ++ok;
  }
  if (ok == 0) return;
  s.mean_fidelity = fsum / ok;
  s.mean_overlap = osum / ok;
  s.mean_success_probability = psum / ok;
  double fv = 0.0, ov = 0.0;
  for (const TrialResult& t : trials) {
    if (t.failed) continue;
    fv += (t.fidelity - s.mean_fidelity) * (t.fidelity - s.mean_fidelity);
    ov += (t.overlap - s.mean_overlap) * (t.overlap - s.mean_overlap);
  }
  s.std_fidelity = ok > 1 ? std::sqrt(fv / (ok - 1)) : 0.0;
  s.std_overlap = ok > 1 ? std::sqrt(ov / (ok - 1)) : 0.0;
}

}  // namespace

Mode parse_mode(std::string_view name) {
  if (name == "ideal") return Mode::kIdeal;
  if (name == "with_echo") return Mode::kWithEcho;
  if (name == "no_echo") return Mode::kNoEcho;
  throw std::invalid_argument("unknown mode '" + std::string(name) +
                              "' (expected ideal, with_echo or no_echo)");
}

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::kIdeal:
      return "ideal";
    case Mode::kWithEcho:
      return "with_echo";
    case Mode::kNoEcho:
      return "no_echo";
  }
  return "ideal";
}

NoisyPipeline::NoisyPipeline(nmr::Molecule mol, NoiseModel noise, Reduction reduction,
                             double post_selection_floor)
    : mol_(std::move(mol)),
      noise_(std::move(noise)),
      reduction_(reduction),
      floor_(post_selection_floor),
      initial_(DensityOperator::maximally_mixed(1)),
      pps_fidelity_(0.0) {
  if (mol_.num_qubits() != 3) throw std::invalid_argument("the protocol runs on a three-spin molecule");
  noise_.validate();
  noise_.relaxation_molecule(mol_);  // validates overrides against the spin count

  const nmr::PpsResult pps = nmr::pps_prepare(mol_, nmr::canned_pps_program(mol_));
  pps_fidelity_ = pps.fidelity;
  const DensityOperator effective = nmr::pps_effective_state(pps.deviation);
  const double eps = noise_.prep_error;
  initial_ = DensityOperator((1.0 - eps) * effective.matrix() +
                                 eps * DensityOperator::maximally_mixed(3).matrix(),
                             DensityKind::kPhysical);

  const Operator cswap = protocol::controlled_swap();
  if (noise_.coherent.kind == CoherentErrorKind::kGrapePulse) {
    if (!noise_.coherent.pulse) {
      throw std::invalid_argument("coherent error 'grape_pulse' needs a controlled-SWAP pulse");
    }
    // Precomputed segment propagators keep the per-trial cost to products.
    const grape::ControlPulse& pulse = *noise_.coherent.pulse;
    std::vector<nmr::Event> events;
    for (const Matrix& u : grape::segment_propagators(pulse, mol_)) {
      events.emplace_back(nmr::Gate{Operator(u, true), pulse.dt_s, "swap-segment"});
    }
    swap_program_ = nmr::PulseProgram(std::move(events));
  } else {
    swap_program_ = nmr::PulseProgram({nmr::Gate{cswap, kSwapGateDuration, "cswap"}});
  }
}

TrialResult NoisyPipeline::run_trial(const protocol::SuperpositionTask& task, Mode mode,
                                     std::uint64_t seed) const {
  TrialResult out;
  const StateVector target = protocol::analytic_superposition(task);
  const StateVector mu = protocol::mu_state(task.phi1(), task.phi2(), task.chi());

  if (mode == Mode::kIdeal) {
    try {
      const protocol::ProtocolOutcome o = protocol::run_ideal(task, floor_);
      out.fidelity = std::norm(target.inner(o.output));
      out.overlap = std::norm(task.phi1().inner(o.output));
      out.success_probability = o.success_probability;
    } catch (const PostSelectionError& e) {
      out.failed = true;
      out.success_probability = e.probability();
    }
    return out;
  }

  Rng rng(seed);
  const NoiseModel* noise = &noise_;
  DensityOperator rho = initial_;

  const Matrix prep = kron(kron(basis_rotation(protocol::ancilla_state(task.alpha(), task.beta())),
                                basis_rotation(task.phi1())),
                           basis_rotation(task.phi2()));
  nmr::PulseProgram program({nmr::Gate{Operator(prep, true), kPrepGateDuration, "prepare"}});
  if (noise_.coherent.kind == CoherentErrorKind::kPerturbation) {
    const Matrix k = random_hermitian(8, rng);
    const Matrix u = evolve(k, noise_.coherent.strength) * protocol::controlled_swap().matrix();
    program = program.then(nmr::PulseProgram({nmr::Gate{Operator(u, true), kSwapGateDuration, "cswap"}}));
  } else {
    program = program.then(swap_program_);
  }
  if (mode == Mode::kWithEcho) {
    const double half = nmr::kEchoProcedureDuration / 2;
    program = program.then(nmr::gradient_echo_program(3, kSecondInputQubit, task.chi(), half))
                  .then(nmr::gradient_echo_program(3, kAncillaQubit, mu, half));
  }
  rho = nmr::evolve_program(rho, program, mol_, noise);
  rho = noisy_tomography(rho, noise_.readout_sigma, rng);

  const std::array<int, 1> keep = {kFirstInputQubit};
  DensityOperator reduced = DensityOperator::maximally_mixed(1);
  if (mode == Mode::kNoEcho && reduction_ == Reduction::kTraceOut) {
    reduced = partial_trace(rho, keep);
    out.success_probability = 1.0;
  } else {
    const Matrix p = embed(task.chi().projector(), kSecondInputQubit, 3) *
                     embed(mu.projector(), kAncillaQubit, 3);
    const Matrix projected = p * rho.matrix() * p.adjoint();
    const double prob = projected.trace().real();
    out.success_probability = prob;
    if (!(prob >= floor_)) {
      out.failed = true;
      return out;
    }
    reduced = partial_trace(DensityOperator(projected / prob, DensityKind::kPhysical), keep);
  }
  out.fidelity = eq8_fidelity(reduced.matrix(), target.projector());
  out.overlap = (task.phi1().amplitudes().adjoint() * reduced.matrix() * task.phi1().amplitudes())(0).real();
  return out;
}

TrialStatistics NoisyPipeline::monte_carlo(const protocol::SuperpositionTask& task, Mode mode,
                                           int n_trials) const {
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  std::vector<TrialResult> trials;
  trials.reserve(static_cast<std::size_t>(n_trials));
  for (int i = 0; i < n_trials; ++i) {
    trials.push_back(run_trial(task, mode, derive_seed(noise_.seed, static_cast<std::uint64_t>(i))));
  }
  TrialStatistics s;
  s.n_trials = n_trials;
  summarize(trials, s);
  if (s.failed_trials == n_trials) {
    std::ostringstream ss;
    ss << "all " << n_trials << " trials failed post-selection";
    throw AllTrialsFailedError(ss.str());
  }
  return s;
}

TrialResult run_noisy_trial(const NoisyPipeline& pipeline, protocol::Group group, double theta,
                            Mode mode) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw std::invalid_argument("theta must lie in [0, pi]");
  return pipeline.run_trial(protocol::SuperpositionTask::for_group(group, theta), mode,
                            pipeline.noise().seed);
}

TrialStatistics monte_carlo(const NoisyPipeline& pipeline, protocol::Group group, double theta,
                            int n_trials, Mode mode) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw std::invalid_argument("theta must lie in [0, pi]");
  return pipeline.monte_carlo(protocol::SuperpositionTask::for_group(group, theta), mode, n_trials);
}

protocol::SuperpositionTask overlap_task(double overlap1, double overlap2) {
  for (double o : {overlap1, overlap2}) {
    if (!(o > 0.0 && o <= 1.0)) throw std::invalid_argument("overlap magnitudes must lie in (0, 1]");
  }
  Vector p1(2), p2(2);
  p1 << overlap1, std::sqrt(std::max(0.0, 1.0 - overlap1 * overlap1));
  p2 << overlap2, kI * std::sqrt(std::max(0.0, 1.0 - overlap2 * overlap2));
  const double r = 1.0 / std::sqrt(2.0);
  return protocol::SuperpositionTask(StateVector::normalized(p1), StateVector::normalized(p2),
                                     StateVector::basis(1, 0), r, r);
}

Eigen::MatrixXd uncertainty_map(const NoisyPipeline& pipeline, const std::vector<double>& overlap1,
                                const std::vector<double>& overlap2, int n_trials, Mode mode) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(overlap1.size()), static_cast<Eigen::Index>(overlap2.size()));
  for (std::size_t r = 0; r < overlap1.size(); ++r) {
    for (std::size_t c = 0; c < overlap2.size(); ++c) {
      const auto task = overlap_task(overlap1[r], overlap2[c]);
      double value = std::numeric_limits<double>::quiet_NaN();
      try {
        value = pipeline.monte_carlo(task, mode, n_trials).std_fidelity;
      } catch (const AllTrialsFailedError&) {
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = value;
    }
  }
  return out;
}

std::vector<EchoComparisonRow> echo_comparison(const NoisyPipeline& pipeline,
                                               const std::vector<double>& theta2_grid, int n_trials) {
  std::vector<EchoComparisonRow> rows;
  for (double theta : theta2_grid) {
    EchoComparisonRow row;
    row.theta = theta;
    row.with_echo = monte_carlo(pipeline, protocol::Group::kB, theta, n_trials, Mode::kWithEcho);
    row.without_echo = monte_carlo(pipeline, protocol::Group::kB, theta, n_trials, Mode::kNoEcho);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace superpose::noise
