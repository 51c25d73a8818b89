# Copyright 2026 The Superpose Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Probabilistic superposition of qubit states on a simulated NMR processor."""

from superpose._core import (
    AllTrialsFailedError,
    ConfigError,
    Pipeline,
    PostSelectionError,
    analytic_superposition,
    controlled_swap,
    derive_seed,
    fidelity,
    gate_fidelity,
    grape_gradient,
    grape_optimize,
    group_task,
    noisy_tomography,
    partial_trace,
    pps_check,
    relaxation_step,
    run_ideal,
    target_unitary,
    theory_overlap,
    theory_success_probability,
)

__all__ = [
    "AllTrialsFailedError",
    "ConfigError",
    "Pipeline",
    "PostSelectionError",
    "analytic_superposition",
    "controlled_swap",
    "derive_seed",
    "fidelity",
    "gate_fidelity",
    "grape_gradient",
    "grape_optimize",
    "group_task",
    "noisy_tomography",
    "partial_trace",
    "pps_check",
    "relaxation_step",
    "run_ideal",
    "target_unitary",
    "theory_overlap",
    "theory_success_probability",
]
