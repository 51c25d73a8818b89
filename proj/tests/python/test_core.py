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

import math
import os
import pathlib

import numpy as np
import pytest

import superpose

DATA = pathlib.Path(os.environ.get("SUPERPOSE_DATA_DIR", pathlib.Path(__file__).parents[2] / "data"))


def phase_distance(a, b):
    ip = np.vdot(b, a)
    phase = ip / abs(ip) if abs(ip) > 0 else 1.0
    return np.linalg.norm(a - phase * b)


def test_run_ideal_matches_analytic():
    rng = np.random.default_rng(3)
    for _ in range(50):
        kets = []
        for _ in range(4):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            kets.append(v / np.linalg.norm(v))
        phi1, phi2, chi, w = kets
        if abs(np.vdot(chi, phi1)) < 0.05 or abs(np.vdot(chi, phi2)) < 0.05:
            continue
        out, p = superpose.run_ideal(phi1, phi2, chi, w[0], w[1])
        assert 0.0 <= p <= 1.0
        expected = superpose.analytic_superposition(phi1, phi2, chi, w[0], w[1])
        assert phase_distance(out, expected) < 1e-10


@pytest.mark.parametrize("k", range(12))
def test_group_curves(k):
    theta = k * math.pi / 12
    c = math.cos(theta / 2)
    assert superpose.theory_overlap("A", theta) == pytest.approx(c * c, abs=1e-12)
    assert superpose.theory_overlap("B", theta) == pytest.approx((1 + c) ** 2 / (2 + 2 * c), abs=1e-12)
    t = superpose.group_task("B", theta)
    out, p = superpose.run_ideal(t["phi1"], t["phi2"], t["chi"], t["alpha"], t["beta"])
    assert p == pytest.approx(superpose.theory_success_probability("B", theta), abs=1e-12)
    assert abs(np.vdot(t["phi1"], out)) ** 2 == pytest.approx(superpose.theory_overlap("B", theta), abs=1e-10)


def test_orthogonal_reference_raises():
    zero = np.array([1, 0], dtype=complex)
    one = np.array([0, 1], dtype=complex)
    with pytest.raises(Exception):
        superpose.run_ideal(zero, one, one, 1.0, 0.0)


def test_controlled_swap_is_a_permutation():
    u = superpose.controlled_swap()
    assert u.shape == (8, 8)
    assert np.allclose(u @ u.conj().T, np.eye(8))
    assert u[5, 6] == 1 and u[6, 5] == 1


def test_fidelity_and_partial_trace():
    rho = np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)
    assert superpose.fidelity(rho, rho) == pytest.approx(1.0)
    reduced = superpose.partial_trace(rho, [0])
    assert np.allclose(reduced, np.eye(2) / 2)


def test_pps_check():
    r = superpose.pps_check()
    assert r["fidelity"] >= 0.998
    assert r["thermal_fidelity"] < r["fidelity"]
    doubled = superpose.pps_check(str(DATA / "tce_c1c2_doubled.json"))
    assert doubled["fidelity"] >= 0.99
    assert doubled["duration_s"] < r["duration_s"]


def test_grape_gradient_matches_finite_differences():
    rng = np.random.default_rng(5)
    amps = rng.normal(scale=2 * math.pi * 800, size=(4, 8))
    f, g = superpose.grape_gradient(amps, 40e-6, "cswap")
    assert g.shape == amps.shape
    h = 1e-2
    for c, k in [(0, 0), (2, 4), (3, 7)]:
        up = amps.copy()
        down = amps.copy()
        up[c, k] += h
        down[c, k] -= h
        fd = (superpose.grape_gradient(up, 40e-6)[0] - superpose.grape_gradient(down, 40e-6)[0]) / (2 * h)
        assert g[c, k] == pytest.approx(fd, rel=1e-5, abs=1e-9)
    with pytest.raises(ValueError):
        superpose.grape_gradient(amps[:3], 40e-6)


def test_grape_optimize_rotation():
    r = superpose.grape_optimize("rot:1:x:pi/2", 2e-3, 50, 0.999, 300, 7)
    assert r["goal_met"]
    assert r["fidelity"] >= 0.999
    assert r["amplitudes"].shape == (4, 50)
    assert len(r["history"]) >= 1


def test_relaxation_step():
    rho = np.array([[0, 0], [0, 1]], dtype=complex)
    out = superpose.relaxation_step(np.kron(np.kron(rho, rho), rho), 0.5)
    assert np.trace(out).real == pytest.approx(1.0)
    assert out[7, 7].real == pytest.approx(math.exp(-0.5 / 4) * math.exp(-0.5 / 18) * math.exp(-0.5 / 12))


def test_tomography_is_seeded():
    rho = np.diag([1, 0]).astype(complex)
    a = superpose.noisy_tomography(rho, 0.05, 9)
    b = superpose.noisy_tomography(rho, 0.05, 9)
    assert np.array_equal(a, b)
    assert np.trace(a).real == pytest.approx(1.0)
    assert np.allclose(superpose.noisy_tomography(rho, 0.0, 1), rho)
    assert superpose.derive_seed(1, 0) != superpose.derive_seed(1, 1)


def test_noiseless_pipeline(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"noise": {"relaxation": {"enabled": false}, "prep_error": 0, '
                   '"coherent_error": {"kind": "none"}, "readout_sigma": 0}}')
    p = superpose.Pipeline(str(cfg))
    s = p.monte_carlo("B", math.pi / 2, n_trials=3)
    assert s["mean_fidelity"] == pytest.approx(1.0, abs=1e-8)
    assert s["failed_trials"] == 0
    m = p.uncertainty_map([0.5, 1.0], [0.5, 1.0], n_trials=2)
    assert m.shape == (2, 2)
    assert np.all(m < 1e-8)


def test_config_error_is_value_error(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{"grupo": "A"}')
    with pytest.raises(ValueError):
        superpose.Pipeline(str(cfg))
    assert issubclass(superpose.ConfigError, ValueError)
