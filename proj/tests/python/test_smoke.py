# Copyright 2026 The gpts Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math
import pathlib
import subprocess
import sys

import numpy as np
import pytest

import gpts

TOOLS = pathlib.Path(__file__).resolve().parents[2] / "tools"


def test_kernel_and_mercer():
    p = gpts.KernelParams([0.5, 0.5])
    assert gpts.kernel_value(p, np.zeros(2), np.zeros(2)) == pytest.approx(1.0)
    grid = [np.array([a, b]) for a in np.linspace(-1, 1, 5) for b in np.linspace(-1, 1, 5)]
    assert gpts.mercer_error(p, grid) <= 1e-6


def test_posterior_sample_interpolates():
    rng = np.random.default_rng(0)
    x = rng.uniform(-1, 1, size=(12, 2))
    y = np.sin(3 * x[:, 0]) + x[:, 1]
    p = gpts.KernelParams([0.4, 0.6], noise_variance=1e-12)
    gp = gpts.fit_posterior(x, y, p)
    sample = gpts.condition(gpts.draw_prior(p, seed=1), gp, seed=2)
    residuals = [abs(sample.eval(xi) - yi) for xi, yi in zip(x, y)]
    assert max(residuals) <= 1e-3
    assert sample.grad(np.zeros(2)).shape == (2,)


def test_minima_and_inner_optimizer():
    p = gpts.KernelParams([0.3, 0.5])
    prior = gpts.draw_prior(p, seed=4)
    points, values = gpts.select_minima(prior)
    assert len(points) == len(values) > 0
    assert all(v < 0 for v in values)
    assert values == sorted(values)
    x = np.array([[0.0, 0.0], [0.5, -0.5]])
    gp = gpts.fit_posterior(x, np.array([0.2, -0.1]), p)
    sample = gpts.condition(prior, gp, seed=5)
    argmin, value, starts = gpts.optimize_ts(sample, prior, x)
    assert starts == len(points) + 2
    assert value == pytest.approx(sample.eval(argmin))
    assert np.all(np.abs(argmin) <= 1.0)


def test_roots():
    roots = gpts.all_roots(lambda t: math.cos(5 * t), 0.0, math.pi)
    expected = [(2 * k + 1) * math.pi / 10 for k in range(5)]
    assert np.allclose(roots, expected, atol=1e-10)


def test_objectives():
    assert gpts.schwefel(np.zeros(2)) == pytest.approx(837.9658)
    assert gpts.levy(np.ones(3)) == pytest.approx(0.0, abs=1e-15)


def test_run_bo():
    c = gpts.BOConfig()
    c.objective = "levy"
    c.dim = 1
    c.iterations = 3
    c.method = "ei"
    t = gpts.run_bo(c)
    assert t["y"].shape == (4,)
    assert np.all(np.diff(t["y_min"]) <= 0)
    with pytest.raises(ValueError):
        c.method = "ucb"


def test_cli_summary_recomputed(tmp_path):
    code, out, err = gpts.run_experiment(
        ["--func", "schwefel", "--dim", "2", "--method", "spectral-ts,lcb", "--runs", "3", "--iters", "3",
         "--seed", "7", "--out", str(tmp_path)]
    )
    assert code == 0, err
    check = subprocess.run([sys.executable, str(TOOLS / "recompute_summary.py"), str(tmp_path)],
                           capture_output=True, text=True)
    assert check.returncode == 0, check.stdout + check.stderr
    code, _, err = gpts.run_experiment(["--method", "foo"])
    assert code == 2
    assert "spectral-ts" in err
