import json
import math

import numpy as np
import pytest

import hardynls


@pytest.fixture(scope="module")
def grid():
    return hardynls.Grid(n=2048, r_min=1e-4, r_max=50.0)


@pytest.fixture(scope="module")
def wave(grid):
    return hardynls.ground_state(hardynls.Params(), grid)


def test_version():
    assert hardynls.__version__ == "0.1.0"


def test_gaussian_mass(grid):
    r = grid.nodes
    v = np.exp(-0.5 * r**2)
    assert abs(hardynls.mass_mu(grid, v, 3) - 2 * math.pi) < 1e-5


def test_transform_round_trip(grid):
    rng = np.random.default_rng(0)
    v = rng.standard_normal(grid.size) + 1j * rng.standard_normal(grid.size)
    back = hardynls.to_v(grid, hardynls.to_u(grid, v, 4), 4)
    assert np.max(np.abs(back - v)) <= 1e-15 * np.max(np.abs(v))


def test_ground_state(wave):
    assert wave.residual < 1e-6
    e = wave.energies
    assert abs(e["J"] - e["E"] - 0.5) < 1e-10
    assert abs(wave.exponent + 0.5) < 0.05
    assert wave.v0 > 0
    assert np.all(np.diff(wave.J_history) <= 1e-12)


def test_evolve_linear_gaussian(grid):
    r = grid.nodes
    out = hardynls.evolve(hardynls.Params(), grid, np.exp(-0.5 * r**2), 1e-2, 50, nonlinear=False)
    exact = np.array([hardynls.free_gaussian(x, out["time"]) for x in r])
    assert np.max(np.abs(out["v"] - exact)) < 1e-3
    assert abs(out["charge"] - out["charge0"]) < 1e-10 * out["charge0"]


def test_stability_short(wave):
    run = hardynls.stability(hardynls.Params(), wave, 1e-2, "phase-ramp", T=2.0, dt=2e-2)
    assert run["max_distance"] < 0.1
    assert len(run["times"]) == len(run["distances"])


def test_checks(grid):
    rep = hardynls.check_hardy(samples=20, seed=42, N=3, grid=grid)
    assert rep["pass"]
    assert rep == hardynls.check_hardy(samples=20, seed=42, N=3, grid=grid)
    assert hardynls.check_weight(0.0, -2.0, N=3, q=3.0)["condition"]
    assert not hardynls.check_weight(0.0, 0.0, N=3, q=3.0)["condition"]
    assert hardynls.check_ihs(samples=20, grid=grid)["min_ratio"] > 0
    assert math.isfinite(hardynls.check_ckn(samples=20, params=hardynls.Params(), grid=grid)["empirical_constant"])


def test_kelvin(grid):
    k = hardynls.verify_kelvin(grid, N=3, samples=5)
    assert k["nodes_exact"]
    assert k["Lambda_rel_error"] < 1e-2


def test_errors(grid, wave):
    with pytest.raises(hardynls.ParameterError):
        hardynls.stability(hardynls.Params(q=5.0), wave, 1e-2)
    with pytest.raises(ValueError):
        hardynls.Grid(n=4)
    with pytest.raises(hardynls.ConvergenceError):
        hardynls.ground_state(hardynls.Params(), grid, max_iter=2)
    with pytest.raises(hardynls.Error):
        hardynls.to_u(grid, np.zeros(3), 3)


def test_run_command(tmp_path):
    cfg = {"command": "check", "check": {"kind": "hardy", "samples": 10}, "grid": {"n": 512},
           "output_dir": str(tmp_path / "a")}
    code, files = hardynls.run(json.dumps(cfg))
    assert code == 0
    report = json.loads(open(files[0]).read())
    assert report["config_hash"] == hardynls.config_hash(json.dumps(cfg))
    cfg["output_dir"] = str(tmp_path / "b")
    code, files_b = hardynls.run(json.dumps(cfg))
    assert open(files[0], "rb").read() == open(files_b[0], "rb").read()
    bad = {"command": "stability", "params": {"q": 5.0}, "output_dir": str(tmp_path / "c")}
    code, _ = hardynls.run(json.dumps(bad))
    assert code == 1
