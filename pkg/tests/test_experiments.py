import json
import math

import numpy as np
import pytest

from lwlab import (
    default_perturbation,
    heavy_tail_perturbation,
    measure_semigroup_decay,
    reproduce_profile_family,
    run_orbital_stability,
    snapshot_run,
    weighted_norm,
    write_csv,
    write_json,
)
from lwlab.errors import NonzeroMass
from lwlab.experiments import _fit_loglog, max_workers


def test_default_perturbation_masses():
    zero = default_perturbation(0.5, "zero")
    pos = default_perturbation(0.5, "positive")
    assert zero.values.sum() == pytest.approx(0.0, abs=1e-18)
    assert pos.values.sum() > 0.0
    assert weighted_norm(zero, 0.5, "one") == pytest.approx(0.01, abs=1e-15)
    with pytest.raises(ValueError):
        default_perturbation(0.5, "negative")


def test_heavy_tail_perturbation():
    h = heavy_tail_perturbation(1.0, 500, power=2.5)
    assert h.values.sum() == pytest.approx(0.0, abs=1e-18)
    assert weighted_norm(h, 1.0, "one") == pytest.approx(0.01, abs=1e-15)
    # odd in j
    assert h.at(7) == -h.at(-7)
    with pytest.raises(ValueError):
        heavy_tail_perturbation(2.0, 100, power=2.5)


def test_fit_loglog_recovers_exact_power_law():
    ns = [2 ** k for k in range(1, 11)]
    norms = [3.0 * n ** -0.75 for n in ns]
    slope, r2 = _fit_loglog(ns, norms)
    assert slope == pytest.approx(-0.75, abs=1e-12)
    assert r2 == pytest.approx(1.0, abs=1e-12)


def test_semigroup_decay_requires_zero_mass(cfg):
    h = default_perturbation(1.0, "positive")
    with pytest.raises(NonzeroMass):
        measure_semigroup_decay(cfg, h, 0.0, 1.0, 64)
    # the shift composition removes the obstruction
    out = measure_semigroup_decay(cfg, h, 0.0, 1.0, 64, with_shift=True)
    assert set(out) == {"one", "infinity"}
    with pytest.raises(ValueError):
        measure_semigroup_decay(cfg, h, 0.0, 1.0, 4)


def test_semigroup_decay_report_fields(cfg):
    h = default_perturbation(1.0, "zero")
    out = measure_semigroup_decay(cfg, h, 0.0, 1.0, 64)
    rep = out["one"]
    assert rep.n_values[-1] == 64
    assert len(rep.norms) == len(rep.n_values)
    assert all(v > 0 for v in rep.norms)
    assert rep.theory_exponent == pytest.approx(-(1.0 - 0.125))


def test_orbital_stability_validation(cfg):
    h = default_perturbation(0.5, "zero")
    with pytest.raises(ValueError):
        run_orbital_stability(cfg, h, 0.2, 0.1, 64)  # beta + sigma < 5/12
    with pytest.raises(ValueError):
        run_orbital_stability(cfg, h, 0.3, 0.5, 64)  # sigma too large


def test_orbital_stability_short_run(cfg):
    h = default_perturbation(0.425, "zero")
    rep = run_orbital_stability(cfg, h, 0.3, 0.125, 128)
    assert rep.theta == pytest.approx(0.0, abs=1e-15)
    assert rep.mass_drift <= 1e-10
    assert rep.linf_beta_norms[-1] < rep.linf_beta_norms[0]


def test_reproduce_profile_family_endpoints(cfg):
    rows = reproduce_profile_family(cfg, [0.0, -0.5])
    assert rows[0]["v0"] == pytest.approx(0.5) and rows[0]["v1"] == pytest.approx(-0.5)
    assert rows[1]["residual"] <= 1e-10


def test_snapshot_run(cfg):
    h = default_perturbation(0.5, "zero")
    snaps = snapshot_run(cfg, h, [0, 5])
    assert len(snaps) == 2
    for s in snaps:
        # total mass of the perturbed shock is conserved
        assert s.tail_left == cfg.u_l and s.tail_right == cfg.u_r
    with pytest.raises(ValueError):
        snapshot_run(cfg, h, [5, 0])


def test_write_csv_format(tmp_path):
    path = tmp_path / "out.csv"
    write_csv(path, ["a", "b", "c"], [[1, 0.5, True], [2, -1.0 / 3.0, False]])
    data = path.read_bytes()
    assert b"\r" not in data
    lines = data.decode().splitlines()
    assert lines[0] == "a,b,c"
    assert lines[1].startswith("1,5.0000000000000000e-01,true")
    # floats round-trip exactly
    assert float(lines[2].split(",")[1]) == -1.0 / 3.0


def test_write_json_format(tmp_path):
    path = tmp_path / "out.json"
    write_json(path, {"b": 1, "a": np.float64(0.25), "z": (1, 2)})
    text = path.read_text()
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"a": 0.25, "b": 1, "z": [1, 2]}


def test_max_workers_env(monkeypatch):
    monkeypatch.setenv("LWLAB_THREADS", "3")
    assert max_workers() == 3
    monkeypatch.setenv("LWLAB_THREADS", "not-a-number")
    assert max_workers() >= 1
    monkeypatch.delenv("LWLAB_THREADS")
    assert max_workers() >= 1


def test_snapshot_mass_conservation(cfg):
    h = default_perturbation(0.5, "positive")
    snaps = snapshot_run(cfg, h, [0, 1, 2, 50])
    from lwlab import excess_mass, step_shock

    base = step_shock(cfg)
    m = [excess_mass(s, base) for s in snaps]
    assert max(abs(v - m[0]) for v in m) <= 1e-13


def test_fit_loglog_too_few_points():
    slope, r2 = _fit_loglog([1, 2], [1.0, 0.5])
    assert math.isnan(slope)
