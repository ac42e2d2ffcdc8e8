import json

from click.testing import CliRunner

from lwlab.cli import main


def _run(args):
    return CliRunner().invoke(main, args, catch_exceptions=False)


def test_profile_command(tmp_path):
    res = _run(["profile", "--output-dir", str(tmp_path),
                "--theta-count", "5", "--theta-min", "-1", "--theta-max", "1"])
    assert res.exit_code == 0
    assert (tmp_path / "profile_family.csv").exists()
    assert (tmp_path / "profile.csv").exists()
    assert (tmp_path / "profile_family.png").exists()
    summary = json.loads((tmp_path / "profile.json").read_text())
    assert summary["max_family_residual"] <= 1e-10
    assert "wrote" in res.output


def test_spectrum_stable(tmp_path):
    res = _run(["spectrum", "--output-dir", str(tmp_path)])
    assert res.exit_code == 0
    summary = json.loads((tmp_path / "spectrum.json").read_text())
    assert summary["verdict"] == "spectrally_stable"
    assert summary["zero_count"] == 0
    assert "spectrally_stable" in res.output


def test_spectrum_auto_unstable(tmp_path):
    res = _run(["spectrum", "--output-dir", str(tmp_path),
                "--alpha-l", "0.3333333333333333",
                "--alpha-r", "-0.6666666666666666",
                "--alpha-m", "auto-unstable", "--z0", "2.0"])
    assert res.exit_code == 0
    summary = json.loads((tmp_path / "spectrum.json").read_text())
    assert summary["verdict"] == "unstable"
    assert summary["zero_count"] >= 1
    assert summary["abs_delta_at_z0"] <= 1e-10


def test_green_command(tmp_path):
    res = _run(["green", "--output-dir", str(tmp_path), "--j0", "2",
                "--n", "12"])
    assert res.exit_code == 0
    summary = json.loads((tmp_path / "green.json").read_text())
    assert summary["support"] == [2 - 12, 2 + 12]
    assert abs(summary["final_row_sum"] - 1.0) <= 1e-13


def test_green_outputs_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        res = _run(["green", "--output-dir", str(d), "--n", "10"])
        assert res.exit_code == 0
    assert (a / "green_field.csv").read_bytes() == \
        (b / "green_field.csv").read_bytes()


def test_activation_command(tmp_path):
    res = _run(["activation", "--output-dir", str(tmp_path), "--y", "16",
                "--x-min", "-10", "--x-max", "10", "--x-step", "1"])
    assert res.exit_code == 0
    summary = json.loads((tmp_path / "activation.json").read_text())
    assert 0.9 < summary["sup_abs"] < 1.5


def test_decay_command(tmp_path):
    res = _run(["decay", "--output-dir", str(tmp_path), "--n-max", "64",
                "--perturbation", "spikes"])
    assert res.exit_code == 0
    assert "fitted exponent" in res.output
    summary = json.loads((tmp_path / "decay.json").read_text())
    assert set(summary["reports"]) == {"one", "infinity"}


def test_simulate_command(tmp_path):
    res = _run(["simulate", "--output-dir", str(tmp_path), "--n", "600"])
    assert res.exit_code == 0
    assert "converged: True" in res.output
    report = json.loads((tmp_path / "stability_report.json").read_text())
    assert report["report"]["mass_drift"] <= 1e-10
    assert (tmp_path / "snapshot_000000.csv").exists()


def test_verify_bounds_command(tmp_path):
    res = _run(["verify-bounds", "--output-dir", str(tmp_path),
                "--n-max", "24"])
    assert res.exit_code == 0
    summary = json.loads((tmp_path / "bound_report.json").read_text())
    assert summary["passed"] is True


def test_unknown_command_exits_2():
    res = CliRunner().invoke(main, ["frobnicate"])
    assert res.exit_code == 2


def test_library_error_exits_2(tmp_path):
    # states that violate the jump condition are a usage error
    res = _run(["profile", "--output-dir", str(tmp_path), "--u-r", "-0.4"])
    assert res.exit_code == 2
    assert "error:" in res.output
