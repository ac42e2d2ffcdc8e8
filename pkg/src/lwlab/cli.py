"""Command-line front end exposing the experiments as subcommands.

Every invocation writes machine-readable CSV/JSON artifacts plus rendered
figures into the output directory, echoes the artifact paths, and exits 0
on success, 1 when a verified criterion fails, 2 on any usage or library
error.  Identical command lines produce byte-identical CSV output.
"""

from __future__ import annotations

import functools
import math
import sys
from pathlib import Path

import click
import numpy as np

from . import figures
from .asymptotics import (
    KernelCoeffs,
    activation_table,
    check_thmA3,
    check_thmA4,
)
from .errors import LwLabError
from .experiments import (
    default_perturbation,
    heavy_tail_perturbation,
    measure_semigroup_decay,
    reproduce_profile_family,
    run_orbital_stability,
    snapshot_run,
    write_csv,
    write_json,
)
from .greens import temporal_green, derivative_green, verify_derivative_bounds, verify_green_bounds
from .model import SpectralParams, burgers_flux, make_shock_config
from .profiles import profile_with_mass
from .spectral import alpha_m_for_delta_zero, count_zeros, lopatinskii
from .experiments import max_workers  # noqa: F401  (resolved thread cap in summaries)


def _config_options(fn):
    @click.option("--u-l", "u_l", type=float, default=0.5, show_default=True,
                  help="Left end state.")
    @click.option("--u-r", "u_r", type=float, default=-0.5, show_default=True,
                  help="Right end state.")
    @click.option("--lam", type=float, default=0.5, show_default=True,
                  help="Time step over space step.")
    @click.option("--output-dir", type=click.Path(file_okay=False),
                  default=".", show_default=True,
                  help="Directory receiving all artifacts.")
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        return fn(*args, **kwargs)

    return wrapper


def _setup(u_l, u_r, lam, output_dir):
    cfg = make_shock_config(burgers_flux(), u_l, u_r, lam)
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return cfg, out


def _config_dict(cfg):
    return {
        "flux": cfg.flux.label,
        "u_l": cfg.u_l,
        "u_r": cfg.u_r,
        "lam": cfg.lam,
        "alpha_l": cfg.alpha_l,
        "alpha_r": cfg.alpha_r,
        "alpha_m": cfg.alpha_m,
        "threads": max_workers(),
    }


def _execute(fn):
    try:
        code = fn()
    except LwLabError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    sys.exit(int(code or 0))


def _announce(*paths):
    for p in paths:
        click.echo(f"wrote {p}")


@click.group()
def main():
    """Numerical laboratory for the Lax-Wendroff scheme at a stationary shock."""


@main.command()
@_config_options
@click.option("--theta", type=float, default=0.5, show_default=True,
              help="Excess mass of the highlighted profile.")
@click.option("--theta-min", type=float, default=-2.0, show_default=True)
@click.option("--theta-max", type=float, default=2.0, show_default=True)
@click.option("--theta-count", type=int, default=41, show_default=True)
def profile(u_l, u_r, lam, output_dir, theta, theta_min, theta_max,
            theta_count):
    """Discrete shock profile family: interface values and one full profile."""

    def run():
        cfg, out = _setup(u_l, u_r, lam, output_dir)
        grid = np.linspace(theta_min, theta_max, theta_count)
        rows = reproduce_profile_family(cfg, grid)
        p = profile_with_mass(cfg, theta)
        family_csv = out / "profile_family.csv"
        write_csv(family_csv, ["theta", "v0", "v1", "residual"],
                  [(r["theta"], r["v0"], r["v1"], r["residual"])
                   for r in rows])
        prof_csv = out / "profile.csv"
        write_csv(prof_csv, ["j", "value"],
                  list(zip(p.grid.indices, p.grid.values.real)))
        summary = out / "profile.json"
        write_json(summary, {
            "config": _config_dict(cfg),
            "theta": theta,
            "residual": p.residual,
            "theta_grid": [theta_min, theta_max, theta_count],
            "max_family_residual": max(r["residual"] for r in rows),
        })
        fam_png = out / "profile_family.png"
        prof_png = out / "profile.png"
        figures.save_profile_family(rows, fam_png)
        figures.save_grid_function(p.grid, prof_png, label="profile value")
        _announce(family_csv, prof_csv, summary, fam_png, prof_png)

    _execute(run)


@main.command()
@_config_options
@click.option("--alpha-l", "alpha_l", type=float, default=None,
              help="Override the left Courant number.")
@click.option("--alpha-r", "alpha_r", type=float, default=None,
              help="Override the right Courant number.")
@click.option("--alpha-m", "alpha_m", type=str, default=None,
              help="Middle Courant number, or 'auto-unstable' to place a "
                   "determinant zero at --z0.")
@click.option("--z0", type=float, default=2.0, show_default=True,
              help="Target zero location for --alpha-m auto-unstable.")
@click.option("--r-outer", type=float, default=None,
              help="Outer scan radius [default: 1.5, widened to enclose z0 "
                   "in auto-unstable mode].")
def spectrum(u_l, u_r, lam, output_dir, alpha_l, alpha_r, alpha_m, z0,
             r_outer):
    """Determinant zero count on the near-unit annulus and verdict."""

    def run():
        cfg, out = _setup(u_l, u_r, lam, output_dir)
        al = cfg.alpha_l if alpha_l is None else alpha_l
        ar = cfg.alpha_r if alpha_r is None else alpha_r
        if alpha_m is None:
            am = cfg.alpha_m
        elif alpha_m == "auto-unstable":
            am = complex(alpha_m_for_delta_zero(al, ar, z0)).real
        else:
            am = float(alpha_m)
        params = SpectralParams(al, ar, am)
        radius = r_outer
        if radius is None:
            radius = 1.5
            if alpha_m == "auto-unstable":
                radius = min(2.5, abs(z0) + 0.2)
        scan = count_zeros(params, r_outer=radius)
        scan_csv = out / "spectrum.csv"
        write_csv(scan_csv, ["z_re", "z_im", "delta_re", "delta_im"],
                  list(zip(scan.contour.real, scan.contour.imag,
                           scan.delta_values.real, scan.delta_values.imag)))
        summary = out / "spectrum.json"
        write_json(summary, {
            "config": _config_dict(cfg),
            "alpha_l": al, "alpha_r": ar, "alpha_m": am,
            "r_outer": radius,
            "exclusion_radius": scan.exclusion_radius,
            "zero_count": scan.zero_count,
            "verdict": scan.verdict,
            "abs_delta_at_z0": abs(lopatinskii(params, z0)),
        })
        png = out / "spectrum.png"
        figures.save_determinant_image(scan, png)
        _announce(scan_csv, summary, png)
        click.echo(f"verdict: {scan.verdict} ({scan.zero_count} zeros)")

    _execute(run)


_CLI_KINDS = {"full": "full_shock", "free-left": "free_left",
              "free-right": "free_right", "derivative": "derivative"}


@main.command()
@_config_options
@click.option("--j0", type=int, default=1, show_default=True,
              help="Source index of the unit impulse.")
@click.option("--n", type=int, default=64, show_default=True,
              help="Number of time steps.")
@click.option("--kind", type=click.Choice(sorted(_CLI_KINDS)),
              default="full", show_default=True)
def green(u_l, u_r, lam, output_dir, j0, n, kind):
    """Temporal Green's function field by exact iteration."""

    def run():
        cfg, out = _setup(u_l, u_r, lam, output_dir)
        if kind == "derivative":
            field = derivative_green(cfg, j0, n)
        else:
            field = temporal_green(_CLI_KINDS[kind], cfg, j0, n)
        field_csv = out / "green_field.csv"
        write_csv(field_csv, ["n", "j", "value"],
                  [(m, j, v) for m, row in enumerate(field.rows)
                   for j, v in zip(row.indices, row.values.real)])
        last = field.rows[-1]
        row_csv = out / "green_row.csv"
        write_csv(row_csv, ["j", "value"],
                  list(zip(last.indices, last.values.real)))
        summary = out / "green.json"
        write_json(summary, {
            "config": _config_dict(cfg),
            "j0": j0, "n": n, "kind": field.kind,
            "final_row_sum": float(np.sum(last.values.real)),
            "support": [int(last.j_min), int(last.j_max)],
        })
        png = out / "green.png"
        figures.save_field_heatmap(field, png)
        _announce(field_csv, row_csv, summary, png)

    _execute(run)


@main.command()
@_config_options
@click.option("--side", type=click.Choice(["left", "right"]),
              default="right", show_default=True)
@click.option("--y", type=float, default=64.0, show_default=True,
              help="Time-like argument of the activation function.")
@click.option("--x-min", type=float, default=-40.0, show_default=True)
@click.option("--x-max", type=float, default=40.0, show_default=True)
@click.option("--x-step", type=float, default=0.5, show_default=True)
def activation(u_l, u_r, lam, output_dir, side, y, x_min, x_max, x_step):
    """Activation (mass primitive of the dispersive kernel) on an x grid."""

    def run():
        cfg, out = _setup(u_l, u_r, lam, output_dir)
        alpha = cfg.alpha_l if side == "left" else cfg.alpha_r
        coeffs = KernelCoeffs.from_alpha(alpha)
        xs = np.arange(x_min, x_max + 0.5 * x_step, x_step)
        vals = activation_table(coeffs, xs, y)
        csv = out / "activation.csv"
        write_csv(csv, ["x", "value"], list(zip(xs, vals)))
        summary = out / "activation.json"
        write_json(summary, {
            "config": _config_dict(cfg),
            "side": side, "y": y,
            "c3": coeffs.c3, "c4": coeffs.c4,
            "sup_abs": float(np.max(np.abs(vals))),
        })
        png = out / "activation.png"
        figures.save_curve(xs, vals, png, xlabel="$x$",
                           ylabel=f"activation ({side}, y={y:g})")
        _announce(csv, summary, png)

    _execute(run)


@main.command()
@_config_options
@click.option("--gamma1", type=float, default=0.0, show_default=True)
@click.option("--gamma2", type=float, default=1.0, show_default=True)
@click.option("--n-max", type=int, default=2048, show_default=True)
@click.option("--with-shift", is_flag=True,
              help="Compose with (Id - shift) before iterating.")
@click.option("--kind", type=click.Choice(["full", "free-left", "free-right"]),
              default="full", show_default=True)
@click.option("--perturbation",
              type=click.Choice(["heavy-tail", "spikes"]),
              default="heavy-tail", show_default=True,
              help="heavy-tail: odd polynomial-tail datum on which the "
                   "decay laws bind; spikes: two-spike compact datum.")
def decay(u_l, u_r, lam, output_dir, gamma1, gamma2, n_max, with_shift,
          kind, perturbation):
    """Semigroup decay rates in weighted norms (log-log exponent fits)."""

    def run():
        cfg, out = _setup(u_l, u_r, lam, output_dir)
        if perturbation == "heavy-tail":
            h = heavy_tail_perturbation(gamma2, half_width=4 * n_max,
                                        power=gamma2 + 1.1)
        else:
            h = default_perturbation(gamma2, mass="zero")
        reports = measure_semigroup_decay(cfg, h, gamma1, gamma2, n_max,
                                          with_shift=with_shift,
                                          kind=_CLI_KINDS[kind])
        csv = out / "decay.csv"
        write_csv(csv, ["n", "l1_norm", "linf_norm"],
                  list(zip(reports["one"].n_values, reports["one"].norms,
                           reports["infinity"].norms)))
        summary = out / "decay.json"
        write_json(summary, {
            "config": _config_dict(cfg),
            "gamma1": gamma1, "gamma2": gamma2, "n_max": n_max,
            "with_shift": with_shift, "kind": kind,
            "perturbation": perturbation,
            "reports": reports,
        })
        png = out / "decay.png"
        figures.save_loglog(
            reports["one"].n_values,
            {"l1 weighted": reports["one"].norms,
             "sup weighted": reports["infinity"].norms},
            png,
        )
        _announce(csv, summary, png)
        for q in ("one", "infinity"):
            r = reports[q]
            click.echo(
                f"{q}: fitted exponent {r.fitted_exponent:+.4f} "
                f"(theory {r.theory_exponent:+.4f}, R^2 {r.fit_r2:.4f})"
            )

    _execute(run)


@main.command()
@_config_options
@click.option("--mass", type=click.Choice(["zero", "positive"]),
              default="zero", show_default=True)
@click.option("--n", type=int, default=2000, show_default=True)
@click.option("--beta", type=float, default=0.3, show_default=True)
@click.option("--sigma", type=float, default=0.12, show_default=True)
def simulate(u_l, u_r, lam, output_dir, mass, n, beta, sigma):
    """Nonlinear run of the perturbed shock and orbital-stability report."""

    def run():
        cfg, out = _setup(u_l, u_r, lam, output_dir)
        gamma = beta + sigma + 0.125
        h = default_perturbation(gamma, mass=mass)
        report = run_orbital_stability(cfg, h, beta, sigma, n)
        csv = out / "simulate.csv"
        write_csv(csv, ["n", "l1_beta_norm", "linf_beta_norm"],
                  list(zip(report.n_values, report.l1_beta_norms,
                           report.linf_beta_norms)))
        times = sorted({0, min(n, 10), min(n, 100), report.n_values[-1]})
        paths = []
        for t, state in zip(times, snapshot_run(cfg, h, times)):
            p = out / f"snapshot_{t:06d}.csv"
            write_csv(p, ["j", "value"],
                      list(zip(state.indices, state.values.real)))
            paths.append(p)
        summary = out / "stability_report.json"
        write_json(summary, {"config": _config_dict(cfg), "report": report})
        png = out / "simulate.png"
        figures.save_loglog(
            report.n_values,
            {"l1 weighted": report.l1_beta_norms,
             "sup weighted": report.linf_beta_norms},
            png,
        )
        _announce(csv, *paths, summary, png)
        click.echo(
            f"converged: {report.converged} (at n={report.converged_at}), "
            f"mass drift {report.mass_drift:.3e}"
        )

    _execute(run)


@main.command(name="verify-bounds")
@_config_options
@click.option("--suite",
              type=click.Choice(["greens", "derivative", "kernel"]),
              default="greens", show_default=True,
              help="greens/derivative: envelope bounds of the shock Green's "
                   "function; kernel: free-kernel and primitive bounds.")
@click.option("--n-max", type=int, default=256, show_default=True)
@click.option("--c", type=float, default=0.05, show_default=True,
              help="Decay rate used inside the envelopes.")
def verify_bounds(u_l, u_r, lam, output_dir, suite, n_max, c):
    """Fit the envelope-bound constants empirically; exit 1 if unbounded."""

    def run():
        cfg, out = _setup(u_l, u_r, lam, output_dir)
        if suite == "greens":
            report = verify_green_bounds(cfg, n_max, c=c)
            payload = {"greens": report}
        elif suite == "derivative":
            report = verify_derivative_bounds(cfg, n_max, c=c)
            payload = {"derivative": report}
        else:
            payload = {
                "left": check_thmA3(KernelCoeffs.from_alpha(cfg.alpha_l)),
                "right": check_thmA3(KernelCoeffs.from_alpha(cfg.alpha_r)),
            }
        constants = []
        for item in payload.values():
            if isinstance(item, dict):
                constants.extend(r.fitted_C for r in item.values())
            else:
                constants.append(item.fitted_C)
        passed = all(math.isfinite(v) for v in constants)
        summary = out / "bound_report.json"
        write_json(summary, {
            "config": _config_dict(cfg),
            "suite": suite, "n_max": n_max, "c": c,
            "fitted_constants": constants,
            "passed": passed,
            "report": payload,
        })
        _announce(summary)
        click.echo(f"max fitted constant: {max(constants):.6g} "
                   f"({'pass' if passed else 'FAIL'})")
        return 0 if passed else 1

    _execute(run)


if __name__ == "__main__":
    main()
