"""Decay-rate measurements, nonlinear stability runs and report serialization.

Reports are plain frozen dataclasses; every run is deterministic given its
inputs.  Exponent fits are least squares of log-norm against log-n on the
upper half of a geometric time grid, with the R^2 of the fit reported.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass

import numpy as np

from .errors import NonzeroMass
from .model import (
    GridFunction,
    ShockConfig,
    dirac,
    excess_mass,
    weighted_norm,
)
from .profiles import profile_with_mass
from .scheme import (
    apply_id_minus_shift,
    apply_linear,
    step_nonlinear,
    step_shock,
)

__all__ = [
    "DecayReport",
    "StabilityReport",
    "default_perturbation",
    "heavy_tail_perturbation",
    "measure_semigroup_decay",
    "run_orbital_stability",
    "reproduce_profile_family",
    "snapshot_run",
    "write_csv",
    "write_json",
    "max_workers",
]


@dataclass(frozen=True)
class DecayReport:
    gamma1: float
    gamma2: float
    norm_kind: str
    n_values: tuple
    norms: tuple
    fitted_exponent: float  # slope of log-norm vs log-n (negative = decay)
    theory_exponent: float
    fit_r2: float


@dataclass(frozen=True)
class StabilityReport:
    theta: float
    beta: float
    sigma: float
    n_values: tuple
    l1_beta_norms: tuple
    linf_beta_norms: tuple
    mass_drift: float
    converged: bool
    converged_at: int
    fitted_linf_exponent: float


def default_perturbation(gamma: float, mass: str = "zero",
                         size: float = 0.01) -> GridFunction:
    """Two-spike test datum, one wave per side of the shock.

    ``mass`` selects opposite ("zero") or equal ("positive") spike signs;
    the amplitude is scaled so the weighted l1 norm equals ``size``.
    """
    if mass not in ("zero", "positive"):
        raise ValueError(f"mass must be 'zero' or 'positive', got {mass!r}")
    j1, j2 = -20, 30
    sign = -1.0 if mass == "zero" else 1.0
    vals = np.zeros(j2 - j1 + 1)
    vals[0], vals[-1] = 1.0, sign
    h = GridFunction(j1, vals)
    return GridFunction(j1, vals * (size / weighted_norm(h, gamma, "one")))


def heavy_tail_perturbation(gamma: float, half_width: int,
                            power: float = 2.5,
                            size: float = 0.01) -> GridFunction:
    """Odd datum with |j|^-power tails, the regime where decay laws bind.

    Compactly supported data are absorbed by the shock exponentially fast;
    polynomial semigroup rates only show on data whose weighted l1 norm is
    dominated by slowly decaying tails.  Requires power > gamma + 1 so the
    norm is finite as the window grows.
    """
    if power <= gamma + 1.0:
        raise ValueError("power must exceed gamma + 1 for a finite norm")
    j = np.arange(-half_width, half_width + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.sign(j) * np.abs(j).astype(float) ** -power
    vals[half_width] = 0.0  # center cell; oddness gives exactly zero mass
    h = GridFunction(-half_width, vals)
    return GridFunction(-half_width,
                        vals * (size / weighted_norm(h, gamma, "one")))


def _geometric_times(n_max: int):
    ns = [1]
    while ns[-1] * 2 <= n_max:
        ns.append(ns[-1] * 2)
    if ns[-1] != n_max:
        ns.append(n_max)
    return ns


def _fit_loglog(ns, norms):
    """Slope and R^2 over the upper half of the geometric range."""
    ns = np.asarray(ns, dtype=float)
    norms = np.asarray(norms, dtype=float)
    keep = (ns >= math.sqrt(ns[0] * ns[-1])) & (norms > 0)
    if np.count_nonzero(keep) < 3:
        return math.nan, 0.0
    x, y = np.log(ns[keep]), np.log(norms[keep])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), r2


def _theory_slope(kind: str, gamma1: float, gamma2: float,
                  with_shift: bool) -> float:
    d = gamma2 - gamma1
    if not with_shift:
        if kind == "one":
            return -(d - 1.0 / 8.0)
        return -(d + min(1.0 / 3.0, gamma1))
    if kind == "one":
        return -(d + 1.0 / 8.0)
    return -(d + 1.0 / 3.0 + min(0.25, gamma1))


def measure_semigroup_decay(cfg: ShockConfig, h: GridFunction, gamma1: float,
                            gamma2: float, n_max: int,
                            with_shift: bool = False,
                            kind: str = "full_shock") -> dict:
    """Weighted-norm histories of the linear semigroup applied to h.

    Returns one report per norm ("one" and "infinity").  Without the shift
    composition the datum must have zero mass for the full-shock operator,
    since the decay laws fail on the mass carried by the kernel direction.
    """
    if n_max < 8:
        raise ValueError("n_max must be at least 8")
    weighted_norm(h, gamma2, "one")  # raises if the datum is inadmissible
    if kind == "full_shock" and not with_shift:
        total = float(np.sum(h.values))
        if abs(total) > 1e-12:
            raise NonzeroMass(f"datum carries mass {total!r}")
    w = apply_id_minus_shift(h) if with_shift else h
    times = _geometric_times(n_max)
    history = {"one": [], "infinity": []}
    step = 0
    for n in times:
        while step < n:
            w = apply_linear(kind, cfg, w)
            step += 1
        for q in ("one", "infinity"):
            history[q].append(weighted_norm(w, gamma1, q))
    out = {}
    for q in ("one", "infinity"):
        slope, r2 = _fit_loglog(times, history[q])
        out[q] = DecayReport(
            gamma1=gamma1, gamma2=gamma2, norm_kind=q,
            n_values=tuple(times), norms=tuple(history[q]),
            fitted_exponent=slope,
            theory_exponent=_theory_slope(q, gamma1, gamma2, with_shift),
            fit_r2=r2,
        )
    return out


def run_orbital_stability(cfg: ShockConfig, h: GridFunction, beta: float,
                          sigma: float, n_max: int) -> StabilityReport:
    """Evolve the perturbed shock and track distance to the mass-selected profile."""
    if beta + sigma < 5.0 / 12.0 - 1e-12:
        raise ValueError("beta + sigma must be at least 5/12")
    if not (0.0 <= sigma < beta + 1.0 / 8.0):
        raise ValueError("sigma must satisfy 0 <= sigma < beta + 1/8")
    theta = float(np.sum(h.values))
    target = profile_with_mass(cfg, theta)
    base = step_shock(cfg)
    lo = min(base.j_min, h.j_min)
    hi = max(base.j_max, h.j_max)
    u = GridFunction(lo, base.padded(lo, hi) + h.padded(lo, hi),
                     tail_left=cfg.u_l, tail_right=cfg.u_r)
    m0 = excess_mass(u, base)
    scale = max(abs(m0), weighted_norm(h, 0.0, "one"))

    times = _geometric_times(n_max)
    l1, linf, recorded = [], [], []
    drift = 0.0
    converged, converged_at = False, -1
    step = 0
    for n in times:
        while step < n:
            u = step_nonlinear(cfg, u)
            step += 1
        drift = max(drift, abs(excess_mass(u, base) - m0) / scale)
        p = GridFunction(
            u.j_min,
            u.values - target.grid.padded(u.j_min, u.j_max),
        )
        l1.append(weighted_norm(p, beta, "one"))
        sup = weighted_norm(p, beta, "infinity")
        linf.append(sup)
        recorded.append(n)
        if sup < 1e-6 and not converged:
            converged, converged_at = True, n
            break
    slope, _ = _fit_loglog(recorded, linf)
    return StabilityReport(
        theta=theta, beta=beta, sigma=sigma,
        n_values=tuple(recorded), l1_beta_norms=tuple(l1),
        linf_beta_norms=tuple(linf), mass_drift=drift,
        converged=converged, converged_at=converged_at,
        fitted_linf_exponent=slope,
    )


def reproduce_profile_family(cfg: ShockConfig, theta_grid) -> list:
    """Table of (theta, v0, v1, residual) along the profile family."""
    rows = []
    for theta in theta_grid:
        p = profile_with_mass(cfg, float(theta))
        rows.append({
            "theta": float(theta),
            "v0": float(p.grid.at(0).real),
            "v1": float(p.grid.at(1).real),
            "residual": p.residual,
        })
    return rows


def snapshot_run(cfg: ShockConfig, h: GridFunction, snapshot_times) -> list:
    """Solution states at the requested times, trimmed of converged tails."""
    snapshot_times = list(snapshot_times)
    if snapshot_times != sorted(snapshot_times):
        raise ValueError("snapshot times must be sorted")
    base = step_shock(cfg)
    lo = min(base.j_min, h.j_min)
    hi = max(base.j_max, h.j_max)
    u = GridFunction(lo, base.padded(lo, hi) + h.padded(lo, hi),
                     tail_left=cfg.u_l, tail_right=cfg.u_r)
    out = []
    step = 0
    for n in snapshot_times:
        while step < n:
            u = step_nonlinear(cfg, u)
            step += 1
        out.append(u.trimmed(1e-14))
    return out


# --- serialization ------------------------------------------------------------


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "%.16e" % float(x)  # 17 significant digits
    return str(x)


def write_csv(path, header, rows):
    """Comma-separated output, one header row, LF endings, lossless floats."""
    with open(path, "w", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(_fmt(v) for v in row) + "\n")


def _jsonable(obj):
    if isinstance(obj, (DecayReport, StabilityReport)):
        return _jsonable(asdict(obj))
    if hasattr(obj, "__dataclass_fields__"):
        return _jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def write_json(path, obj):
    with open(path, "w", newline="\n") as f:
        json.dump(_jsonable(obj), f, indent=2, sort_keys=True)
        f.write("\n")


def max_workers() -> int:
    """Parallelism cap for independent report computations."""
    raw = os.environ.get("LWLAB_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return max(1, n) if n > 0 else max(1, os.cpu_count() or 1)
