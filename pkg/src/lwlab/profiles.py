"""Discrete shock profiles by shooting plus bisection on the excess mass.

A stationary profile satisfies the interface equation F(v_j, v_{j+1}) = f(u_l)
for every j, where F is the two-point numerical flux.  Given an anchor value
v_0, the profile is continued cell by cell with a scalar Newton solve per
interface; the one-parameter family is then parametrized by the excess mass
relative to the step shock, located by bisection on the anchor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace as _replace

import numpy as np

from .errors import (
    BranchEscape,
    InsufficientTail,
    MassOutOfRange,
    NewtonDivergence,
)
from .model import GridFunction, ShockConfig, excess_mass
from .scheme import numerical_flux, flux_partials, step_shock

__all__ = ["Profile", "shoot_profile", "profile_with_mass", "fit_decay_rate"]

_NEWTON_TOL = 1e-14
_NEWTON_MAX_ITER = 50


@dataclass(frozen=True)
class Profile:
    grid: GridFunction
    theta: float
    anchor: float
    residual: float
    decay_rate: float = math.nan


def _solve_interface(cfg: ShockConfig, known, target, start, lo, hi, slot):
    """Newton for the unknown slot of F(u, v) = target.

    ``slot`` is "v" (rightward continuation, u known) or "u" (leftward).
    """
    w = start
    for _ in range(_NEWTON_MAX_ITER):
        if slot == "v":
            g = numerical_flux(cfg, known, w) - target
            dg = flux_partials(cfg, known, w)[1]
        else:
            g = numerical_flux(cfg, w, known) - target
            dg = flux_partials(cfg, w, known)[0]
        if dg == 0.0:
            raise NewtonDivergence(
                f"zero derivative at iterate {w!r}", last_iterate=w
            )
        step = g / dg
        w = w - step
        if not (lo <= w <= hi):
            raise BranchEscape(
                f"interface solve left the admissible band [{lo!r}, {hi!r}] "
                f"at iterate {w!r}"
            )
        if abs(step) <= _NEWTON_TOL * max(1.0, abs(w)):
            return w
    raise NewtonDivergence(
        f"no convergence after {_NEWTON_MAX_ITER} iterations, last iterate {w!r}",
        last_iterate=w,
    )


def shoot_profile(cfg: ShockConfig, anchor: float, J: int = 200) -> GridFunction:
    """Continue v_0 = anchor both ways until the tails flatten or |j| = J."""
    if J < 10:
        raise ValueError("J must be at least 10")
    lo = min(cfg.u_l, cfg.u_r) - 1.0
    hi = max(cfg.u_l, cfg.u_r) + 1.0
    if not (min(cfg.u_l, cfg.u_r) < anchor < max(cfg.u_l, cfg.u_r)):
        raise ValueError(
            f"anchor {anchor!r} must lie strictly between the end states"
        )
    target = cfg.flux.eval(cfg.u_l)

    right = [anchor]
    for _ in range(J):
        prev = right[-1]
        if abs(prev - cfg.u_r) < 1e-14:
            break
        # start the solve at the right state: pushing all the way past the
        # sonic point (where the flux partial vanishes) selects the branch
        # that spirals into u_r
        right.append(_solve_interface(cfg, prev, target, cfg.u_r, lo, hi, "v"))
    left = [anchor]
    for _ in range(J):
        prev = left[-1]
        if abs(prev - cfg.u_l) < 1e-14:
            break
        left.append(_solve_interface(cfg, prev, target, cfg.u_l, lo, hi, "u"))

    vals = np.array(left[::-1] + right[1:], dtype=float)
    return GridFunction(
        -(len(left) - 1), vals, tail_left=cfg.u_l, tail_right=cfg.u_r
    )


def _stationarity_residual(cfg: ShockConfig, g: GridFunction) -> float:
    target = cfg.flux.eval(cfg.u_l)
    v = g.padded(g.j_min - 1, g.j_max + 1)
    return float(np.max(np.abs(numerical_flux(cfg, v[:-1], v[1:]) - target)))


def _mass_of_anchor(cfg: ShockConfig, anchor: float, J: int):
    g = shoot_profile(cfg, anchor, J)
    return excess_mass(g, step_shock(cfg)), g


def profile_with_mass(cfg: ShockConfig, theta: float, J: int = 200) -> Profile:
    """Family member with prescribed excess mass relative to the step shock.

    theta is reduced modulo integer translations (each shift is worth
    u_l - u_r of mass); the in-cell representative is found by bisection on
    the anchor value v_0 in (u_r, u_l).
    """
    m = cfg.u_l - cfg.u_r
    k = math.ceil(theta / m - 1e-12)
    rem = theta - k * m  # representative in (-m, 0]

    if abs(rem) <= 1e-12:
        grid = step_shock(cfg).translate(k)
        return Profile(
            grid=grid,
            theta=theta,
            anchor=cfg.u_l,
            residual=_stationarity_residual(cfg, grid),
        )

    eps = 1e-9 * m
    a_lo, a_hi = cfg.u_r + eps, cfg.u_l - eps
    m_lo, g_lo = _mass_of_anchor(cfg, a_lo, J)
    m_hi, g_hi = _mass_of_anchor(cfg, a_hi, J)
    if not (m_lo <= rem <= m_hi):
        lo = min(m_lo, m_hi) + k * m
        hi = max(m_lo, m_hi) + k * m
        raise MassOutOfRange(theta, lo, hi)

    # monotone mass-vs-anchor bisection
    prev_mass = m_lo
    for a in np.linspace(a_lo, a_hi, 9)[1:]:
        mm, _ = _mass_of_anchor(cfg, a, J)
        if mm < prev_mass - 1e-9:
            raise MassOutOfRange(theta, m_lo + k * m, m_hi + k * m)
        prev_mass = mm
    lo_a, hi_a = a_lo, a_hi
    anchor, grid, mass = a_lo, g_lo, m_lo
    for _ in range(200):
        mid = 0.5 * (lo_a + hi_a)
        mass, grid = _mass_of_anchor(cfg, mid, J)
        anchor = mid
        if abs(mass - rem) <= 1e-12:
            break
        if mass < rem:
            lo_a = mid
        else:
            hi_a = mid
        if hi_a - lo_a <= 1e-16 * max(1.0, abs(hi_a)):
            break
    if abs(mass - rem) > 1e-8:
        raise MassOutOfRange(theta, m_lo + k * m, m_hi + k * m)

    grid = grid.translate(k)
    return Profile(
        grid=grid,
        theta=theta,
        anchor=anchor,
        residual=_stationarity_residual(cfg, grid),
    )


def fit_decay_rate(p: Profile) -> Profile:
    """Least-squares exponential tail rate; returns the profile with it stored.

    The rate is the smaller of the two one-sided slopes of log|v_j - tail|
    against |j|; a profile already at machine-zero tails reports +inf.
    """
    g = p.grid
    if min(-g.j_min, g.j_max) < 20:
        raise ValueError("window half-width must be at least 20")
    rates = []
    for side in ("left", "right"):
        if side == "left":
            js = -np.arange(1, -g.j_min + 1)
            tail = g.tail_left
        else:
            js = np.arange(2, g.j_max + 1)
            tail = g.tail_right
        dev = np.abs(g.at(js) - tail)
        keep = dev > 1e-13
        if np.count_nonzero(keep) == 0:
            rates.append(math.inf)
            continue
        if np.count_nonzero(keep) < 5:
            raise InsufficientTail(
                f"only {np.count_nonzero(keep)} usable tail points on the "
                f"{side} side"
            )
        x = np.abs(js[keep]).astype(float)
        slope = np.polyfit(x, np.log(dev[keep]), 1)[0]
        rates.append(-slope)
    return _replace(p, decay_rate=min(rates))
