"""The Lax-Wendroff step and its linearizations around the step shock.

All operators have a 3-point stencil, so one nonlinear/linear step grows the
window by exactly one cell on each side; constant tails are exact because the
flux differences vanish on constants.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from .errors import NonzeroTails
from .model import GridFunction, ShockConfig

if TYPE_CHECKING:
    from .profiles import Profile

__all__ = [
    "numerical_flux",
    "flux_partials",
    "step_nonlinear",
    "apply_linear",
    "nonlinear_remainder",
    "apply_id_minus_shift",
    "step_shock",
]


def step_shock(cfg: ShockConfig, half_width: int = 1) -> GridFunction:
    """The piecewise-constant stationary shock: u_l for j <= 0, u_r for j >= 1."""
    w = max(1, half_width)
    vals = np.where(np.arange(-w, w + 1) <= 0, cfg.u_l, cfg.u_r).astype(float)
    return GridFunction(-w, vals, tail_left=cfg.u_l, tail_right=cfg.u_r)


def numerical_flux(cfg: ShockConfig, u, v):
    """Two-point flux whose conservative difference is the Lax-Wendroff step."""
    f, fp, lam = cfg.flux.eval, cfg.flux.deriv, cfg.lam
    fu, fv = f(u), f(v)
    return 0.5 * (fu + fv) - 0.5 * lam * fp(0.5 * (u + v)) * (fv - fu)


def flux_partials(cfg: ShockConfig, u, v):
    """Partial derivatives of the two-point flux with respect to each slot.

    Only f'' of the midpoint enters beyond f and f'; it comes from the flux
    itself when available, else from a centered difference of f'.
    """
    f, fp, lam = cfg.flux.eval, cfg.flux.deriv, cfg.lam
    m = 0.5 * (u + v)
    fu, fv = f(u), f(v)
    fpm, fppm = fp(m), cfg.flux.d2(m)
    d_u = 0.5 * fp(u) - 0.5 * lam * (0.5 * fppm * (fv - fu) - fpm * fp(u))
    d_v = 0.5 * fp(v) - 0.5 * lam * (0.5 * fppm * (fv - fu) + fpm * fp(v))
    return d_u, d_v


def step_nonlinear(cfg: ShockConfig, u: GridFunction) -> GridFunction:
    """One Lax-Wendroff step; the window grows by one cell on each side."""
    j_lo, j_hi = u.j_min - 1, u.j_max + 1
    w = u.padded(j_lo - 1, j_hi + 1)  # one ghost cell beyond the new window
    flux = numerical_flux(cfg, w[:-1], w[1:])  # interface j+1/2 for j in [j_lo-1, j_hi]
    out = w[1:-1] - cfg.lam * (flux[1:] - flux[:-1])
    return GridFunction(j_lo, out, tail_left=u.tail_left, tail_right=u.tail_right)


def _free_rows(alpha: float, w: np.ndarray) -> np.ndarray:
    """Constant-coefficient rows: w_j - a/2 (w_{j+1}-w_{j-1}) + a^2/2 (second diff)."""
    return (
        w[1:-1]
        - 0.5 * alpha * (w[2:] - w[:-2])
        + 0.5 * alpha * alpha * (w[2:] - 2.0 * w[1:-1] + w[:-2])
    )


def apply_linear(kind, cfg: ShockConfig, w: GridFunction) -> GridFunction:
    """Apply one of the linearized operators to a zero-tail sequence.

    ``kind`` is "full_shock", "free_left", "free_right", or a Profile
    instance (linearization of the scheme around that profile).
    """
    if not w.has_zero_tails():
        raise NonzeroTails("linear operators act on zero-tail sequences")
    j_lo, j_hi = w.j_min - 1, w.j_max + 1
    p = w.padded(j_lo - 1, j_hi + 1)
    js = np.arange(j_lo, j_hi + 1)

    if kind == "free_left":
        out = _free_rows(cfg.alpha_l, p)
    elif kind == "free_right":
        out = _free_rows(cfg.alpha_r, p)
    elif kind == "full_shock":
        al, ar, am = cfg.alpha_l, cfg.alpha_r, cfg.alpha_m
        out = np.where(js <= -1, _free_rows(al, p), _free_rows(ar, p))

        def wat(j):  # lattice value, zero outside the padded range
            i = j - (j_lo - 1)
            return p[i] if 0 <= i < p.size else 0.0

        # the two rows straddling the shock mix all three Courant numbers
        if j_lo <= 0 <= j_hi:
            out[0 - j_lo] = (
                wat(0)
                - 0.5 * (ar * wat(1) - al * wat(-1))
                + 0.5 * (ar * am * wat(1) - al * (al + am) * wat(0)
                         + al * al * wat(-1))
            )
        if j_lo <= 1 <= j_hi:
            out[1 - j_lo] = (
                wat(1)
                - 0.5 * (ar * wat(2) - al * wat(0))
                + 0.5 * (ar * ar * wat(2) - ar * (ar + am) * wat(1)
                         + al * am * wat(0))
            )
    else:
        # linearization around a given profile
        v = kind.grid
        vj = v.at(np.arange(j_lo - 1, j_hi + 2))
        du_r, dv_r = flux_partials(cfg, vj[1:-1], vj[2:])   # pair (v_j, v_{j+1})
        du_l, dv_l = flux_partials(cfg, vj[:-2], vj[1:-1])  # pair (v_{j-1}, v_j)
        out = (
            p[1:-1]
            - cfg.lam * (du_r * p[1:-1] + dv_r * p[2:])
            + cfg.lam * (du_l * p[:-2] + dv_l * p[1:-1])
        )
    return GridFunction(j_lo, out)


def nonlinear_remainder(cfg: ShockConfig, profile: "Profile", p: GridFunction) -> GridFunction:
    """Quadratic remainder of the flux at the profile, per interface.

    Component j compares the flux at the perturbed pair (v_{j-1}+p_{j-1},
    v_j+p_j) with its linearization at (v_{j-1}, v_j), scaled by lambda.
    """
    if not p.has_zero_tails():
        raise NonzeroTails("remainder is defined for zero-tail perturbations")
    j_lo, j_hi = p.j_min, p.j_max + 1
    v = profile.grid
    vj = v.at(np.arange(j_lo - 1, j_hi + 1))
    pj = p.padded(j_lo - 1, j_hi)
    du, dv = flux_partials(cfg, vj[:-1], vj[1:])
    full = numerical_flux(cfg, vj[:-1] + pj[:-1], vj[1:] + pj[1:])
    base = numerical_flux(cfg, vj[:-1], vj[1:])
    out = cfg.lam * (full - base - du * pj[:-1] - dv * pj[1:])
    return GridFunction(j_lo, out)


def apply_id_minus_shift(w: GridFunction) -> GridFunction:
    """(Id - S) with (S w)_j = w_{j+1}: returns w_j - w_{j+1}."""
    p = w.padded(w.j_min - 1, w.j_max + 1)
    return GridFunction(w.j_min - 1, p[:-1] - p[1:])
