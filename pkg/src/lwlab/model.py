"""Shock/flux configuration, lattice grid functions and weighted norms.

The universal sequence type is :class:`GridFunction`: a finite window of
values on the integer lattice extended by constants on both sides.  Shock
profiles have nonzero tails (the end states), perturbations have zero tails.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import (
    CflViolation,
    DivergentNorm,
    EntropyViolation,
    RankineHugoniotViolation,
    TailMismatch,
)

__all__ = [
    "Flux",
    "burgers_flux",
    "ShockConfig",
    "SpectralParams",
    "GridFunction",
    "make_shock_config",
    "weighted_norm",
    "excess_mass",
    "dirac",
]


@dataclass(frozen=True)
class Flux:
    """Scalar flux with analytic derivative.

    ``second`` (f'') is optional; when absent it is approximated by a
    centered difference of ``deriv`` with step 1e-5 where needed.
    """

    eval: Callable[[float], float]
    deriv: Callable[[float], float]
    label: str = "flux"
    second: Callable[[float], float] | None = None

    def d2(self, u):
        if self.second is not None:
            return self.second(u)
        h = 1e-5
        return (self.deriv(u + h) - self.deriv(u - h)) / (2.0 * h)


def burgers_flux() -> Flux:
    return Flux(
        eval=lambda u: 0.5 * u * u,
        deriv=lambda u: u,
        label="burgers",
        second=lambda u: np.ones_like(np.asarray(u, dtype=float)),
    )


@dataclass(frozen=True)
class ShockConfig:
    """Admissible stationary shock data with derived Courant numbers."""

    flux: Flux
    u_l: float
    u_r: float
    lam: float  # time step over space step
    alpha_l: float = field(init=False)
    alpha_r: float = field(init=False)
    alpha_m: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha_l", self.lam * self.flux.deriv(self.u_l))
        object.__setattr__(self, "alpha_r", self.lam * self.flux.deriv(self.u_r))
        object.__setattr__(
            self, "alpha_m", self.lam * self.flux.deriv(0.5 * (self.u_l + self.u_r))
        )

    def spectral_params(self) -> "SpectralParams":
        return SpectralParams(self.alpha_l, self.alpha_r, self.alpha_m)


@dataclass(frozen=True)
class SpectralParams:
    """Courant-number triple decoupled from any concrete flux.

    Keeping the triple first-class lets one feed the determinant machinery
    values that no convex flux realizes (the instability constructions).
    """

    alpha_l: float
    alpha_r: float
    alpha_m: float

    def __post_init__(self):
        if not (0.0 < self.alpha_l < 1.0):
            raise ValueError(f"alpha_l must lie in (0,1), got {self.alpha_l!r}")
        if not (-1.0 < self.alpha_r < 0.0):
            raise ValueError(f"alpha_r must lie in (-1,0), got {self.alpha_r!r}")


def make_shock_config(flux: Flux, u_l: float, u_r: float, lam: float) -> ShockConfig:
    """Validate Rankine-Hugoniot, entropy and CFL, then derive the alphas."""
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam!r}")
    fl, fr = flux.eval(u_l), flux.eval(u_r)
    if abs(fl - fr) > 1e-12:
        raise RankineHugoniotViolation(fl, fr)
    dl, dr = flux.deriv(u_l), flux.deriv(u_r)
    if not (dr < 0.0 < dl):
        raise EntropyViolation(dl, dr)
    cfg = ShockConfig(flux, u_l, u_r, lam)
    if max(cfg.alpha_l, abs(cfg.alpha_r)) >= 1.0:
        raise CflViolation(cfg.alpha_l, cfg.alpha_r)
    return cfg


@dataclass(frozen=True)
class GridFunction:
    """Values on a finite window [j_min, j_max], constant beyond it.

    Works for real and complex data alike (values drive the dtype).
    Treat instances as immutable; all operations return new objects.
    """

    j_min: int
    values: np.ndarray
    tail_left: complex = 0.0
    tail_right: complex = 0.0

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.values))
        object.__setattr__(self, "values", v)
        if v.size < 1:
            raise ValueError("window must contain at least one cell")

    @property
    def j_max(self) -> int:
        return self.j_min + self.values.size - 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.j_min, self.j_max + 1)

    def at(self, j):
        """Evaluate at (array of) lattice indices, honoring the tails."""
        scalar = np.ndim(j) == 0
        j = np.atleast_1d(np.asarray(j))
        dtype = np.result_type(self.values, type(self.tail_left), type(self.tail_right))
        out = np.empty(j.shape, dtype=dtype)
        out[j < self.j_min] = self.tail_left
        out[j > self.j_max] = self.tail_right
        inside = (j >= self.j_min) & (j <= self.j_max)
        out[inside] = self.values[j[inside] - self.j_min]
        return out[0] if scalar else out

    def padded(self, j_lo: int, j_hi: int) -> np.ndarray:
        """Values on [j_lo, j_hi] with tail padding."""
        n_left = max(0, self.j_min - j_lo)
        n_right = max(0, j_hi - self.j_max)
        core = self.values[
            max(0, j_lo - self.j_min): self.values.size - max(0, self.j_max - j_hi)
        ]
        return np.concatenate([
            np.full(n_left, self.tail_left, dtype=core.dtype),
            core,
            np.full(n_right, self.tail_right, dtype=core.dtype),
        ])

    def translate(self, k: int) -> "GridFunction":
        """Shift right by k cells: output at j equals input at j - k."""
        return replace(self, j_min=self.j_min + k)

    def has_zero_tails(self, tol: float = 0.0) -> bool:
        return abs(self.tail_left) <= tol and abs(self.tail_right) <= tol

    def trimmed(self, tol: float = 0.0) -> "GridFunction":
        """Drop window cells that already equal the tail value (within tol)."""
        v = self.values
        lo, hi = 0, v.size
        while lo < hi - 1 and abs(v[lo] - self.tail_left) <= tol:
            lo += 1
        while hi > lo + 1 and abs(v[hi - 1] - self.tail_right) <= tol:
            hi -= 1
        return replace(self, j_min=self.j_min + lo, values=v[lo:hi].copy())


def dirac(j0: int = 0, amplitude=1.0) -> GridFunction:
    return GridFunction(j0, np.array([amplitude]))


def weighted_norm(v: GridFunction, gamma: float, q: str) -> float:
    """Polynomially weighted sequence norm with weight (1 + |j|^gamma).

    q is "one" or "infinity".  The l1 sum requires zero tails; the sup norm
    tolerates nonzero tails only in the unweighted case.
    """
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    if q not in ("one", "infinity"):
        raise ValueError(f"q must be 'one' or 'infinity', got {q!r}")
    w = 1.0 + np.abs(v.indices.astype(float)) ** gamma
    if q == "one":
        if not v.has_zero_tails():
            raise DivergentNorm("l1 norm of a sequence with nonzero tails diverges")
        return float(np.sum(w * np.abs(v.values)))
    if not v.has_zero_tails() and gamma > 0:
        raise DivergentNorm(
            "weighted sup norm with nonzero tails diverges for gamma > 0"
        )
    sup = float(np.max(w * np.abs(v.values)))
    return max(sup, abs(v.tail_left), abs(v.tail_right))


def excess_mass(v: GridFunction, reference: GridFunction) -> float:
    """Sum of (v_j - reference_j) over the lattice.

    Finite only when both sequences share their tail values, so the
    difference is compactly supported on the merged window.
    """
    if (
        abs(v.tail_left - reference.tail_left) > 0
        or abs(v.tail_right - reference.tail_right) > 0
    ):
        raise TailMismatch(
            f"tails differ: ({v.tail_left!r}, {v.tail_right!r}) vs "
            f"({reference.tail_left!r}, {reference.tail_right!r})"
        )
    j_lo = min(v.j_min, reference.j_min)
    j_hi = max(v.j_max, reference.j_max)
    return float(
        np.sum(v.padded(j_lo, j_hi).real - reference.padded(j_lo, j_hi).real)
    )
