"""Dispersion roots, Lopatinskii determinant and stability verdicts.

The eigenvalue problem for the linearized operator reduces, for z outside
the spectral curves, to a 2x2 boundary system whose determinant Delta(z)
vanishes exactly at eigenvalues.  Delta(1) = 0 always (translation family);
stability is decided by counting zeros of Delta on an annulus around the
unit circle with a small square ball excised at 1 (argument principle).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AlphaMOutOfRange,
    ContourThroughZero,
    DegenerateAffine,
    DegenerateDerivative,
    GlancingPoint,
    SymmetricCase,
)
from .model import GridFunction, SpectralParams

__all__ = [
    "KappaPair",
    "SpectralScan",
    "kappa_roots",
    "spectral_curve_membership",
    "lopatinskii",
    "lopatinskii_derivative_at_one",
    "count_zeros",
    "convexity_certificate",
    "kernel_eigenvector",
    "alpha_m_for_delta_prime_zero",
    "alpha_m_for_delta_zero",
]


@dataclass(frozen=True)
class KappaPair:
    """Stable/unstable spatial decay modes of the resolvent recurrence."""

    stable: complex
    unstable: complex
    side: str  # "left" or "right"


@dataclass(frozen=True)
class SpectralScan:
    params: SpectralParams
    contour: np.ndarray
    delta_values: np.ndarray
    zero_count: int
    exclusion_radius: float
    verdict: str  # spectrally_stable | unstable | inconclusive


def _quadratic_roots(alpha: float, z: complex):
    a = 0.5 * alpha * (alpha - 1.0)
    b = 1.0 - alpha * alpha - z
    c = 0.5 * alpha * (alpha + 1.0)
    disc = b * b - 4.0 * a * c
    sq = cmath.sqrt(disc)
    r1 = (-b + sq) / (2.0 * a)
    r2 = (-b - sq) / (2.0 * a)
    return r1, r2, disc


def kappa_roots(alpha: float, z: complex, side: str) -> KappaPair:
    """Solve the dispersion quadratic and label its stable/unstable roots.

    For the left side the stable root lies outside the unit disk, for the
    right side inside.  Labels come from the moduli when they separate;
    otherwise from continuation at z(1 + 1e-3).
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    r1, r2, disc = _quadratic_roots(alpha, z)
    if abs(disc) < 1e-14:
        raise GlancingPoint(
            f"double dispersion root at z={z!r} for alpha={alpha!r}"
        )
    if abs(abs(r1) - abs(r2)) > 1e-10:
        big, small = (r1, r2) if abs(r1) > abs(r2) else (r2, r1)
    else:
        # continuation: label at a nearby z with separated moduli, then
        # transport the labels back by root proximity
        ref = kappa_roots(alpha, z * (1.0 + 1e-3), side)
        ref_big = ref.stable if side == "left" else ref.unstable
        big, small = (r1, r2) if abs(r1 - ref_big) < abs(r2 - ref_big) else (r2, r1)
    if side == "left":
        return KappaPair(stable=big, unstable=small, side=side)
    return KappaPair(stable=small, unstable=big, side=side)


def spectral_curve_membership(alpha: float, z: complex) -> str:
    """Position of z relative to the essential-spectrum ellipse of alpha."""
    a2 = alpha * alpha
    lhs = (z.real - 1.0 + a2) ** 2 + a2 * z.imag ** 2
    rhs = a2 * a2
    if abs(lhs - rhs) <= 1e-12:
        return "boundary"
    return "exterior" if lhs > rhs else "interior"


def lopatinskii(params: SpectralParams, z: complex) -> complex:
    al, ar, am = params.alpha_l, params.alpha_r, params.alpha_m
    kl = kappa_roots(al, z, "left").stable
    kr = kappa_roots(ar, z, "right").stable
    return (
        1.0
        - am * am
        + (al - am + (1.0 - al) * kl) * (ar - am - (1.0 + ar) / kr)
    )


def lopatinskii_derivative_at_one(params: SpectralParams) -> float:
    al, ar, am = params.alpha_l, params.alpha_r, params.alpha_m
    if al == 0.0 or ar == 0.0:
        raise ValueError("alpha_l and alpha_r must be nonzero")
    return -(1.0 + al) * (1.0 - am) / al + (1.0 - ar) * (1.0 + am) / ar


def alpha_m_for_delta_prime_zero(alpha_l: float, alpha_r: float) -> float:
    """Middle Courant number annihilating the derivative of Delta at 1."""
    if abs(alpha_l + alpha_r) < 1e-12:
        raise SymmetricCase(
            "alpha_l + alpha_r = 0: the derivative at 1 cannot vanish"
        )
    return (alpha_r - alpha_l + 2.0 * alpha_l * alpha_r) / (alpha_l + alpha_r)


def alpha_m_for_delta_zero(alpha_l: float, alpha_r: float, z0: complex) -> complex:
    """Middle Courant number putting a zero of Delta at z0.

    Delta(z0) is affine in alpha_m (the quadratic terms cancel between the
    product and 1 - alpha_m^2), so the root is unique.
    """
    kl = kappa_roots(alpha_l, z0, "left").stable
    kr = kappa_roots(alpha_r, z0, "right").stable
    # Delta = (1 - am^2) + (A - am)(B - am) with A, B independent of am
    A = alpha_l + (1.0 - alpha_l) * kl
    B = alpha_r - (1.0 + alpha_r) / kr
    coeff = -(A + B)  # the am^2 terms cancel exactly
    const = 1.0 + A * B
    if abs(coeff) < 1e-12:
        raise DegenerateAffine(
            f"Delta(z0) does not depend on alpha_m at z0={z0!r}"
        )
    return -const / coeff


def convexity_certificate(params: SpectralParams):
    """Certificate that all candidate determinant zeros off 1 are real.

    Returns (beta, gamma, discriminant_ok) where discriminant_ok checks the
    exact factorization of beta - 4*gamma as a perfect square.
    """
    al, ar, am = params.alpha_l, params.alpha_r, params.alpha_m
    if not (ar <= am <= al):
        raise AlphaMOutOfRange(
            f"alpha_m={am!r} outside [alpha_r, alpha_l]=[{ar!r}, {al!r}]"
        )
    beta = (1.0 - am * am) * (
        (al - ar) ** 2 - (am * (al + ar) - 2.0 * al * ar) ** 2
    )
    gamma = (am - ar) * (al - am) * (1.0 + al * ar - am * (al + ar))
    square = ((al + ar) * (1.0 + am * am) - 2.0 * (1.0 + al * ar) * am) ** 2
    ok = abs(beta - 4.0 * gamma - square) <= 1e-12
    return beta, gamma, ok


def kernel_eigenvector(params: SpectralParams, J: int = 200) -> GridFunction:
    """The geometric eigenvector spanning the kernel of Id - L."""
    dp = lopatinskii_derivative_at_one(params)
    if abs(dp) < 1e-10:
        raise DegenerateDerivative(
            f"derivative of the determinant at 1 is {dp!r}"
        )
    al, ar, am = params.alpha_l, params.alpha_r, params.alpha_m
    kl = -(1.0 + al) / (1.0 - al)  # stable left root at z=1
    kr = -(1.0 + ar) / (1.0 - ar)  # stable right root at z=1
    j = np.arange(-J, J + 1)
    vals = np.where(
        j <= 0,
        -2.0 * (1.0 - am) / (al * dp) * np.float_power(kl, j.clip(max=0)),
        2.0 * (1.0 + am) / (ar * dp) * np.float_power(kr, (j - 1).clip(min=0)),
    )
    return GridFunction(-J, vals)


# --- zero counting ------------------------------------------------------------

_INNER_SHRINK = 1e-7  # inner contour radius is 1 - this


def _hole_boundary(exclusion_radius: float, n_points: int) -> np.ndarray:
    """Counterclockwise boundary of disk(1-eps) union square-ball(1).

    The square ball [1-r, 1+r] x [-r, r] pokes out of the near-unit disk on
    its right; the union boundary is a long circle arc plus three square
    edge segments.
    """
    r = exclusion_radius
    rho = 1.0 - _INNER_SHRINK
    x_c = math.sqrt(rho * rho - r * r)  # circle/edge crossing abscissa
    th_c = math.atan2(r, x_c)
    n_arc = max(n_points, 64)
    arc = rho * np.exp(
        1j * np.linspace(th_c, 2.0 * math.pi - th_c, n_arc, endpoint=True)
    )
    n_seg = max(n_points // 8, 16)

    def seg(a, b):
        t = np.linspace(0.0, 1.0, n_seg, endpoint=False)[1:]
        return a + (b - a) * t

    bottom = seg(x_c - 1j * r, (1 + r) - 1j * r)
    right = seg((1 + r) - 1j * r, (1 + r) + 1j * r)
    top = seg((1 + r) + 1j * r, x_c + 1j * r)
    return np.concatenate([[x_c - 1j * r], bottom, right, top, arc])


def _winding(values: np.ndarray) -> tuple[int, float]:
    """Discrete winding number of a closed sample loop and max arg step."""
    ratios = np.roll(values, -1) / values
    steps = np.angle(ratios)
    return round(float(np.sum(steps) / (2.0 * math.pi))), float(np.max(np.abs(steps)))


def count_zeros(
    params: SpectralParams,
    r_outer: float = 1.5,
    exclusion_radius: float = 0.05,
    n_points: int = 1024,
) -> SpectralScan:
    """Zero count of the determinant on the near-unit annulus minus B(1).

    The inner circle hugs the unit circle from inside so that its incursion
    into the spectral-curve ellipses stays within the excised square ball;
    the count is the winding along the outer circle minus the winding along
    the hole boundary, each refined until stable.
    """
    if not (1.0 < r_outer <= 2.5):
        raise ValueError(f"r_outer must lie in (1, 2.5], got {r_outer!r}")
    if not (0.0 < exclusion_radius < 0.5):
        raise ValueError("exclusion_radius must lie in (0, 0.5)")
    if n_points < 512:
        raise ValueError("n_points must be at least 512")
    if r_outer <= 1.0 + exclusion_radius:
        raise ValueError("outer circle must clear the excised ball")

    def delta_on(zs):
        return np.array([lopatinskii(params, z) for z in zs])

    n = n_points
    result = None
    for _ in range(8):
        outer = r_outer * np.exp(2j * math.pi * np.arange(n) / n)
        hole = _hole_boundary(exclusion_radius, n)
        d_outer = delta_on(outer)
        d_hole = delta_on(hole)
        if min(np.min(np.abs(d_outer)), np.min(np.abs(d_hole))) < 1e-10:
            raise ContourThroughZero(
                "determinant vanishes on the scan contour"
            )
        w_out, s_out = _winding(d_outer)
        w_hole, s_hole = _winding(d_hole)
        count = w_out - w_hole
        if max(s_out, s_hole) < 0.5 * math.pi and result == count:
            break
        result = count
        n *= 2
    zero_count = count

    dp = lopatinskii_derivative_at_one(params)
    if zero_count == 0 and abs(dp) > 1e-8:
        verdict = "spectrally_stable"
    elif zero_count > 0:
        verdict = "unstable"
    else:
        verdict = "inconclusive"
    return SpectralScan(
        params=params,
        contour=np.concatenate([outer, hole]),
        delta_values=np.concatenate([d_outer, d_hole]),
        zero_count=zero_count,
        exclusion_radius=exclusion_radius,
        verdict=verdict,
    )
