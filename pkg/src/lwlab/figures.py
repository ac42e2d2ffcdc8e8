"""Figure rendering for the command-line reports.

Only the command-line layer imports this module; the library itself emits
data, never plots.  All functions render straight to a file with the
non-interactive Agg backend.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = [
    "save_profile_family",
    "save_grid_function",
    "save_field_heatmap",
    "save_determinant_image",
    "save_curve",
    "save_loglog",
]


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_profile_family(rows, path):
    """Interface values v0, v1 against the excess mass theta."""
    thetas = [r["theta"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(thetas, [r["v0"] for r in rows], "o-", ms=3, label=r"$v_0$")
    ax.plot(thetas, [r["v1"] for r in rows], "s-", ms=3, label=r"$v_1$")
    ax.set_xlabel(r"excess mass $\theta$")
    ax.set_ylabel("interface values")
    ax.legend()
    ax.grid(alpha=0.3)
    _finish(fig, path)


def save_grid_function(g, path, label="value", reference=None):
    """One lattice sequence, optionally against a reference sequence."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(g.indices, np.real(g.values), "o-", ms=3, label=label)
    if reference is not None:
        ax.plot(reference.indices, np.real(reference.values), "--",
                label="reference")
        ax.legend()
    ax.set_xlabel("$j$")
    ax.set_ylabel(label)
    ax.grid(alpha=0.3)
    _finish(fig, path)


def save_field_heatmap(field, path):
    """Space-time view of a temporal Green's function field."""
    lo = min(r.j_min for r in field.rows)
    hi = max(r.j_max for r in field.rows)
    mat = np.vstack([r.padded(lo, hi).real for r in field.rows])
    fig, ax = plt.subplots(figsize=(6, 4))
    vmax = np.percentile(np.abs(mat), 99.5) or 1.0
    im = ax.imshow(mat, aspect="auto", origin="lower", cmap="RdBu_r",
                   vmin=-vmax, vmax=vmax,
                   extent=[lo - 0.5, hi + 0.5, -0.5, field.n_max + 0.5])
    ax.set_xlabel("$j$")
    ax.set_ylabel("$n$")
    ax.set_title(f"{field.kind} field from $j_0={field.j0}$")
    fig.colorbar(im, ax=ax)
    _finish(fig, path)


def save_determinant_image(scan, path):
    """Image of the scan contour under the determinant, with the origin."""
    vals = scan.delta_values
    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    axes[0].plot(scan.contour.real, scan.contour.imag, ".", ms=1)
    axes[0].set_title("scan contour ($z$-plane)")
    axes[0].set_aspect("equal")
    axes[1].plot(vals.real, vals.imag, ".", ms=1)
    axes[1].plot([0], [0], "r+", ms=10)
    axes[1].set_title(
        f"determinant image (zeros enclosed: {scan.zero_count})"
    )
    for ax in axes:
        ax.grid(alpha=0.3)
    _finish(fig, path)


def save_curve(xs, ys, path, xlabel="x", ylabel="value"):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(xs, ys, "-")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(alpha=0.3)
    _finish(fig, path)


def save_loglog(ns, series, path, ylabel="norm"):
    """Norm histories against n on log-log axes; series maps label to values."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, ys in series.items():
        ax.loglog(ns, ys, "o-", ms=3, label=label)
    ax.set_xlabel("$n$")
    ax.set_ylabel(ylabel)
    ax.legend()
    ax.grid(alpha=0.3, which="both")
    _finish(fig, path)
