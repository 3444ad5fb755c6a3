"""Static figures from laboratory artifacts.

Four figure kinds, one image per job:

* ``domain``      the planar domain: boundary slits as bold half-lines, the
                  orbit ray dashed on its level line, slit tips marked;
* ``trajectory``  the disk side: unit circle, orbit samples, the attracting
                  point tau and the landing point marked;
* ``ratio``       the two boundary distances and their ratio over time, with
                  infinite entries clipped to the axis top and flagged;
* ``residual``    certificate residual heatmap over the (A, B) plane, i.e.
                  max over pairs of (l - A k - B)+.

The renderer is strictly read-only on its inputs.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schemas import (
    SchemaError,
    boundary_pieces,
    read_certificate_json,
    read_orbit_csv,
    read_orbit_meta_json,
    read_ratio_csv,
)

KINDS = ("domain", "trajectory", "ratio", "residual")


@dataclass(frozen=True)
class FigureJob:
    inputs: tuple
    kind: str
    out: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown figure kind {self.kind!r}")
        if not self.inputs:
            raise SchemaError("job lists no inputs")
        for path in self.inputs:
            if not os.path.exists(path):
                raise SchemaError(f"input does not exist: {path}")


def job_from_dict(payload):
    for key in ("inputs", "kind", "out"):
        if key not in payload:
            raise SchemaError(f"job is missing key {key!r}")
    return FigureJob(
        inputs=tuple(payload["inputs"]), kind=payload["kind"], out=payload["out"]
    )


def _pick(inputs, suffix):
    for path in inputs:
        if os.path.basename(path).endswith(suffix):
            return path
    raise SchemaError(f"job needs an input ending in {suffix!r}")


def _finish(fig, out):
    os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
    fig.savefig(out, dpi=130)
    plt.close(fig)


def render_domain(job):
    orbit = read_orbit_csv(_pick(job.inputs, "orbit.csv"))
    meta = read_orbit_meta_json(_pick(job.inputs, "orbit_meta.json"))
    w_re = np.asarray(orbit["re_w"])
    w_im = np.asarray(orbit["im_w"])
    pieces = boundary_pieces(meta)
    x_lo = min(w_re.min(), min((p.x_max for p in pieces if p.x_max is not None),
                               default=w_re.min())) - 2.0
    x_hi = w_re.max() + 2.0
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for piece in pieces:
        x_end = x_hi if piece.x_max is None else piece.x_max
        ax.plot([x_lo, x_end], [piece.y, piece.y], lw=3.0, color="black",
                solid_capstyle="butt")
        if piece.x_max is not None:
            ax.plot([piece.x_max], [piece.y], marker="o", ms=6, color="black")
    ax.plot(w_re, w_im, ls="--", lw=1.4, color="tab:blue", label="orbit ray")
    ax.plot([w_re[0]], [w_im[0]], marker="s", ms=6, color="tab:blue")
    ax.axhline(meta["level"], ls=":", lw=0.7, color="tab:gray")
    ax.set_xlim(x_lo, x_hi)
    ax.set_xlabel("Re w")
    ax.set_ylabel("Im w")
    ax.set_title("image domain and orbit ray")
    ax.legend(loc="best", fontsize=8)
    _finish(fig, job.out)


def render_trajectory(job):
    orbit = read_orbit_csv(_pick(job.inputs, "orbit.csv"))
    meta = read_orbit_meta_json(_pick(job.inputs, "orbit_meta.json"))
    z_re = np.asarray(orbit["re_z"])
    z_im = np.asarray(orbit["im_z"])
    fig, ax = plt.subplots(figsize=(5.2, 5.2))
    circle = np.exp(1j * np.linspace(0.0, 2.0 * math.pi, 512))
    ax.plot(circle.real, circle.imag, lw=1.0, color="black")
    ax.plot(z_re, z_im, ls="--", lw=1.2, color="tab:blue", label="orbit")
    ax.plot([z_re[0]], [z_im[0]], marker="s", ms=6, color="tab:blue")
    tau = meta["tau"]
    ax.plot([tau["re"]], [tau["im"]], marker="*", ms=12, color="tab:red",
            label="attracting point")
    if meta.get("landing"):
        ax.plot([meta["landing"]["re"]], [meta["landing"]["im"]], marker="x",
                ms=10, color="tab:green", label="landing")
    ax.set_aspect("equal")
    ax.set_xlim(-1.15, 1.15)
    ax.set_ylim(-1.15, 1.15)
    ax.set_title(f"disk-side {meta['direction']} orbit")
    ax.legend(loc="lower right", fontsize=8)
    _finish(fig, job.out)


def render_ratio(job):
    table = read_ratio_csv(_pick(job.inputs, "ratio.csv"))
    t = np.asarray(table["t"])
    ratio = np.asarray(table["ratio"])
    dp = np.asarray(table["delta_plus"])
    dm = np.asarray(table["delta_minus"])
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    finite = np.isfinite(ratio)
    clip_note = ""
    if finite.any():
        ceiling = 2.0 * np.max(ratio[finite]) if np.max(ratio[finite]) > 0 else 1.0
    else:
        ceiling = 1.0
    if not finite.all():
        clip_note = " (+inf clipped)"
    shown = np.where(np.isfinite(ratio), ratio, ceiling)
    ax.plot(t, shown, lw=1.4, color="tab:purple",
            label="delta_plus / delta_minus" + clip_note)
    for series, name, color in ((dp, "delta_plus", "tab:red"),
                                (dm, "delta_minus", "tab:blue")):
        if np.isfinite(series).any():
            vals = np.where(np.isfinite(series), series, np.nan)
            ax.plot(t, vals, lw=0.9, ls=":", color=color, label=name)
    ax.set_xlabel("t")
    ax.set_yscale("log")
    ax.set_title("boundary distance ratio along the orbit")
    ax.legend(loc="best", fontsize=8)
    _finish(fig, job.out)


def render_residual(job):
    cert = read_certificate_json(_pick(job.inputs, "certificate.json"))
    pairs = cert["pairs"]
    lengths = np.array([p["l"] for p in pairs])
    dists = np.array([p["k"] for p in pairs])
    a_grid = np.logspace(0.0, 2.0, 81)
    b_grid = np.linspace(0.0, max(1.0, float(np.max(lengths)) / 2.0), 81)
    residual = np.zeros((len(b_grid), len(a_grid)))
    for j, a in enumerate(a_grid):
        base = lengths - a * dists
        for i, b in enumerate(b_grid):
            residual[i, j] = max(0.0, float(np.max(base)) - b)
    fig, ax = plt.subplots(figsize=(6.4, 4.6))
    mesh = ax.pcolormesh(
        a_grid, b_grid, np.log10(residual + 1e-12), shading="auto", cmap="magma"
    )
    fig.colorbar(mesh, ax=ax, label="log10 max residual of l <= A k + B")
    ax.set_xscale("log")
    ax.set_xlabel("A")
    ax.set_ylabel("B")
    title = f"certificate residuals ({cert['verdict']}"
    if cert["A"] is not None:
        title += f", A={cert['A']:.3g}, B={cert['B']:.3g}"
        ax.plot([cert["A"]], [cert["B"]], marker="*", ms=12, color="cyan")
    ax.set_title(title + ")")
    _finish(fig, job.out)


_RENDERERS = {
    "domain": render_domain,
    "trajectory": render_trajectory,
    "ratio": render_ratio,
    "residual": render_residual,
}


def render(job: FigureJob):
    """Render one figure job; returns the output path."""
    _RENDERERS[job.kind](job)
    return job.out
