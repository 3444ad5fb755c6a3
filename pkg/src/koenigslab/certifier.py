"""Grid-relative certification of the quasi-geodesic property for orbits.

A curve escaping to the boundary is an (A, B)-quasi-geodesic when the
hyperbolic length between any two of its points is at most A times their
hyperbolic distance plus B, with A >= 1 and B >= 0.  The certifier evaluates
lengths and distances over a geometric grid of parameter pairs, tabulates the
minimal feasible B for each A on a logarithmic ladder, and reports either a
certificate or growth evidence against any uniform constants.

The verdict is explicitly grid-relative: a desk-scale check, not a proof.
Refutation looks for the hallmark of failure, a window-to-window growth of
the required B at fixed A (three nested windows, factor 1.5 per doubling);
certification picks the feasibility knee min_A (A + B(A)).

The module also derives the explicit constants of the strip-to-slit-plane
comparison: the orbit line sits at clearance c inside the maximal strip S and
at clearance d inside the larger domain bounded by the two half-lines through
the nearest boundary points above and below the base point; these give the
closed-form pair A = 4*eps/c, B = 8*eps^2/(c*d) + (length of the initial
piece up to the entry time t0).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .boundary import nearest_split_points
from .errors import EscapeNotReached, NoMaximalStrip, NotRepelling
from .hyperbolic import CurveSegment, hyp_length, level_distance
from .models import KIND_REPELLING, KoenigsModel
from .semigroup import OrbitSample, _generator_sup, geometric_times

__all__ = [
    "QGCertificate",
    "ComparisonConstants",
    "certify",
    "explicit_constants",
    "validate_constants",
    "certificate_to_json",
]

VERDICT_CERTIFIED = "certified"
VERDICT_REFUTED_GROWTH = "refuted_growth"

ESCAPE_THRESHOLD = 5.0
_FEASIBLE_SLACK = 1e-6
_GROWTH_RATIO = 1.5
_GROWTH_FLOOR = 10.0


@dataclass(frozen=True)
class QGCertificate:
    """Evidence for or against uniform quasi-geodesic constants."""

    pair_t1: np.ndarray
    pair_t2: np.ndarray
    lengths: np.ndarray
    distances: np.ndarray
    a_grid: np.ndarray
    minimal_b: np.ndarray  # minimal feasible B at each grid A (full window)
    verdict: str
    a_value: Optional[float]
    b_value: Optional[float]
    max_residual: Optional[float]
    witnesses: tuple  # worst pairs (t1, t2, l, k) backing a refutation
    escape_distance: float
    lipschitz_c: float

    def pairs(self):
        return [
            {"t1": float(a), "t2": float(b), "l": float(l), "k": float(k)}
            for a, b, l, k in zip(
                self.pair_t1, self.pair_t2, self.lengths, self.distances
            )
        ]


def _orbit_pair_data(model, orbit, grid):
    """Cumulative lengths and pairwise distances over the time grid."""
    x0 = float(np.real(orbit.omega_points[0]))
    sign = -1.0 if orbit.direction == "backward" else 1.0
    cum = np.zeros(len(grid))
    for i in range(1, len(grid)):
        seg = CurveSegment(orbit, float(grid[i - 1]), float(grid[i]))
        cum[i] = cum[i - 1] + hyp_length(model, seg)
    i_idx, j_idx = np.triu_indices(len(grid), k=1)
    t1 = grid[i_idx]
    t2 = grid[j_idx]
    lengths = cum[j_idx] - cum[i_idx]
    distances = np.asarray(
        level_distance(model, orbit.level, x0 + sign * t1, x0 + sign * t2),
        dtype=float,
    )
    return t1, t2, lengths, distances


def _minimal_b(lengths, distances, a_grid, mask=None):
    if mask is None:
        mask = np.ones(lengths.shape, dtype=bool)
    if not mask.any():
        return np.zeros(len(a_grid))
    l = lengths[mask]
    k = distances[mask]
    return np.array([float(np.max(np.maximum(l - a * k, 0.0))) for a in a_grid])


def certify(model: KoenigsModel, orbit: OrbitSample, pair_grid=None) -> QGCertificate:
    """Evaluate the quasi-geodesic inequality over a geometric pair grid."""
    if orbit.direction != "backward":
        raise ValueError("certification expects a backward orbit")
    grid = np.asarray(pair_grid if pair_grid is not None else
                      geometric_times(orbit.t_max), dtype=float)
    x0 = float(np.real(orbit.omega_points[0]))
    escape = float(
        level_distance(model, orbit.level, x0, x0 - orbit.t_max)
    )
    if escape <= ESCAPE_THRESHOLD:
        raise EscapeNotReached(
            f"k(gamma(0), gamma(t_max)) = {escape:.3g} <= {ESCAPE_THRESHOLD}"
        )
    t1, t2, lengths, distances = _orbit_pair_data(model, orbit, grid)

    a_grid = np.logspace(0.0, 2.0, 17)  # 1 .. 100, includes 10
    b_full = _minimal_b(lengths, distances, a_grid)
    t_full = float(grid[-1])
    b_half = _minimal_b(lengths, distances, a_grid, mask=t2 <= t_full / 2.0)
    b_quarter = _minimal_b(lengths, distances, a_grid, mask=t2 <= t_full / 4.0)

    growing = (
        (b_full >= _GROWTH_RATIO * b_half)
        & (b_half >= _GROWTH_RATIO * np.maximum(b_quarter, 1e-30))
        & (b_full >= _GROWTH_FLOOR)
    )
    lipschitz_c = _generator_sup(model, orbit)

    if growing.any():
        a_wit = float(a_grid[int(np.argmax(b_full * growing))])
        resid = lengths - a_wit * distances
        order = np.argsort(resid)[::-1][:5]
        witnesses = tuple(
            (float(t1[i]), float(t2[i]), float(lengths[i]), float(distances[i]))
            for i in order
        )
        return QGCertificate(
            pair_t1=t1,
            pair_t2=t2,
            lengths=lengths,
            distances=distances,
            a_grid=a_grid,
            minimal_b=b_full,
            verdict=VERDICT_REFUTED_GROWTH,
            a_value=None,
            b_value=None,
            max_residual=None,
            witnesses=witnesses,
            escape_distance=escape,
            lipschitz_c=lipschitz_c,
        )

    scores = a_grid + b_full
    best = int(np.argmin(scores))
    a_star = float(a_grid[best])
    b_star = float(b_full[best])
    residual = float(np.max(lengths - a_star * distances - b_star))
    if residual > _FEASIBLE_SLACK:
        raise AssertionError("certified pair violates its own certificate")
    return QGCertificate(
        pair_t1=t1,
        pair_t2=t2,
        lengths=lengths,
        distances=distances,
        a_grid=a_grid,
        minimal_b=b_full,
        verdict=VERDICT_CERTIFIED,
        a_value=a_star,
        b_value=b_star,
        max_residual=residual,
        witnesses=(),
        escape_distance=escape,
        lipschitz_c=lipschitz_c,
    )


@dataclass(frozen=True)
class ComparisonConstants:
    """Explicit quasi-geodesic constants from the two half-line comparison."""

    p_plus: complex
    p_minus: complex
    x_cut: float
    y_plus: float
    y_minus: float
    half_gap: float  # eps: half the vertical gap between the half-lines
    strip_clearance: float  # c: distance from the orbit line to the strip edge
    comparison_clearance: float  # d: distance to the comparison half-lines
    t_entry: float  # t0: first time Re h(gamma(t)) <= x_cut
    entry_length: float  # hyperbolic length of the initial piece [0, t0]
    a_bound: float
    b_bound: float


def explicit_constants(model: KoenigsModel, orbit: OrbitSample) -> ComparisonConstants:
    """Constants (A, B) = (4 eps / c, 8 eps^2 / (c d) + l[0, t0]).

    Requires the orbit to run inside a maximal horizontal strip attached to a
    repelling landing point; half-plane type models have no such strip.
    """
    if model.maximal_strip is None:
        raise NoMaximalStrip("model has no maximal horizontal strip")
    if orbit.landing is None:
        raise NotRepelling("orbit has no landing estimate")
    sigma = complex(orbit.landing)
    if not any(
        fp.kind == KIND_REPELLING and abs(fp.point - sigma) <= 1e-9
        for fp in model.fixed_points
    ):
        raise NotRepelling(f"orbit lands at {sigma}, not at a repelling point")
    ylow, yhigh = model.maximal_strip
    level = orbit.level
    if not ylow < level < yhigh:
        raise NoMaximalStrip("orbit line is not inside the maximal strip")
    w0 = complex(orbit.omega_points[0])
    p_plus, p_minus = nearest_split_points(model, w0, level)
    if p_plus is None or p_minus is None:
        raise NoMaximalStrip("both boundary parts must be non-empty")
    x_cut = min(p_plus.real, p_minus.real)
    y_plus = p_plus.imag
    y_minus = p_minus.imag
    eps = 0.5 * (y_plus - y_minus)
    c = min(yhigh - level, level - ylow)
    d = min(abs(level - y_plus), abs(level - y_minus))
    t0 = max(0.0, w0.real - x_cut)
    entry = hyp_length(model, CurveSegment(orbit, 0.0, t0)) if t0 > 0 else 0.0
    return ComparisonConstants(
        p_plus=p_plus,
        p_minus=p_minus,
        x_cut=x_cut,
        y_plus=y_plus,
        y_minus=y_minus,
        half_gap=eps,
        strip_clearance=c,
        comparison_clearance=d,
        t_entry=t0,
        entry_length=entry,
        a_bound=4.0 * eps / c,
        b_bound=8.0 * eps * eps / (c * d) + (entry if t0 > 0 else 0.0),
    )


def validate_constants(model, orbit, constants, pair_grid=None):
    """Max residual of l <= A k + B over the pair grid for explicit constants."""
    grid = np.asarray(pair_grid if pair_grid is not None else
                      geometric_times(orbit.t_max), dtype=float)
    _, _, lengths, distances = _orbit_pair_data(model, orbit, grid)
    return float(
        np.max(lengths - constants.a_bound * distances - constants.b_bound)
    )


def certificate_to_json(cert: QGCertificate) -> str:
    """Deterministic JSON serialization of a certificate."""
    payload = {
        "verdict": cert.verdict,
        "A": cert.a_value,
        "B": cert.b_value,
        "maxResidual": cert.max_residual,
        "escapeDistance": cert.escape_distance,
        "lipschitzC": cert.lipschitz_c,
        "minimalB": [
            {"A": float(a), "B": float(b)}
            for a, b in zip(cert.a_grid, cert.minimal_b)
        ],
        "witnesses": [
            {"t1": t1, "t2": t2, "l": l, "k": k} for t1, t2, l, k in cert.witnesses
        ],
        "pairs": cert.pairs(),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
