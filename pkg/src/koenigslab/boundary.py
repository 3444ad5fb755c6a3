"""Splitting of the domain boundary by an orbit line and distance ratios.

The image of a backward orbit is a leftward horizontal ray; together with the
forward ray it spans a full horizontal line that separates the boundary into
the part strictly above (``plus``) and strictly below (``minus``).  Both
parts are unions of horizontal lines and leftward half-lines for every
catalog family, so all distances are exact plane geometry; an empty part
contributes distance +inf.

A backward orbit converging non-tangentially keeps the two distances
comparable (ratio trapped in [1/c, c] for some c >= 1); tangential
convergence to a regular fixed point degenerates the ratio to 0 or +inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import LevelNotInteriorLine, PointOutsideDomain
from .models import KoenigsModel
from .semigroup import OrbitSample

__all__ = [
    "RatioSeries",
    "split_boundary",
    "delta_split",
    "nearest_split_points",
    "ratio_series",
    "ratio_series_to_csv",
]

VERDICT_BOUNDED = "bounded"
VERDICT_DIVERGES = "diverges_to_infinity"
VERDICT_COLLAPSES = "collapses_to_zero"
VERDICT_DEGENERATE = "degenerate"

_RATIO_CEILING = 1e6


@dataclass(frozen=True)
class RatioSeries:
    """Per-sample distances to the two boundary parts along an orbit."""

    times: np.ndarray
    delta_plus: np.ndarray
    delta_minus: np.ndarray
    ratios: np.ndarray
    verdict: str
    bound: Optional[float] = None  # the constant c for a bounded verdict
    empty_side: Optional[str] = None  # "plus"/"minus" when a part is empty


def split_boundary(model: KoenigsModel, level: float):
    """Boundary components strictly above / strictly below the level line.

    Raises LevelNotInteriorLine unless the horizontal line at ``level``
    eventually lies inside the domain towards Re -> -inf.
    """
    plus, minus = [], []
    far_left = 0.0
    for comp in model.chart.boundary_components():
        if comp.y == level:
            raise LevelNotInteriorLine(
                f"boundary component at the orbit level {level}"
            )
        (plus if comp.y > level else minus).append(comp)
        x_max = getattr(comp, "x_max", None)
        if x_max is not None:
            far_left = min(far_left, x_max)
    probe = complex(far_left - 1.0, level)
    if not bool(np.all(model.chart.contains(probe))):
        raise LevelNotInteriorLine(
            f"horizontal line at {level} is not eventually interior"
        )
    return tuple(plus), tuple(minus)


def _part_distance(parts, w):
    if not parts:
        shape = np.shape(w)
        return math.inf if shape == () else np.full(shape, math.inf)
    return np.amin([c.distance(w) for c in parts], axis=0)


def delta_split(model: KoenigsModel, w, level: float):
    """Distances (delta_plus, delta_minus) to the split boundary parts."""
    if not np.all(model.chart.contains(w)):
        raise PointOutsideDomain(f"point {w} is outside the domain")
    plus, minus = split_boundary(model, level)
    dp = _part_distance(plus, w)
    dm = _part_distance(minus, w)
    if np.ndim(dp) == 0:
        return float(dp), float(dm)
    return dp, dm


def nearest_split_points(model: KoenigsModel, w, level: float):
    """Nearest boundary point on each part (None for an empty part)."""
    plus, minus = split_boundary(model, level)
    out = []
    for parts in (plus, minus):
        if not parts:
            out.append(None)
            continue
        dists = [c.distance(w) for c in parts]
        best = parts[int(np.argmin(dists))]
        out.append(best.nearest_point(w))
    return tuple(out)


def _monotone_tail(series, increasing, tail=10):
    seg = np.asarray(series[-tail:], dtype=float)
    diffs = np.diff(seg)
    return np.all(diffs >= -1e-12) if increasing else np.all(diffs <= 1e-12)


def ratio_series(model: KoenigsModel, orbit: OrbitSample) -> RatioSeries:
    """delta_plus / delta_minus along a backward orbit, with verdict.

    Bounded(c) takes c = max(sup ratio, sup 1/ratio); an empty part forces
    the ratio to +inf (part above missing) or 0 and yields the corresponding
    degenerate verdict, with the empty side recorded.
    """
    if orbit.direction != "backward":
        raise ValueError("ratio series requires a backward orbit")
    plus, minus = split_boundary(model, orbit.level)
    w = orbit.omega_points
    dp = np.asarray(_part_distance(plus, w), dtype=float)
    dm = np.asarray(_part_distance(minus, w), dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(
            np.isinf(dp) & np.isinf(dm),
            np.nan,
            np.where(np.isinf(dp), math.inf, np.where(np.isinf(dm), 0.0, dp / dm)),
        )
    empty_side = None
    if not plus:
        empty_side = "plus"
        verdict, bound = VERDICT_DIVERGES, None
    elif not minus:
        empty_side = "minus"
        verdict, bound = VERDICT_COLLAPSES, None
    else:
        sup = float(np.max(ratios))
        inf = float(np.min(ratios))
        if sup > _RATIO_CEILING and _monotone_tail(ratios, increasing=True):
            verdict, bound = VERDICT_DIVERGES, None
        elif inf < 1.0 / _RATIO_CEILING and _monotone_tail(ratios, increasing=False):
            verdict, bound = VERDICT_COLLAPSES, None
        else:
            verdict, bound = VERDICT_BOUNDED, max(sup, 1.0 / inf, 1.0)
    return RatioSeries(
        times=orbit.times,
        delta_plus=dp,
        delta_minus=dm,
        ratios=ratios,
        verdict=verdict,
        bound=bound,
        empty_side=empty_side,
    )


def ratio_series_to_csv(series: RatioSeries) -> str:
    """CSV with the literal ``inf`` for infinite entries."""
    lines = ["t,delta_plus,delta_minus,ratio"]

    def fmt(x):
        return "inf" if math.isinf(x) else f"{x:.12g}"

    for t, dp, dm, r in zip(
        series.times, series.delta_plus, series.delta_minus, series.ratios
    ):
        lines.append(f"{t:.12g},{fmt(dp)},{fmt(dm)},{fmt(r)}")
    return "\n".join(lines) + "\n"
