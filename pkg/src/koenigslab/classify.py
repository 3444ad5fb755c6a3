"""Landing classification: non-tangential versus tangential approach.

Two independent criteria are evaluated and must agree:

* the argument series arg(1 - conj(sigma) gamma(t)), whose tail cluster set
  must stay strictly inside (-pi/2, pi/2) for non-tangential approach;
* the harmonic-measure window: along a sequence approaching an endpoint of a
  boundary arc, non-tangential approach is equivalent to the measure of the
  arc staying bounded away from 0 and 1.

The reference arc pair is the disk-side image of the boundary split: the
orbit line together with the forward ray separates the circle into two arcs
with endpoints at the landing point and the Denjoy-Wolff point.  The ``plus``
arc is the one whose prime ends map to the boundary part above the orbit
line (conformal maps preserve orientation; the report records the convention
rather than asserting a sign).  When the landing point coincides with the
Denjoy-Wolff point (tangential cases) the split degenerates and a canonical
half-circle pair anchored at the Denjoy-Wolff point is used instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .boundary import split_boundary
from .errors import NoLanding
from .invariants import Arc, harmonic_measure_arc
from .models import KoenigsModel
from .semigroup import OrbitSample, representable

__all__ = ["ConvergenceReport", "boundary_arcs", "classify"]

VERDICT_NON_TANGENTIAL = "non_tangential"
VERDICT_TANGENTIAL = "tangential"
VERDICT_INCONCLUSIVE = "inconclusive"

_ANGLE_MARGIN = 0.05
_HM_MARGIN = 0.01
_STOLZ_OPENING = 10.0
_HM_SAMPLES = 33
_HM_GAP = 1e-6  # Poisson quadrature resolves kernel spikes down to this gap


@dataclass(frozen=True)
class ConvergenceReport:
    sigma: complex
    angle_times: np.ndarray
    angle_series: np.ndarray
    cluster_interval: tuple
    stolz_ok: bool
    hm_liminf: float
    hm_limsup: float
    verdict: str
    arc_plus: Arc
    arc_minus: Arc
    orientation: str = "plus arc maps to the boundary part above the orbit line"


def _part_distance(parts, w):
    if not parts:
        return math.inf
    return float(min(c.distance(w) for c in parts))


def boundary_arcs(model: KoenigsModel, orbit: OrbitSample, sigma: Optional[complex] = None):
    """Disk-side arc pair induced by the orbit line's boundary split."""
    if sigma is None:
        if orbit.landing is None:
            raise NoLanding("orbit has no landing estimate")
        sigma = complex(orbit.landing)
    tau = complex(model.tau)
    theta_sigma = math.atan2(sigma.imag, sigma.real) % (2 * math.pi)
    theta_tau = math.atan2(tau.imag, tau.real) % (2 * math.pi)
    if abs(sigma - tau) <= 1e-9:
        # degenerate split: both arcs anchored at the Denjoy-Wolff point
        return Arc(theta_tau, theta_tau + math.pi), Arc(
            theta_tau + math.pi, theta_tau + 2 * math.pi
        )
    span = (theta_sigma - theta_tau) % (2 * math.pi)
    arc_a = Arc(theta_tau, theta_tau + span)
    arc_b = Arc(theta_sigma, theta_sigma + (2 * math.pi - span))
    # probe: pull back a point pushed towards the upper boundary part
    plus_parts, _ = split_boundary(model, orbit.level)
    w0 = complex(orbit.omega_points[0])
    dist_up = _part_distance(plus_parts, w0)
    if math.isinf(dist_up):
        dist_up = 1.0
    z_up = complex(model.chart.inverse(w0 + 1j * 0.9 * dist_up))
    ang_up = math.atan2(z_up.imag, z_up.real)
    if arc_a.contains_angle(ang_up):
        return arc_a, arc_b
    return arc_b, arc_a


def classify(model: KoenigsModel, orbit: OrbitSample, arcs=None) -> ConvergenceReport:
    """Dual-criterion landing classification of a backward orbit.

    Angle and harmonic-measure criteria are computed on the samples that are
    still representable in double precision; the verdict is their agreement,
    Inconclusive otherwise.
    """
    if orbit.landing is None:
        raise NoLanding("orbit has no landing estimate")
    sigma = complex(orbit.landing)
    if arcs is None:
        arcs = boundary_arcs(model, orbit, sigma)
    arc_plus, arc_minus = arcs

    healthy = representable(orbit.disk_points)
    pts = orbit.disk_points[healthy]
    times = orbit.times[healthy]
    angles = np.angle(1.0 - np.conj(sigma) * pts)
    tail = angles[len(angles) // 2:]
    cluster = (float(np.min(tail)), float(np.max(tail)))
    angle_nt = (
        cluster[0] > -math.pi / 2 + _ANGLE_MARGIN
        and cluster[1] < math.pi / 2 - _ANGLE_MARGIN
    )

    gap = 1.0 - np.abs(pts)
    stolz_ok = bool(np.all(np.abs(sigma - pts) <= _STOLZ_OPENING * gap + 1e-15))

    hm_ok = gap >= _HM_GAP
    hm_pts = pts[hm_ok]
    take = np.unique(np.linspace(0, len(hm_pts) - 1, _HM_SAMPLES).astype(int))
    hm_vals = np.array([harmonic_measure_arc(p, arc_plus) for p in hm_pts[take]])
    hm_tail = hm_vals[len(hm_vals) // 2:]
    hm_liminf = float(np.min(hm_tail))
    hm_limsup = float(np.max(hm_tail))
    hm_nt = _HM_MARGIN <= hm_liminf and hm_limsup <= 1.0 - _HM_MARGIN

    if angle_nt and hm_nt:
        verdict = VERDICT_NON_TANGENTIAL
    elif not angle_nt and not hm_nt:
        verdict = VERDICT_TANGENTIAL
    else:
        verdict = VERDICT_INCONCLUSIVE

    return ConvergenceReport(
        sigma=sigma,
        angle_times=times,
        angle_series=angles,
        cluster_interval=cluster,
        stolz_ok=stolz_ok,
        hm_liminf=hm_liminf,
        hm_limsup=hm_limsup,
        verdict=verdict,
        arc_plus=arc_plus,
        arc_minus=arc_minus,
    )


def report_to_json_dict(report: ConvergenceReport) -> dict:
    return {
        "sigma": {"re": report.sigma.real, "im": report.sigma.imag},
        "clusterInterval": list(report.cluster_interval),
        "stolzOk": report.stolz_ok,
        "hmLiminf": report.hm_liminf,
        "hmLimsup": report.hm_limsup,
        "verdict": report.verdict,
        "arcPlus": {"alpha": report.arc_plus.alpha, "beta": report.arc_plus.beta},
        "arcMinus": {"alpha": report.arc_minus.alpha, "beta": report.arc_minus.beta},
        "orientation": report.orientation,
        "angles": [
            {"t": float(t), "angle": float(a)}
            for t, a in zip(report.angle_times, report.angle_series)
        ],
    }
