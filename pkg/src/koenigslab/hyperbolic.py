"""Hyperbolic density, distance and length in the disk and its conformal images.

Conventions follow the density lambda(z) = 1/(1 - |z|^2) on the unit disk
(curvature -4), transported to a planar domain Omega by pullback along the
inverse of the domain's conformal map:

    lambda_Omega(w) = lambda_D(h^{-1}(w)) / |h'(h^{-1}(w))|
    k_Omega(w1, w2) = k_D(h^{-1}(w1), h^{-1}(w2))

Lengths along orbit curves exploit the linearization: the image of an orbit
is a horizontal ray traversed at unit Euclidean speed, so hyperbolic length
reduces to a one-dimensional integral of the domain density along that ray.

The quasi-hyperbolic sandwich 1/(4 delta) <= lambda <= 1/delta and the
distance bounds

    1/4 log(1 + |w1-w2| / min(delta(w1), delta(w2)))
        <= k_Omega(w1, w2) <= integral |dw| / delta(w)

(the upper bound along any piecewise smooth path) are evaluated, never
assumed; the acceptance battery asserts them on random samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import (
    PathLeavesDomain,
    PointOutsideDisk,
    PointOutsideDomain,
    QuadratureTolerance,
)
from .models import KoenigsModel

__all__ = [
    "CurveSegment",
    "density_disk",
    "k_disk",
    "density_omega",
    "k_omega",
    "level_distance",
    "hyp_length",
    "distance_lemma_bounds",
]

_QUAD_ABS_TOL = 1e-8
_QUAD_LIMIT = 10_000


@dataclass(frozen=True)
class CurveSegment:
    """Parameter window [t1, t2] of a sampled orbit curve."""

    source: object  # an OrbitSample
    t1: float
    t2: float

    def __post_init__(self):
        lo = float(self.source.times[0])
        hi = float(self.source.times[-1])
        if not (lo <= self.t1 <= self.t2 <= hi):
            raise ValueError(
                f"segment [{self.t1}, {self.t2}] outside orbit span [{lo}, {hi}]"
            )


def density_disk(z):
    """Hyperbolic density 1/(1 - |z|^2) of the unit disk."""
    r2 = np.abs(z) ** 2
    if np.any(r2 >= 1.0):
        raise PointOutsideDisk(f"|z| >= 1 for z = {z}")
    out = 1.0 / (1.0 - r2)
    return float(out) if np.ndim(out) == 0 else out


def k_disk(z, w):
    """Hyperbolic distance of the disk, arctanh of the pseudo-hyperbolic one."""
    if np.any(np.abs(z) >= 1.0) or np.any(np.abs(w) >= 1.0):
        raise PointOutsideDisk("arguments must lie in the open unit disk")
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    rho = np.abs(z - w) / np.abs(1.0 - np.conj(z) * w)
    out = np.arctanh(np.minimum(rho, 1.0 - 1e-16))
    return float(out) if np.ndim(out) == 0 else out


def density_omega(model: KoenigsModel, w):
    """Hyperbolic density of the model domain at w (conformal pullback)."""
    if not np.all(model.chart.contains(w)):
        raise PointOutsideDomain(f"point {w} is outside the domain")
    out = model.chart.density(w)
    return float(out) if np.ndim(out) == 0 else out


def k_omega(model: KoenigsModel, w1, w2):
    """Hyperbolic distance of the model domain: k_disk of the preimages."""
    for w in (w1, w2):
        if not np.all(model.chart.contains(w)):
            raise PointOutsideDomain(f"point {w} is outside the domain")
    return k_disk(model.chart.inverse(w1), model.chart.inverse(w2))


def level_distance(model: KoenigsModel, level, x1, x2):
    """k_Omega between two points of the horizontal line Im w = level.

    Evaluated in the family's linearizing coordinate, which stays accurate
    for orbit points whose disk coordinates have collapsed onto the circle.
    """
    return model.chart.level_distance(level, x1, x2)


def _orbit_ray(orbit):
    """Base point and direction sign of the orbit's image ray."""
    w0 = complex(orbit.omega_points[0])
    sign = -1.0 if orbit.direction == "backward" else 1.0
    return w0, sign


def hyp_length(model: KoenigsModel, segment: CurveSegment):
    """Hyperbolic length of an orbit piece between parameters t1 and t2.

    The image of the orbit is the ray t -> w0 +/- t traversed at unit speed,
    so the length is the integral of the domain density along it; adaptive
    quadrature to absolute tolerance 1e-8.
    """
    if segment.t2 == segment.t1:
        return 0.0
    w0, sign = _orbit_ray(segment.source)

    def integrand(t):
        return float(model.chart.density(w0 + sign * t))

    val, err = quad(
        integrand,
        segment.t1,
        segment.t2,
        epsabs=1e-10,
        epsrel=1e-11,
        limit=_QUAD_LIMIT,
    )
    if err > _QUAD_ABS_TOL:
        raise QuadratureTolerance(val, err)
    return val


def _polyline(w1, w2, path):
    vertices = [complex(w1)]
    vertices.extend(complex(p) for p in path)
    if vertices[-1] != complex(w2):
        vertices.append(complex(w2))
    return vertices


def _segment_hits_component(a, b, comp):
    """Exact intersection test of segment [a, b] with a horizontal component."""
    from .models import Line

    c = comp.y
    y1, y2 = a.imag, b.imag
    full_line = isinstance(comp, Line)

    def on_component(x):
        return full_line or x <= comp.x_max

    if y1 == c and y2 == c:
        return on_component(min(a.real, b.real))
    if y1 == c:
        return on_component(a.real)
    if y2 == c:
        return on_component(b.real)
    if (y1 - c) * (y2 - c) < 0.0:
        t = (c - y1) / (y2 - y1)
        return on_component(a.real + t * (b.real - a.real))
    return False


def _check_path_inside(model, vertices):
    comps = model.chart.boundary_components()
    for a, b in zip(vertices[:-1], vertices[1:]):
        for comp in comps:
            if _segment_hits_component(a, b, comp):
                raise PathLeavesDomain(f"path edge {a} -> {b} leaves the domain")


def _delta(model, w):
    comps = model.chart.boundary_components()
    return np.amin([c.distance(w) for c in comps], axis=0)


def quasihyperbolic_path_integral(model: KoenigsModel, vertices):
    """Integral of |dw| / delta(w) along a polyline inside the domain."""
    total = 0.0
    for a, b in zip(vertices[:-1], vertices[1:]):
        length = abs(b - a)
        if length == 0.0:
            continue

        def integrand(s):
            return length / float(_delta(model, a + (b - a) * s))

        val, err = quad(integrand, 0.0, 1.0, epsabs=1e-10, epsrel=1e-11, limit=200)
        total += val
    return total


def distance_lemma_bounds(model: KoenigsModel, w1, w2, path=()):
    """Lower bound, hyperbolic distance, and path upper bound for a pair.

    Returns ``(lower, k, upper)`` with

        lower = 1/4 log(1 + |w1 - w2| / min(delta(w1), delta(w2)))
        upper = integral of |dw| / delta along the given polyline

    where ``path`` lists intermediate vertices (defaults to the straight
    segment).  Raises PathLeavesDomain if a sampled path point exits.
    """
    for w in (w1, w2):
        if not np.all(model.chart.contains(w)):
            raise PointOutsideDomain(f"point {w} is outside the domain")
    w1 = complex(w1)
    w2 = complex(w2)
    if w1 == w2:
        return 0.0, 0.0, 0.0
    d1 = float(_delta(model, w1))
    d2 = float(_delta(model, w2))
    lower = 0.25 * math.log1p(abs(w1 - w2) / min(d1, d2))
    k = k_omega(model, w1, w2)
    vertices = _polyline(w1, w2, path)
    _check_path_inside(model, vertices)
    upper = quasihyperbolic_path_integral(model, vertices)
    return lower, k, upper


def straight_upper_bounds(model: KoenigsModel, w1, w2, order=24, panels=8):
    """Vectorized quasi-hyperbolic integral along straight segments.

    Gauss-Legendre composite rule evaluated for whole arrays of endpoint
    pairs at once; used by the bulk sandwich checks where one adaptive
    quadrature per pair would dominate the runtime.
    """
    w1 = np.asarray(w1, dtype=complex)
    w2 = np.asarray(w2, dtype=complex)
    nodes, weights = np.polynomial.legendre.leggauss(order)
    total = np.zeros(w1.shape)
    for p in range(panels):
        lo = p / panels
        hi = (p + 1) / panels
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        for x, wt in zip(nodes, weights):
            s = mid + half * x
            pts = w1 + (w2 - w1) * s
            total += wt * half / _delta(model, pts)
    return total * np.abs(w2 - w1)
