"""Harmonic measure, Groetzsch modulus, and discrete extremal length.

Three conformal invariants back the boundary analysis:

* harmonic measure of a circular arc, by adaptive quadrature of the Poisson
  kernel (1 - |z|^2) / |e^{i theta} - z|^2 over the arc;
* the Groetzsch ring modulus mu(r) for the disk minus the radial segment
  [0, r], through complete elliptic integrals computed by the
  arithmetic-geometric mean: mu(r) = (pi/2) * K'(r) / K(r), and the extremal
  distance mu(r) / (2 pi) between the segment and the circle;
* a finite-difference extremal distance between two marked sets E, F in a
  rasterized domain, via the reciprocal-capacity identity: solve the discrete
  Laplace problem with u = 0 on E, u = 1 on F, natural (zero-flux) conditions
  elsewhere, and return 1 / (Dirichlet energy).

The Beurling-type product omega * exp(pi * lambda) couples the first and the
third: the harmonic measure of an arc seen from a point is exponentially
controlled by the extremal distance between any path leaving the point and
the arc.  The absolute constant in that bound is not pinned numerically; the
suite only asserts boundedness and the monotone decay of omega against
lambda.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.ndimage as ndi
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.integrate import quad

from .errors import (
    DisconnectedDomain,
    NotConvergent,
    OutOfRange,
    PathTouchesArc,
    PointOutsideDisk,
    QuadratureTolerance,
    SolverDivergence,
)

__all__ = [
    "Arc",
    "GridDomain",
    "harmonic_measure_arc",
    "nt_criterion",
    "agm",
    "grotzsch_mu",
    "extremal_distance_grotzsch",
    "extremal_distance_fd",
    "square_domain",
    "grotzsch_domain",
    "disk_joining_domain",
    "beurling_gap",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Arc:
    """Counterclockwise circular arc from e^{i alpha} to e^{i beta}."""

    alpha: float
    beta: float

    def __post_init__(self):
        length = self.beta - self.alpha
        if not 0.0 < length < TWO_PI:
            raise OutOfRange(f"arc length {length} outside (0, 2*pi)")
        alpha = self.alpha % TWO_PI
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", alpha + length)

    @property
    def length(self):
        return self.beta - self.alpha

    def endpoints(self):
        return (
            complex(math.cos(self.alpha), math.sin(self.alpha)),
            complex(math.cos(self.beta), math.sin(self.beta)),
        )

    def contains_angle(self, theta):
        shifted = (theta - self.alpha) % TWO_PI
        return shifted <= self.length

    def complement(self):
        return Arc(self.beta, self.alpha + TWO_PI)


def harmonic_measure_arc(z, arc: Arc):
    """Harmonic measure of the arc at z, by Poisson-kernel quadrature.

    The kernel concentrates in a boundary layer of width 1 - |z| around the
    argument of z; hint points laddered into that layer keep the adaptive
    rule accurate for points close to the circle, including spikes at an
    arc endpoint.
    """
    z = complex(z)
    if abs(z) >= 1.0:
        raise PointOutsideDisk(f"|z| >= 1 for z = {z}")
    r2 = abs(z) ** 2

    def kernel(theta):
        return (1.0 - r2) / abs(cmath_exp_i(theta) - z) ** 2 / TWO_PI

    split = set()
    if abs(z) > 0.5:
        spike = math.atan2(z.imag, z.real)
        widths = (0.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
        for shift in (-TWO_PI, 0.0, TWO_PI):
            s = spike + shift
            if arc.alpha - 0.5 < s < arc.beta + 0.5:
                for w in widths:
                    for cand in (s - w, s + w):
                        if arc.alpha < cand < arc.beta:
                            split.add(cand)
    out = quad(
        kernel, arc.alpha, arc.beta, points=sorted(split) or None, epsabs=1e-12,
        epsrel=1e-12, limit=800, full_output=1,
    )
    val, err = out[0], out[1]
    if err > 1e-10:
        raise QuadratureTolerance(val, err)
    return val


def cmath_exp_i(theta):
    return complex(math.cos(theta), math.sin(theta))


def nt_criterion(points, arc: Arc):
    """Tail harmonic-measure window for a sequence approaching an arc endpoint.

    Returns ``(liminf_est, limsup_est, verdict)`` where the estimates are the
    min and max of the measure over the last half of the sequence, and the
    verdict is "non_tangential" iff both stay inside [eta, 1 - eta] with
    eta = 0.01.  Raises NotConvergent unless the distance to the nearer
    endpoint decreases along the sequence.
    """
    pts = np.asarray(points, dtype=complex)
    if len(pts) < 4:
        raise NotConvergent("need at least 4 points")
    e1, e2 = arc.endpoints()
    d1 = np.abs(pts - e1)
    d2 = np.abs(pts - e2)
    d = d1 if d1[-1] <= d2[-1] else d2
    if np.any(np.diff(d) > 1e-9) or d[-1] >= d[0]:
        raise NotConvergent("sequence does not approach an arc endpoint")
    tail = pts[len(pts) // 2:]
    omega = np.array([harmonic_measure_arc(p, arc) for p in tail])
    lo = float(np.min(omega))
    hi = float(np.max(omega))
    eta = 0.01
    verdict = "non_tangential" if (lo >= eta and hi <= 1.0 - eta) else "tangential_suspect"
    return lo, hi, verdict


def agm(a, b, tol=1e-17):
    """Arithmetic-geometric mean of two positive reals."""
    a = float(a)
    b = float(b)
    for _ in range(80):
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        if abs(a - b) <= tol * a:
            break
    return 0.5 * (a + b)


def grotzsch_mu(r):
    """Ring modulus mu(r) = (pi/2) K(r') / K(r) via the AGM."""
    if not 0.0 < r < 1.0:
        raise OutOfRange(f"r = {r} outside (0, 1)")
    r_prime = math.sqrt((1.0 - r) * (1.0 + r))
    # K(k) = pi / (2 agm(1, k')), so the K-ratio is an AGM ratio
    return 0.5 * math.pi * agm(1.0, r_prime) / agm(1.0, r)


def extremal_distance_grotzsch(r):
    """Extremal distance between [0, r] and the unit circle inside the disk."""
    return grotzsch_mu(r) / TWO_PI


# ---------------------------------------------------------------------------
# discrete extremal length
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridDomain:
    """Rasterized domain: free cells plus two marked Dirichlet cell sets."""

    free: np.ndarray  # bool, cells carrying unknowns
    e_cells: np.ndarray  # bool, u = 0
    f_cells: np.ndarray  # bool, u = 1
    spacing: float

    def __post_init__(self):
        if np.any(self.e_cells & self.f_cells):
            raise ValueError("E and F cells overlap")
        if not self.e_cells.any() or not self.f_cells.any():
            raise ValueError("E and F must both be non-empty")


_FOUR_NEIGHBORS = ((1, 0), (-1, 0), (0, 1), (0, -1))
_CONN4 = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


def _shift(a, di, dj, fill=False):
    out = np.full(a.shape, fill, dtype=a.dtype)
    src_i = slice(max(0, -di), a.shape[0] - max(0, di))
    src_j = slice(max(0, -dj), a.shape[1] - max(0, dj))
    dst_i = slice(max(0, di), a.shape[0] - max(0, -di))
    dst_j = slice(max(0, dj), a.shape[1] - max(0, -dj))
    out[dst_i, dst_j] = a[src_i, src_j]
    return out


def extremal_distance_fd(domain: GridDomain):
    """Extremal distance between E and F: reciprocal Dirichlet capacity.

    Five-point Laplacian on the free cells, conjugate gradients to absolute
    residual 1e-10; the discrete energy sums (u_p - u_q)^2 over all adjacent
    cell pairs of the closed domain (the spacing cancels in two dimensions).
    """
    free, e_set, f_set = domain.free, domain.e_cells, domain.f_cells
    closed = free | e_set | f_set
    labels, _ = ndi.label(closed, structure=_CONN4)
    e_labels = set(np.unique(labels[e_set])) - {0}
    f_labels = set(np.unique(labels[f_set])) - {0}
    joint = e_labels & f_labels
    if not joint:
        raise DisconnectedDomain("E and F lie in different grid components")
    keep = np.isin(labels, sorted(joint))
    free = free & keep
    e_set = e_set & keep
    f_set = f_set & keep

    n = int(free.sum())
    if n == 0:
        raise DisconnectedDomain("no free cells between E and F")
    index = -np.ones(free.shape, dtype=np.int64)
    index[free] = np.arange(n)

    diag = np.zeros(n)
    rhs = np.zeros(n)
    rows, cols, vals = [], [], []
    fi = index[free]
    for di, dj in _FOUR_NEIGHBORS:
        nb_free = _shift(free, di, dj)
        nb_e = _shift(e_set, di, dj)
        nb_f = _shift(f_set, di, dj)
        contributes = (nb_free | nb_e | nb_f)[free]
        diag += contributes.astype(float)
        rhs += nb_f[free].astype(float)
        pair = free & _shift(free, di, dj)
        if pair.any():
            rows.append(index[pair])
            cols.append(_shift(index, di, dj, fill=-1)[pair])
            vals.append(-np.ones(int(pair.sum())))
    rows = np.concatenate(rows + [fi])
    cols = np.concatenate(cols + [fi])
    vals = np.concatenate(vals + [diag])
    a_mat = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))

    u, info = spla.cg(a_mat, rhs, rtol=0.0, atol=1e-10, maxiter=40 * n)
    if info != 0:
        raise SolverDivergence(f"conjugate gradients returned info = {info}")

    values = np.full(free.shape, np.nan)
    values[free] = u
    values[e_set] = 0.0
    values[f_set] = 1.0
    energy = 0.0
    for di, dj in ((1, 0), (0, 1)):
        nb = _shift(values, 0 - di, 0 - dj, fill=np.nan)
        both = ~np.isnan(values) & ~np.isnan(nb)
        diff = values[both] - nb[both]
        energy += float(np.dot(diff, diff))
    if energy <= 0.0:
        raise SolverDivergence("zero Dirichlet energy")
    return 1.0 / energy


def square_domain(n):
    """Unit square with opposite vertical sides marked (distance 1)."""
    free = np.ones((n, n), dtype=bool)
    e_set = np.zeros((n, n), dtype=bool)
    f_set = np.zeros((n, n), dtype=bool)
    e_set[0, :] = True
    f_set[-1, :] = True
    free[0, :] = False
    free[-1, :] = False
    return GridDomain(free=free, e_cells=e_set, f_cells=f_set, spacing=1.0 / n)


def _disk_centers(n):
    # n x n cells covering the disk plus a 4-cell exterior margin, so the
    # circular boundary is surrounded by marked cells in every direction
    h = 2.0 / (n - 8)
    start = -(1.0 + 4.0 * h) + 0.5 * h
    coords = start + np.arange(n) * h
    x, y = np.meshgrid(coords, coords, indexing="ij")
    return x, y, h


def grotzsch_domain(r, n):
    """Disk minus the segment [0, r]: E the segment band, F the exterior.

    The vertical coordinate is shifted by half a cell so one row of centers
    lies exactly on the slit line; the rasterized slit band is then a single
    cell thick, which halves the capacity bias of the thickened obstacle.
    """
    if not 0.0 < r < 1.0:
        raise OutOfRange(f"r = {r} outside (0, 1)")
    x, y, h = _disk_centers(n)
    y = y - 0.5 * h
    rho = np.hypot(x, y)
    inside = rho < 1.0
    # conservative rasterization: exclude cells whose center is within h/2
    dx = np.maximum(np.maximum(-x, x - r), 0.0)
    seg_dist = np.hypot(dx, y)
    e_set = inside & (seg_dist <= h / 2.0)
    f_set = ~inside
    free = inside & ~e_set
    return GridDomain(free=free, e_cells=e_set, f_cells=f_set, spacing=h)


def _polyline_distance(x, y, vertices):
    d = np.full(x.shape, np.inf)
    for a, b in zip(vertices[:-1], vertices[1:]):
        ax, ay = a.real, a.imag
        bx, by = b.real, b.imag
        vx, vy = bx - ax, by - ay
        norm2 = vx * vx + vy * vy
        if norm2 == 0.0:
            d = np.minimum(d, np.hypot(x - ax, y - ay))
            continue
        t = np.clip(((x - ax) * vx + (y - ay) * vy) / norm2, 0.0, 1.0)
        d = np.minimum(d, np.hypot(x - (ax + t * vx), y - (ay + t * vy)))
    return d


def disk_joining_domain(path_vertices, arc: Arc, n):
    """Disk minus a joining path: E the path band, F the exterior arc cells."""
    x, y, h = _disk_centers(n)
    rho = np.hypot(x, y)
    inside = rho < 1.0
    path_dist = _polyline_distance(x, y, [complex(v) for v in path_vertices])
    e_set = inside & (path_dist <= h / 2.0)
    theta = np.mod(np.arctan2(y, x), TWO_PI)
    on_arc = (np.mod(theta - arc.alpha, TWO_PI) <= arc.length)
    f_set = ~inside & on_arc & (rho < 1.0 + 4.0 * h)
    free = inside & ~e_set
    return GridDomain(free=free, e_cells=e_set, f_cells=f_set, spacing=h)


def beurling_gap(z, arc: Arc, joining_path, grid_n=192):
    """Harmonic measure, extremal-distance estimate, and their product.

    ``joining_path`` is a polyline from z to a point of the circle off the
    arc.  Returns ``(omega, lambda_est, product)`` with
    product = omega * exp(pi * lambda_est); the estimate uses the
    finite-difference solver on a grid_n x grid_n rasterization.
    """
    z = complex(z)
    vertices = [z] + [complex(v) for v in joining_path]
    end = vertices[-1]
    if abs(abs(end) - 1.0) > 0.05:
        raise PathTouchesArc("path must end on the unit circle")
    end_angle = math.atan2(end.imag, end.real)
    if arc.contains_angle(end_angle):
        raise PathTouchesArc("path terminates on the measured arc")
    for v in vertices[:-1]:
        if abs(v) < 1.0 and arc.contains_angle(math.atan2(v.imag, v.real)):
            pass  # interior vertices may share an angle with the arc
    omega = harmonic_measure_arc(z, arc)
    domain = disk_joining_domain(vertices, arc, grid_n)
    if np.any(domain.e_cells & domain.f_cells):
        raise PathTouchesArc("rasterized path overlaps the arc cells")
    lam = extremal_distance_fd(domain)
    return omega, lam, omega * math.exp(math.pi * lam)
