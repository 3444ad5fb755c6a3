"""Closed-form catalog of planar domains convex in the positive direction.

Each family packages a conformal map h of the unit disk onto a domain Omega
that is starlike at infinity (w in Omega implies w + t in Omega for t >= 0),
normalized so that h(0) = 0.  The map, its derivative and its inverse are all
closed-form (the two-slit family needs a scalar Newton solve in strip
coordinates, everything else is explicit):

* ``HalfPlane(a)``      Omega = {Im w > a},               a < 0
* ``Strip(a, b)``       Omega = {a < Im w < b},           a < 0 < b
* ``SlitPlane(x0, y0)`` Omega = C minus {Re w <= x0, Im w = y0}
* ``TwoSlit(x0, g)``    Omega = C minus {Re w <= x0, Im w = +/-g}, g > 0
* ``AffineOfModel``     s*Omega + c for positive real s and complex c

The strip uses the logarithm of a Moebius transform; the slit plane uses the
Koebe map 4z/(1-z)^2; the two-slit domain uses the classical channel map
xi -> xi + exp(xi) acting on the strip {|Im xi| < pi}.  Normalization to
h(0) = 0 is achieved by a hyperbolic rotation of the disk, which for the
strip and two-slit families collapses to a constant shift of the strip
coordinate.

Every family also exposes internal routines (density, distances along a
horizontal line, boundary geometry) evaluated directly in its linearizing
coordinate.  This matters: points of a backward orbit approach the unit
circle exponentially fast, and double-precision disk coordinates saturate
long before t = 200, while strip coordinates stay perfectly conditioned.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import (
    InvalidSpec,
    InversionDivergence,
    PointOutsideDisk,
    PointOutsideDomain,
)

__all__ = [
    "HalfPlane",
    "Strip",
    "SlitPlane",
    "TwoSlit",
    "AffineOfModel",
    "ModelSpec",
    "Line",
    "HalfLine",
    "FixedPoint",
    "KoenigsModel",
    "build_model",
    "h_eval",
    "h_deriv",
    "h_inverse",
    "contains",
    "boundary_distance",
    "spec_to_config",
    "spec_from_config",
    "list_families",
]

# Points produced by clamping saturated disk coordinates stay strictly inside
# the open disk at this radius.
_CLAMP_RADIUS = 1.0 - 1e-15


# ---------------------------------------------------------------------------
# model specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfPlane:
    """Upper half-plane {Im w > a}; must contain the origin, so a < 0."""

    a: float


@dataclass(frozen=True)
class Strip:
    """Horizontal strip {a < Im w < b}; must contain the origin."""

    a: float
    b: float


@dataclass(frozen=True)
class SlitPlane:
    """Plane minus the leftward half-line {Re w <= x0, Im w = y0}."""

    x0: float
    y0: float


@dataclass(frozen=True)
class TwoSlit:
    """Plane minus two leftward half-lines {Re w <= x0, Im w = +/-halfgap}."""

    x0: float
    halfgap: float


@dataclass(frozen=True)
class AffineOfModel:
    """Affine image s*Omega + c of an inner model, s real positive.

    Positive real scaling and translation preserve starlikeness at infinity.
    """

    scale: float
    translate: complex
    inner: "ModelSpec"


ModelSpec = Union[HalfPlane, Strip, SlitPlane, TwoSlit, AffineOfModel]


# ---------------------------------------------------------------------------
# symbolic boundary pieces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Line:
    """Full horizontal boundary line {Im w = y}."""

    y: float

    def distance(self, w):
        return np.abs(np.imag(w) - self.y)

    def nearest_point(self, w):
        return complex(np.real(w), self.y)


@dataclass(frozen=True)
class HalfLine:
    """Leftward horizontal boundary half-line {Re w <= x_max, Im w = y}."""

    y: float
    x_max: float

    def distance(self, w):
        x = np.real(w)
        dy = np.imag(w) - self.y
        dx = np.maximum(x - self.x_max, 0.0)
        return np.hypot(dx, dy)

    def nearest_point(self, w):
        x = min(float(np.real(w)), self.x_max)
        return complex(x, self.y)


# ---------------------------------------------------------------------------
# fixed-point metadata
# ---------------------------------------------------------------------------

KIND_DENJOY_WOLFF = "denjoy_wolff"
KIND_REPELLING = "repelling"
KIND_SUPER_REPELLING = "super_repelling"


@dataclass(frozen=True)
class FixedPoint:
    point: complex
    kind: str
    mu: Optional[float] = None  # repelling spectral value, kind == repelling


# ---------------------------------------------------------------------------
# family map implementations
# ---------------------------------------------------------------------------

def _clamp_disk(z):
    """Push saturated coordinates back inside the open unit disk.

    Backward-orbit points approach the circle exponentially fast; once
    1 - |z| underflows, the closed forms round onto the circle itself.  The
    clamp keeps stored samples valid disk points at machine precision.
    """
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    scale = np.where(r >= _CLAMP_RADIUS, _CLAMP_RADIUS / np.maximum(r, 1e-300), 1.0)
    out = z * scale
    if out.ndim == 0:
        return complex(out)
    return out


def _strip_point_distance(xi1, xi2, half_width):
    """Hyperbolic distance between two points of {|Im xi| < half_width}.

    Works in strip coordinates throughout, so horizontal separations of
    hundreds of units are handled without under/overflow.  Density convention
    1/(1-|z|^2); the standard strip-to-half-plane exponential map gives

        k = 1/2 * arccosh(1 + R),
        R = (cosh(dx/2) - cos(da/2)) / (cos(a1/2) * cos(a2/2)),

    in coordinates rescaled so the half-width is pi.
    """
    s = math.pi / half_width
    x1, a1 = np.real(xi1) * s, np.imag(xi1) * s
    x2, a2 = np.real(xi2) * s, np.imag(xi2) * s
    c1 = np.cos(a1 / 2.0)
    c2 = np.cos(a2 / 2.0)
    half_dx = np.abs(x1 - x2) / 2.0
    cos_da = np.cos((a1 - a2) / 2.0)
    # cosh overflows near |dx|/2 ~ 710; past that use the exact asymptotics
    # arccosh(1 + R) -> log(2R) with 2R -> exp(half_dx) / (c1*c2).
    big = half_dx > 350.0
    safe = np.where(big, 0.0, half_dx)
    r_small = (np.cosh(safe) - cos_da) / (c1 * c2)
    k_small = 0.5 * np.arccosh(np.maximum(1.0, 1.0 + r_small))
    k_big = 0.5 * (half_dx - np.log(c1 * c2))
    out = np.where(big, k_big, k_small)
    if np.ndim(out) == 0:
        return float(out)
    return out


class _StripMap:
    """h(z) = beta * Log((1 + conj(q) z) / (1 - q z)) onto {a < Im w < b}."""

    def __init__(self, a, b):
        self.a = float(a)
        self.b = float(b)
        self.beta = (b - a) / math.pi
        self.mid = 0.5 * (a + b)
        self.theta = -math.pi * (a + b) / (2.0 * (b - a))
        self.q = cmath.exp(1j * self.theta)
        self.cos_theta = math.cos(self.theta)

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        val = self.beta * np.log((1.0 + np.conj(self.q) * z) / (1.0 - self.q * z))
        return complex(val) if val.ndim == 0 else val

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        val = 2.0 * self.beta * self.cos_theta / (
            (1.0 + np.conj(self.q) * z) * (1.0 - self.q * z)
        )
        return complex(val) if val.ndim == 0 else val

    def inverse(self, w):
        w = np.asarray(w, dtype=complex)
        e = np.exp(w / self.beta)
        val = (e - 1.0) / (np.conj(self.q) + e * self.q)
        val = _clamp_disk(val)
        return val

    def contains(self, w):
        y = np.imag(w)
        return (y > self.a) & (y < self.b)

    def boundary_components(self):
        return (Line(self.a), Line(self.b))

    def density(self, w):
        y = np.imag(w)
        width = self.b - self.a
        return (math.pi / (2.0 * width)) / np.cos(math.pi * (y - self.mid) / width)

    def level_distance(self, level, x1, x2):
        half = 0.5 * (self.b - self.a)
        xi1 = np.asarray(x1) + 1j * (level - self.mid)
        xi2 = np.asarray(x2) + 1j * (level - self.mid)
        return _strip_point_distance(xi1, xi2, half)

    def generator_from_omega(self, w):
        e = np.exp(np.asarray(w, dtype=complex) / self.beta)
        val = 2.0 * self.cos_theta * e / (
            self.beta * (np.conj(self.q) + e * self.q) ** 2
        )
        return complex(val) if np.ndim(val) == 0 else val

    def metadata(self):
        mu = -math.pi / (self.b - self.a)
        tau = np.conj(self.q)
        sigma = -self.q
        return dict(
            tau=complex(tau),
            fixed_points=(
                FixedPoint(complex(tau), KIND_DENJOY_WOLFF),
                FixedPoint(complex(sigma), KIND_REPELLING, mu),
            ),
            maximal_strip=(self.a, self.b),
            maximal_halfplane=None,
            classification="hyperbolic",
        )


class _HalfPlaneMap:
    """h(z) = 2 a i z / (1 + z) onto {Im w > a}, a < 0."""

    def __init__(self, a):
        self.a = float(a)
        self.c = 2j * self.a

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        val = self.c * z / (1.0 + z)
        return complex(val) if val.ndim == 0 else val

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        val = self.c / (1.0 + z) ** 2
        return complex(val) if val.ndim == 0 else val

    def inverse(self, w):
        w = np.asarray(w, dtype=complex)
        val = w / (self.c - w)
        return _clamp_disk(val)

    def contains(self, w):
        return np.imag(w) > self.a

    def boundary_components(self):
        return (Line(self.a),)

    def density(self, w):
        return 1.0 / (2.0 * (np.imag(w) - self.a))

    def level_distance(self, level, x1, x2):
        h = level - self.a
        dx = np.abs(np.asarray(x1) - np.asarray(x2))
        val = 0.5 * np.arccosh(1.0 + dx * dx / (2.0 * h * h))
        return float(val) if np.ndim(val) == 0 else val

    def generator_from_omega(self, w):
        w = np.asarray(w, dtype=complex)
        val = self.c / (self.c - w) ** 2
        return complex(val) if val.ndim == 0 else val

    def metadata(self):
        return dict(
            tau=complex(-1.0),
            fixed_points=(FixedPoint(complex(-1.0), KIND_DENJOY_WOLFF),),
            maximal_strip=None,
            maximal_halfplane=(self.a, "above"),
            classification="parabolic",
        )


def _koebe(u):
    return 4.0 * u / (1.0 - u) ** 2


def _koebe_deriv(u):
    return 4.0 * (1.0 + u) / (1.0 - u) ** 3


def _koebe_inverse(v):
    s = np.sqrt(np.asarray(v, dtype=complex) + 1.0)
    return (s - 1.0) / (s + 1.0)


class _SlitPlaneMap:
    """Koebe map composed with a disk rotation, onto C minus one half-line.

    H(z) = 4z/(1-z)^2 + p maps onto the plane minus {Re <= x0, Im = y0} with
    p = x0 + 1 + i y0; the hyperbolic rotation T moving 0 to H^{-1}(0)
    restores the normalization h(0) = 0.
    """

    def __init__(self, x0, y0):
        self.x0 = float(x0)
        self.y0 = float(y0)
        self.p = complex(x0 + 1.0, y0)
        self.zstar = complex(_koebe_inverse(-self.p))
        self.zstar_conj = self.zstar.conjugate()

    def _t(self, z):
        return (z + self.zstar) / (1.0 + self.zstar_conj * z)

    def _t_inv(self, u):
        return (u - self.zstar) / (1.0 - self.zstar_conj * u)

    def _t_deriv(self, z):
        return (1.0 - abs(self.zstar) ** 2) / (1.0 + self.zstar_conj * z) ** 2

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        val = _koebe(self._t(z)) + self.p
        return complex(val) if val.ndim == 0 else val

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        val = _koebe_deriv(self._t(z)) * self._t_deriv(z)
        return complex(val) if val.ndim == 0 else val

    def inverse(self, w):
        w = np.asarray(w, dtype=complex)
        val = self._t_inv(_koebe_inverse(w - self.p))
        return _clamp_disk(val)

    def contains(self, w):
        on_slit = (np.imag(w) == self.y0) & (np.real(w) <= self.x0)
        return np.logical_not(on_slit)

    def boundary_components(self):
        return (HalfLine(self.y0, self.x0),)

    def density(self, w):
        # the rotation T drops out of the density pullback
        u = _koebe_inverse(np.asarray(w, dtype=complex) - self.p)
        return 1.0 / ((1.0 - np.abs(u) ** 2) * np.abs(_koebe_deriv(u)))

    def level_distance(self, level, x1, x2):
        w1 = np.asarray(x1) + 1j * level
        w2 = np.asarray(x2) + 1j * level
        u1 = _koebe_inverse(w1 - self.p)
        u2 = _koebe_inverse(w2 - self.p)
        num = np.abs(u1 - u2)
        den = np.abs(1.0 - np.conj(u1) * u2)
        val = np.arctanh(num / den)
        return float(val) if np.ndim(val) == 0 else val

    def generator_from_omega(self, w):
        u = _koebe_inverse(np.asarray(w, dtype=complex) - self.p)
        z = self._t_inv(u)
        val = 1.0 / (_koebe_deriv(u) * self._t_deriv(z))
        return complex(val) if np.ndim(val) == 0 else val

    def metadata(self):
        tau = complex((1.0 - self.zstar) / (1.0 - self.zstar_conj))
        side = "above" if self.y0 <= 0.0 else "below"
        return dict(
            tau=tau,
            fixed_points=(FixedPoint(tau, KIND_DENJOY_WOLFF),),
            maximal_strip=None,
            maximal_halfplane=(self.y0, side),
            classification="parabolic",
        )


def _channel_residual(xi, v):
    return xi + np.exp(np.minimum(np.real(xi), 700.0) + 1j * np.imag(xi)) - v


def _channel_newton(xi, v, lo, hi, tol_vec, max_iter):
    """Damped Newton for xi + exp(xi) = v, Im xi confined to [lo, hi].

    The map preserves the sign of the imaginary part, so confining each
    iterate to the sub-strip of its target keeps Newton from jumping across
    the slits.
    """
    f = _channel_residual(xi, v)
    for _ in range(max_iter):
        active = np.abs(f) > tol_vec
        if not active.any():
            break
        step = f / (1.0 + np.exp(np.minimum(np.real(xi), 700.0) + 1j * np.imag(xi)))
        alpha = np.ones(xi.shape)
        cand, f_cand = xi, f
        for _ in range(10):
            cand = xi - np.where(active, alpha * step, 0.0)
            cand = np.real(cand) + 1j * np.clip(np.imag(cand), lo, hi)
            f_cand = _channel_residual(cand, v)
            worse = active & (np.abs(f_cand) > np.abs(f))
            if not worse.any():
                break
            alpha = np.where(worse, alpha / 2.0, alpha)
        xi = np.where(active, cand, xi)
        f = np.where(active, f_cand, f)
    return xi, f


def _solve_channel(v, tol=1e-13, max_iter=200):
    """Solve xi + exp(xi) = v for xi in the strip {|Im xi| < pi}.

    Two candidate starts cover the asymptotic regimes (xi ~ v deep in the
    channel, xi ~ Log v in the logarithmic far field); the better one seeds a
    sign-confined damped Newton.  Any stragglers are finished by continuation
    along the rightward ray {v + t}, which stays inside the image domain.
    """
    v = np.asarray(v, dtype=complex)
    scalar = v.ndim == 0
    v = np.atleast_1d(v).astype(complex)
    tol_vec = tol * np.maximum(1.0, np.abs(v))

    # confinement: solutions share the sign of Im v (real v gives real xi)
    pos = np.imag(v) > 0.0
    neg = np.imag(v) < 0.0
    lo = np.where(neg, -math.pi + 1e-12, 0.0)
    hi = np.where(pos, math.pi - 1e-12, 0.0)

    def clip_band(x):
        return np.real(x) + 1j * np.clip(np.imag(x), lo, hi)

    # candidate A: channel regime, xi <- v - exp(xi) (contracts for Re xi < 0)
    cand_a = clip_band(v)
    for _ in range(24):
        cand_a = clip_band(v - np.exp(np.minimum(np.real(cand_a), 50.0)
                                      + 1j * np.imag(cand_a)))
    # candidate B: logarithmic regime, xi <- Log(v - xi); the principal
    # branch is always correct because arg(exp(xi)) = Im xi lies in (-pi, pi)
    log_arg = np.where(np.abs(v) < 1e-8, 1.0, v)
    cand_b = clip_band(np.log(log_arg))
    for _ in range(24):
        arg = v - cand_b
        arg = np.where(np.abs(arg) < 1e-250, 1e-250, arg)
        cand_b = clip_band(np.log(arg))
    use_a = np.abs(_channel_residual(cand_a, v)) <= np.abs(
        _channel_residual(cand_b, v)
    )
    xi = np.where(use_a, cand_a, cand_b)

    # candidate C: square-root unfolding near the two slit tips, where
    # xi + exp(xi) folds quadratically (xi = i*pi*s + eta, v - tip ~ -eta^2/2)
    for tip_sign in (1.0, -1.0):
        tip = -1.0 + 1j * math.pi * tip_sign
        near = np.abs(v - tip) < 0.5
        if not near.any():
            continue
        eta = np.sqrt(-2.0 * (v - tip))
        wrong_side = (np.imag(eta) * tip_sign) > 0.0
        eta = np.where(wrong_side, -eta, eta)
        cand_c = clip_band(1j * math.pi * tip_sign + eta)
        better = near & (
            np.abs(_channel_residual(cand_c, v)) < np.abs(_channel_residual(xi, v))
        )
        xi = np.where(better, cand_c, xi)

    xi, f = _channel_newton(xi, v, lo, hi, tol_vec, max_iter)

    bad = np.flatnonzero(np.abs(f) > tol_vec)
    for idx in bad:
        target = v[idx]
        # start far to the right, where the logarithmic guess is reliable,
        # and walk back along the horizontal ray (inside the domain by
        # convexity in the positive direction)
        t_far = max(0.0, 8.0 - target.real) + 2.0 * abs(target.imag)
        steps = np.linspace(1.0, 0.0, 65)
        xi_k = np.atleast_1d(np.log(target + t_far))
        lo_k = np.atleast_1d(lo[idx])
        hi_k = np.atleast_1d(hi[idx])
        for frac in steps:
            v_k = np.atleast_1d(target + frac * t_far)
            tol_k = np.atleast_1d(tol * max(1.0, abs(target)))
            xi_k = np.real(xi_k) + 1j * np.clip(np.imag(xi_k), lo_k, hi_k)
            xi_k, f_k = _channel_newton(xi_k, v_k, lo_k, hi_k, tol_k, 60)
        if np.abs(f_k[0]) > tol_vec[idx]:
            raise InversionDivergence(float(np.abs(f_k[0])), max_iter)
        xi[idx] = xi_k[0]
        f[idx] = f_k[0]

    if np.any(np.abs(f) > tol_vec):
        raise InversionDivergence(float(np.max(np.abs(f))), max_iter)
    if scalar:
        return complex(xi[0])
    return xi


class _TwoSlitMap:
    """Channel map s*(xi + exp(xi)) + x0 + s onto the two-slit plane.

    xi(z) = zeta* + 2 Log((1+z)/(1-z)) ranges over {|Im xi| < pi}; the real
    shift zeta* solves the normalization h(0) = 0 and the scale s = g/pi
    places the slit tips at x0 +/- i g.
    """

    def __init__(self, x0, halfgap):
        self.x0 = float(x0)
        self.g = float(halfgap)
        self.s = self.g / math.pi
        # real root of s*(zeta + exp(zeta)) + x0 + s = 0
        v0 = -(self.x0 + self.s) / self.s
        self.zeta_star = float(np.real(_solve_channel(complex(v0))))

    def _xi_from_disk(self, z):
        z = np.asarray(z, dtype=complex)
        return self.zeta_star + 2.0 * np.log((1.0 + z) / (1.0 - z))

    def _omega_from_xi(self, xi):
        return self.s * (xi + np.exp(xi)) + self.x0 + self.s

    def _xi_from_omega(self, w):
        v = (np.asarray(w, dtype=complex) - self.x0) / self.s - 1.0
        return _solve_channel(v)

    def eval(self, z):
        val = self._omega_from_xi(self._xi_from_disk(z))
        return complex(val) if np.ndim(val) == 0 else val

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        xi = self._xi_from_disk(z)
        val = self.s * (1.0 + np.exp(xi)) * 4.0 / (1.0 - z * z)
        return complex(val) if val.ndim == 0 else val

    def inverse(self, w):
        xi = self._xi_from_omega(w)
        val = np.tanh((xi - self.zeta_star) / 4.0)
        return _clamp_disk(val)

    def contains(self, w):
        y = np.imag(w)
        on_slit = ((y == self.g) | (y == -self.g)) & (np.real(w) <= self.x0)
        return np.logical_not(on_slit)

    def boundary_components(self):
        return (HalfLine(self.g, self.x0), HalfLine(-self.g, self.x0))

    def density(self, w):
        xi = self._xi_from_omega(w)
        lam_strip = 0.25 / np.cos(np.imag(xi) / 2.0)
        return lam_strip / (self.s * np.abs(1.0 + np.exp(xi)))

    def level_distance(self, level, x1, x2):
        xi1 = self._xi_from_omega(np.asarray(x1) + 1j * level)
        xi2 = self._xi_from_omega(np.asarray(x2) + 1j * level)
        return _strip_point_distance(xi1, xi2, math.pi)

    def generator_from_omega(self, w):
        xi = self._xi_from_omega(w)
        sech = 1.0 / np.cosh((xi - self.zeta_star) / 4.0)
        val = sech * sech / (4.0 * self.s * (1.0 + np.exp(xi)))
        return complex(val) if np.ndim(val) == 0 else val

    def metadata(self):
        mu = -math.pi / (2.0 * self.g)
        return dict(
            tau=complex(1.0),
            fixed_points=(
                FixedPoint(complex(1.0), KIND_DENJOY_WOLFF),
                FixedPoint(complex(-1.0), KIND_REPELLING, mu),
            ),
            maximal_strip=(-self.g, self.g),
            maximal_halfplane=None,
            classification="parabolic",
        )


class _AffineMap:
    """s * h_inner(T(z)) + c with a hyperbolic rotation T fixing h(0) = 0."""

    def __init__(self, scale, translate, inner_map):
        self.s = float(scale)
        self.c = complex(translate)
        self.inner = inner_map
        base = -self.c / self.s
        if not bool(self.inner.contains(base)):
            raise InvalidSpec(
                "affine image does not contain the origin: "
                f"(0 - translate)/scale = {base} is outside the inner domain"
            )
        self.zstar = complex(self.inner.inverse(base))
        self.zstar_conj = self.zstar.conjugate()

    def _t(self, z):
        return (z + self.zstar) / (1.0 + self.zstar_conj * z)

    def _t_inv(self, u):
        return (u - self.zstar) / (1.0 - self.zstar_conj * u)

    def _t_deriv(self, z):
        return (1.0 - abs(self.zstar) ** 2) / (1.0 + self.zstar_conj * z) ** 2

    def _pull(self, w):
        return (np.asarray(w, dtype=complex) - self.c) / self.s

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        val = self.s * np.asarray(self.inner.eval(self._t(z))) + self.c
        return complex(val) if val.ndim == 0 else val

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        val = self.s * np.asarray(self.inner.deriv(self._t(z))) * self._t_deriv(z)
        return complex(val) if val.ndim == 0 else val

    def inverse(self, w):
        inner_z = np.asarray(self.inner.inverse(self._pull(w)), dtype=complex)
        return _clamp_disk(self._t_inv(inner_z))

    def contains(self, w):
        return self.inner.contains(self._pull(w))

    def boundary_components(self):
        out = []
        for comp in self.inner.boundary_components():
            y = self.s * comp.y + self.c.imag
            if isinstance(comp, Line):
                out.append(Line(y))
            else:
                out.append(HalfLine(y, self.s * comp.x_max + self.c.real))
        return tuple(out)

    def density(self, w):
        return np.asarray(self.inner.density(self._pull(w))) / self.s

    def level_distance(self, level, x1, x2):
        inner_level = (level - self.c.imag) / self.s
        return self.inner.level_distance(
            inner_level,
            (np.asarray(x1) - self.c.real) / self.s,
            (np.asarray(x2) - self.c.real) / self.s,
        )

    def generator_from_omega(self, w):
        # h'(z) = s * h_inner'(T z) * T'(z)  =>  G = G_inner(T z) / (s T'(z))
        inner_g = np.asarray(self.inner.generator_from_omega(self._pull(w)))
        z = np.asarray(self.inverse(w), dtype=complex)
        val = inner_g / (self.s * self._t_deriv(z))
        return complex(val) if np.ndim(val) == 0 else val

    def metadata(self):
        meta = self.inner.metadata()
        fixed = []
        for fp in meta["fixed_points"]:
            pt = complex(self._t_inv(fp.point))
            pt /= abs(pt)
            mu = fp.mu / self.s if fp.mu is not None else None
            fixed.append(FixedPoint(pt, fp.kind, mu))
        tau = complex(self._t_inv(meta["tau"]))
        tau /= abs(tau)
        strip = meta["maximal_strip"]
        if strip is not None:
            strip = (self.s * strip[0] + self.c.imag, self.s * strip[1] + self.c.imag)
        half = meta["maximal_halfplane"]
        if half is not None:
            half = (self.s * half[0] + self.c.imag, half[1])
        return dict(
            tau=tau,
            fixed_points=tuple(fixed),
            maximal_strip=strip,
            maximal_halfplane=half,
            classification=meta["classification"],
        )


# ---------------------------------------------------------------------------
# public model object and operations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KoenigsModel:
    """A built catalog model: conformal map plus derived semigroup metadata."""

    spec: ModelSpec
    tau: complex
    fixed_points: tuple
    maximal_strip: Optional[tuple]
    maximal_halfplane: Optional[tuple]
    classification: str
    chart: object = field(repr=False, compare=False, default=None)

    def repelling_points(self):
        return tuple(fp for fp in self.fixed_points if fp.kind == KIND_REPELLING)


def _build_map(spec):
    if isinstance(spec, HalfPlane):
        if not math.isfinite(spec.a):
            raise InvalidSpec("half-plane level must be finite")
        if spec.a >= 0.0:
            raise InvalidSpec(
                "half-plane {Im w > a} must contain the origin, so a < 0"
            )
        return _HalfPlaneMap(spec.a)
    if isinstance(spec, Strip):
        if not (math.isfinite(spec.a) and math.isfinite(spec.b)):
            raise InvalidSpec("strip edges must be finite")
        if not spec.a < spec.b:
            raise InvalidSpec("strip requires a < b")
        if not (spec.a < 0.0 < spec.b):
            raise InvalidSpec("strip must contain the origin, so a < 0 < b")
        return _StripMap(spec.a, spec.b)
    if isinstance(spec, SlitPlane):
        if not (math.isfinite(spec.x0) and math.isfinite(spec.y0)):
            raise InvalidSpec("slit tip must be finite")
        if spec.y0 == 0.0 and spec.x0 >= 0.0:
            raise InvalidSpec("slit passes through the origin")
        return _SlitPlaneMap(spec.x0, spec.y0)
    if isinstance(spec, TwoSlit):
        if not (math.isfinite(spec.x0) and math.isfinite(spec.halfgap)):
            raise InvalidSpec("two-slit parameters must be finite")
        if spec.halfgap <= 0.0:
            raise InvalidSpec("two-slit requires halfgap > 0")
        return _TwoSlitMap(spec.x0, spec.halfgap)
    if isinstance(spec, AffineOfModel):
        if not (math.isfinite(spec.scale) and spec.scale > 0.0):
            raise InvalidSpec("affine scale must be a positive real")
        inner = _build_map(spec.inner)
        return _AffineMap(spec.scale, spec.translate, inner)
    raise InvalidSpec(f"unknown model family: {spec!r}")


def build_model(spec: ModelSpec) -> KoenigsModel:
    """Build the normalized conformal model and its derived metadata."""
    chart = _build_map(spec)
    meta = chart.metadata()
    model = KoenigsModel(
        spec=spec,
        tau=meta["tau"],
        fixed_points=meta["fixed_points"],
        maximal_strip=meta["maximal_strip"],
        maximal_halfplane=meta["maximal_halfplane"],
        classification=meta["classification"],
        chart=chart,
    )
    origin = chart.eval(0.0)
    if abs(origin) > 1e-12:
        raise InvalidSpec(f"normalization failed: h(0) = {origin}")
    return model


def _require_disk(z):
    if np.any(np.abs(z) >= 1.0):
        raise PointOutsideDisk(f"|z| >= 1 for z = {z}")


def _require_domain(model, w):
    if not np.all(model.chart.contains(w)):
        raise PointOutsideDomain(f"point {w} is outside the domain")


def h_eval(model: KoenigsModel, z) -> complex:
    """Evaluate the normalized conformal map at a disk point."""
    _require_disk(z)
    return model.chart.eval(z)


def h_deriv(model: KoenigsModel, z) -> complex:
    """Complex derivative of the map; never zero on the open disk."""
    _require_disk(z)
    return model.chart.deriv(z)


def h_inverse(model: KoenigsModel, w) -> complex:
    """Map a domain point back to the disk (|h(result) - w| <= 1e-10)."""
    _require_domain(model, w)
    return model.chart.inverse(w)


def contains(model: KoenigsModel, w) -> bool:
    """Exact geometric membership test (open domain; slit tips excluded)."""
    out = model.chart.contains(w)
    if np.ndim(out) == 0:
        return bool(out)
    return out


def boundary_distance(model: KoenigsModel, w) -> float:
    """Euclidean distance to the domain boundary (exact per family)."""
    _require_domain(model, w)
    comps = model.chart.boundary_components()
    dist = np.amin([c.distance(w) for c in comps], axis=0)
    if np.ndim(dist) == 0:
        return float(dist)
    return dist


# ---------------------------------------------------------------------------
# config-block (de)serialization
# ---------------------------------------------------------------------------

_FAMILY_NAMES = {
    HalfPlane: "halfplane",
    Strip: "strip",
    SlitPlane: "slitplane",
    TwoSlit: "twoslit",
    AffineOfModel: "affine",
}


def list_families():
    """Names of the constructible families."""
    return tuple(_FAMILY_NAMES.values())


def spec_to_config(spec: ModelSpec) -> dict:
    """Flatten a spec to the key-value form used by scenario files."""
    if isinstance(spec, HalfPlane):
        return {"family": "halfplane", "a": spec.a}
    if isinstance(spec, Strip):
        return {"family": "strip", "a": spec.a, "b": spec.b}
    if isinstance(spec, SlitPlane):
        return {"family": "slitplane", "x0": spec.x0, "y0": spec.y0}
    if isinstance(spec, TwoSlit):
        return {"family": "twoslit", "x0": spec.x0, "halfgap": spec.halfgap}
    if isinstance(spec, AffineOfModel):
        return {
            "family": "affine",
            "scale": spec.scale,
            "translate_re": spec.translate.real,
            "translate_im": spec.translate.imag,
            "inner": spec_to_config(spec.inner),
        }
    raise InvalidSpec(f"unknown model family: {spec!r}")


def spec_from_config(cfg: dict) -> ModelSpec:
    """Inverse of :func:`spec_to_config`; raises InvalidSpec on bad keys."""
    try:
        family = cfg["family"]
    except KeyError:
        raise InvalidSpec("model block is missing the 'family' key") from None
    try:
        if family == "halfplane":
            return HalfPlane(float(cfg["a"]))
        if family == "strip":
            return Strip(float(cfg["a"]), float(cfg["b"]))
        if family == "slitplane":
            return SlitPlane(float(cfg["x0"]), float(cfg["y0"]))
        if family == "twoslit":
            return TwoSlit(float(cfg["x0"]), float(cfg["halfgap"]))
        if family == "affine":
            return AffineOfModel(
                float(cfg["scale"]),
                complex(float(cfg["translate_re"]), float(cfg["translate_im"])),
                spec_from_config(cfg["inner"]),
            )
    except KeyError as exc:
        raise InvalidSpec(f"model family '{family}' is missing key {exc}") from None
    raise InvalidSpec(f"unknown model family name: {family!r}")
