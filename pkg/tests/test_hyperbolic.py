"""Disk and domain hyperbolic metric: densities, distances, lengths, bounds."""

import math

import numpy as np
import pytest

from koenigslab.errors import PathLeavesDomain, PointOutsideDisk
from koenigslab.hyperbolic import (
    CurveSegment,
    density_disk,
    density_omega,
    distance_lemma_bounds,
    hyp_length,
    k_disk,
    k_omega,
    level_distance,
    straight_upper_bounds,
)
from koenigslab.models import boundary_distance, h_eval


def random_disk(n, rmax=0.9, seed=0):
    rng = np.random.default_rng(seed)
    return rmax * np.sqrt(rng.random(n)) * np.exp(2j * math.pi * rng.random(n))


class TestDiskMetric:
    def test_density_values(self):
        assert density_disk(0.0) == 1.0
        assert density_disk(0.5) == pytest.approx(4.0 / 3.0, abs=1e-15)

    def test_density_rotation_invariance(self):
        for theta in (0.3, 1.2, 4.0):
            z = 0.37 + 0.41j
            assert density_disk(z * np.exp(1j * theta)) == pytest.approx(
                density_disk(z), abs=1e-14
            )

    def test_density_guard(self):
        with pytest.raises(PointOutsideDisk):
            density_disk(1.0)

    def test_k_values(self):
        assert k_disk(0.0, 0.0) == 0.0
        assert k_disk(0.0, 0.5) == pytest.approx(math.atanh(0.5), abs=1e-15)

    def test_k_as_density_integral(self):
        # independent oracle: integrate the density along the radius
        r = 0.73
        ts = np.linspace(0.0, r, 20001)
        integral = np.trapezoid(1.0 / (1.0 - ts * ts), ts)
        assert k_disk(0.0, r) == pytest.approx(integral, abs=1e-8)

    def test_moebius_invariance(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            a = 0.8 * math.sqrt(rng.random()) * np.exp(2j * math.pi * rng.random())
            theta = 2 * math.pi * rng.random()
            z, w = random_disk(2, seed=int(rng.integers(1 << 30)))

            def moebius(u):
                return np.exp(1j * theta) * (u - a) / (1 - np.conj(a) * u)

            assert k_disk(moebius(z), moebius(w)) == pytest.approx(
                k_disk(z, w), abs=1e-12
            )

    def test_symmetry_and_triangle(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            z, w, v = random_disk(3, seed=int(rng.integers(1 << 30)))
            assert k_disk(z, w) == pytest.approx(k_disk(w, z), abs=1e-12)
            assert k_disk(z, w) <= k_disk(z, v) + k_disk(v, w) + 1e-12


class TestDomainMetric:
    def test_strip_axis_density(self, strip_model):
        for x in (-3.0, 0.0, 10.0):
            assert density_omega(strip_model, x) == pytest.approx(0.5, abs=1e-13)

    def test_halfplane_level_density(self, halfplane_model):
        for x in (-5.0, 2.0):
            assert density_omega(halfplane_model, complex(x, 0.0)) == pytest.approx(
                0.5, abs=1e-13
            )

    def test_density_sandwich(self, twoslit_model):
        pts = random_disk(1000, rmax=0.95, seed=3)
        w = np.asarray(twoslit_model.chart.eval(pts))
        for wi in w:
            lam = density_omega(twoslit_model, wi)
            delta = boundary_distance(twoslit_model, wi)
            assert 1.0 / (4.0 * delta) - 1e-12 <= lam <= 1.0 / delta + 1e-12

    def test_k_omega_strip_axis(self, strip_model):
        assert k_omega(strip_model, 0.0, -10.0) == pytest.approx(5.0, abs=1e-10)
        assert k_omega(strip_model, 1.0, 1.0) == 0.0

    def test_k_omega_matches_level_distance(self, twoslit_model):
        # same quantity through two routes: disk preimages vs strip coordinates
        for x1, x2 in ((0.0, -3.0), (-1.0, -7.5), (2.0, -12.0)):
            a = k_omega(twoslit_model, x1, x2)
            b = level_distance(twoslit_model, 0.0, x1, x2)
            assert a == pytest.approx(b, abs=1e-9)

    def test_level_distance_deep_tail(self, strip_model):
        # far beyond double-precision disk coordinates
        assert level_distance(strip_model, 0.0, -500.0, -700.0) == pytest.approx(
            100.0, abs=1e-10
        )

    def test_monotonicity_under_inclusion(self, strip_model, twoslit_model):
        # the symmetric strip sits inside the two-slit domain; distances shrink
        rng = np.random.default_rng(7)
        pts = random_disk(2000, rmax=0.9, seed=13)
        w = np.asarray(strip_model.chart.eval(pts)).reshape(2, -1)
        # rescale into the two-slit maximal strip {|Im| < pi}
        w = 2.0 * w
        for w1, w2 in zip(w[0][:1000], w[1][:1000]):
            k_small = k_omega(twoslit_model, w1, w2)
            k_big = k_omega_strip2 = None
            # strip {|Im|<pi} distance via the scaled symmetric strip model
            k_strip = 0.5 * np.arccosh(
                1.0
                + (np.cosh((w1.real - w2.real) / 2.0) - np.cos((w1.imag - w2.imag) / 2.0))
                / (np.cos(w1.imag / 2.0) * np.cos(w2.imag / 2.0))
            )
            assert k_small <= k_strip + 1e-9


class TestLength:
    def test_strip_orbit_length(self, strip_model, strip_orbit):
        seg = CurveSegment(strip_orbit, 0.0, 30.0)
        assert hyp_length(strip_model, seg) == pytest.approx(15.0, abs=1e-8)

    def test_degenerate_segment(self, strip_model, strip_orbit):
        assert hyp_length(strip_model, CurveSegment(strip_orbit, 5.0, 5.0)) == 0.0

    def test_geodesic_equality(self, strip_model, strip_orbit):
        seg = CurveSegment(strip_orbit, 2.0, 11.0)
        k = k_omega(strip_model, -2.0, -11.0)
        assert hyp_length(strip_model, seg) == pytest.approx(k, abs=1e-8)

    def test_additivity(self, twoslit_model, twoslit_orbit):
        l_full = hyp_length(twoslit_model, CurveSegment(twoslit_orbit, 0.0, 9.0))
        l_a = hyp_length(twoslit_model, CurveSegment(twoslit_orbit, 0.0, 4.0))
        l_b = hyp_length(twoslit_model, CurveSegment(twoslit_orbit, 4.0, 9.0))
        assert l_full == pytest.approx(l_a + l_b, abs=2e-8)

    def test_segment_span_validation(self, strip_orbit):
        with pytest.raises(ValueError):
            CurveSegment(strip_orbit, -1.0, 5.0)
        with pytest.raises(ValueError):
            CurveSegment(strip_orbit, 0.0, 1e9)


class TestDistanceLemma:
    def test_coincident_points(self, strip_model):
        assert distance_lemma_bounds(strip_model, 1.0, 1.0) == (0.0, 0.0, 0.0)

    def test_strip_closed_forms(self, strip_model):
        lower, k, upper = distance_lemma_bounds(strip_model, 0.0, -10.0)
        assert lower == pytest.approx(0.25 * math.log1p(20.0 / math.pi), abs=1e-10)
        assert k == pytest.approx(5.0, abs=1e-10)
        assert upper == pytest.approx(20.0 / math.pi, abs=1e-8)
        assert lower <= k <= upper

    def test_random_pairs_sandwich(self, twoslit_model):
        pts = random_disk(400, rmax=0.9, seed=23)
        w = np.asarray(twoslit_model.chart.eval(pts)).reshape(2, -1)
        checked = 0
        for w1, w2 in zip(w[0], w[1]):
            try:
                lower, k, upper = distance_lemma_bounds(twoslit_model, w1, w2)
            except PathLeavesDomain:
                continue  # straight segment crosses a slit
            assert lower <= k + 1e-9
            assert k <= upper + 1e-8
            checked += 1
        assert checked > 100

    def test_path_outside_domain(self, twoslit_model):
        # straight path from below to above the upper slit crosses it
        with pytest.raises(PathLeavesDomain):
            distance_lemma_bounds(
                twoslit_model,
                complex(-5.0, 2.0),
                complex(-5.0, 4.0),
            )

    def test_vectorized_upper_matches_quad(self, twoslit_model):
        w1 = np.array([0.0 + 0j, -2.0 + 1j])
        w2 = np.array([-5.0 + 0j, 1.0 - 2j])
        fast = straight_upper_bounds(twoslit_model, w1, w2)
        for i in range(2):
            _, _, slow = distance_lemma_bounds(twoslit_model, w1[i], w2[i])
            # the fixed-order rule crosses kinks of delta; 1e-4 is its contract
            assert fast[i] == pytest.approx(slow, rel=1e-4)
