"""Flow, orbits, generator, hyperbolic step, spectral values."""

import math

import numpy as np
import pytest

from koenigslab.errors import (
    BackwardTimeExceeded,
    NotRepelling,
    OrbitLeavesStolz,
    PointOutsideDisk,
)
from koenigslab.semigroup import (
    angular_derivative,
    backward_orbit,
    backward_orbit_identity_check,
    forward_trajectory,
    generator,
    generator_modulus_series,
    geometric_times,
    hyperbolic_step,
    lipschitz_check,
    max_backward_time,
    orbit_to_csv,
    phi,
    spectral_value,
)


def random_disk(n, rmax=0.8, seed=0):
    rng = np.random.default_rng(seed)
    return rmax * np.sqrt(rng.random(n)) * np.exp(2j * math.pi * rng.random(n))


class TestPhi:
    def test_identity_at_zero(self, twoslit_model):
        for z in random_disk(50, seed=2):
            assert abs(phi(twoslit_model, 0.0, z) - z) <= 1e-12

    def test_strip_closed_form(self, strip_model):
        assert phi(strip_model, 2.0, 0.0) == pytest.approx(math.tanh(1.0), abs=1e-12)

    def test_halfplane_closed_form(self, halfplane_model):
        assert phi(halfplane_model, 2.0, 0.0) == pytest.approx(
            (-1.0 + 1.0j) / 2.0, abs=1e-12
        )

    def test_semigroup_law(self, slitplane_model):
        rng = np.random.default_rng(4)
        z = random_disk(1000, seed=9)
        t = 10.0 * rng.random(1000)
        s = 10.0 * rng.random(1000)
        one = np.asarray(phi(slitplane_model, t + s, z))
        two = np.asarray(phi(slitplane_model, t, phi(slitplane_model, s, z)))
        assert np.max(np.abs(one - two)) <= 1e-9

    def test_rejects_outside_disk(self, strip_model):
        with pytest.raises(PointOutsideDisk):
            phi(strip_model, 1.0, 1.5)

    def test_rejects_negative_time(self, strip_model):
        with pytest.raises(ValueError):
            phi(strip_model, -1.0, 0.0)


class TestTrajectories:
    def test_forward_strip(self, strip_model):
        traj = forward_trajectory(strip_model, 0.0, 50.0, 0.5)
        assert traj.landing == pytest.approx(1.0)
        real_parts = traj.disk_points.real
        # increasing until the samples saturate against the unit circle
        assert np.all(np.diff(real_parts) >= 0)
        assert np.all(np.diff(real_parts[real_parts < 0.999999]) > 0)
        assert np.max(np.abs(traj.disk_points.imag)) == 0.0
        assert np.all(np.abs(traj.disk_points) < 1.0)

    def test_forward_halfplane_landing(self, halfplane_model):
        traj = forward_trajectory(halfplane_model, 0.0, 1000.0, 1.0)
        assert traj.landing == pytest.approx(-1.0)

    def test_forward_linearization(self, twoslit_model):
        traj = forward_trajectory(twoslit_model, 0.1 + 0.2j, 20.0, 0.25)
        shifted = traj.omega_points - traj.omega_points[0]
        assert np.max(np.abs(shifted - traj.times)) <= 1e-10

    def test_backward_strip(self, strip_model, strip_orbit):
        idx = np.searchsorted(strip_orbit.times, 2.0)
        assert strip_orbit.disk_points[idx] == pytest.approx(
            -math.tanh(1.0), abs=1e-12
        )
        assert strip_orbit.landing == pytest.approx(-1.0)

    def test_backward_twoslit(self, twoslit_orbit):
        assert twoslit_orbit.landing == pytest.approx(-1.0)
        real_parts = twoslit_orbit.disk_points.real
        assert np.all(np.diff(real_parts) <= 1e-15)  # saturation-plateau jitter
        assert np.all(np.diff(real_parts[real_parts > -0.999999]) < 0)
        assert np.max(np.abs(twoslit_orbit.disk_points.imag)) == 0.0

    def test_backward_exits_slit(self, slitplane_model):
        # base point on the slit line: the ray hits the tip at t = 1 exactly
        with pytest.raises(BackwardTimeExceeded) as err:
            backward_orbit(slitplane_model, 0.0, 10.0, 0.5)
        assert err.value.t_star == pytest.approx(1.0, abs=1e-12)
        assert max_backward_time(slitplane_model, 0.0) == pytest.approx(1.0)

    def test_orbit_invariants(self, affine_orbit):
        w0 = affine_orbit.omega_points[0]
        assert np.max(np.abs(affine_orbit.omega_points - (w0 - affine_orbit.times))) == 0.0
        assert np.max(np.abs(affine_orbit.omega_points.imag - affine_orbit.level)) == 0.0
        assert np.all(np.abs(affine_orbit.disk_points) < 1.0)
        assert abs(abs(affine_orbit.landing) - 1.0) <= 1e-12

    def test_csv_format(self, strip_orbit):
        text = orbit_to_csv(strip_orbit)
        lines = text.strip().split("\n")
        assert lines[0] == "t,re_z,im_z,re_w,im_w"
        assert len(lines) == len(strip_orbit.times) + 1
        row = lines[9].split(",")  # t = 2.0
        assert float(row[0]) == 2.0
        assert float(row[1]) == pytest.approx(-math.tanh(1.0), abs=1e-11)


class TestIdentityCheck:
    def test_strip_residual(self, strip_model, strip_orbit):
        assert backward_orbit_identity_check(strip_model, strip_orbit, 300) <= 1e-9

    def test_twoslit_residual(self, twoslit_model, twoslit_orbit):
        assert backward_orbit_identity_check(twoslit_model, twoslit_orbit, 300) <= 1e-9

    def test_endpoint_cases(self, strip_model, strip_orbit):
        # s = 0 and s = t are exercised by construction: phi_t(gamma(t)) = z0
        t = strip_orbit.times[40]
        z = strip_orbit.disk_points[40]
        assert abs(phi(strip_model, t, z) - strip_orbit.z0) <= 1e-9

    def test_requires_backward(self, strip_model):
        traj = forward_trajectory(strip_model, 0.0, 20.0, 0.5)
        with pytest.raises(ValueError):
            backward_orbit_identity_check(strip_model, traj)


class TestGenerator:
    def test_strip_value(self, strip_model):
        assert generator(strip_model, 0.0) == pytest.approx(0.5, abs=1e-12)

    def test_ode_residual(self, twoslit_model):
        rng = np.random.default_rng(12)
        eps = 1e-6
        worst = 0.0
        for _ in range(100):
            z = complex(random_disk(1, rmax=0.7, seed=int(rng.integers(1 << 30)))[0])
            t = 5.0 * rng.random()
            base = phi(twoslit_model, t, z)
            fd = (phi(twoslit_model, t + eps, z) - base) / eps
            worst = max(worst, abs(fd - generator(twoslit_model, base)))
        assert worst <= 1e-5

    def test_vanishes_at_repelling_point(self, twoslit_model):
        mods = [abs(generator(twoslit_model, -r)) for r in (0.9, 0.99, 0.999)]
        assert mods[0] > mods[1] > mods[2]
        assert mods[2] <= 1e-3

    def test_series_matches_pointwise(self, twoslit_model, twoslit_orbit):
        series = generator_modulus_series(twoslit_model, twoslit_orbit)
        for idx in (0, 4, 16):
            direct = abs(generator(twoslit_model, twoslit_orbit.disk_points[idx]))
            assert series[idx] == pytest.approx(direct, rel=1e-9)

    def test_decay_along_orbit(self, twoslit_model, twoslit_orbit):
        series = generator_modulus_series(twoslit_model, twoslit_orbit)
        assert series[-1] <= 1e-2


class TestStep:
    def test_strip_constant_half(self, strip_model, strip_orbit):
        report = hyperbolic_step(strip_model, strip_orbit, tail_start=100.0)
        assert np.max(np.abs(report.tail_values - 0.5)) <= 1e-6
        assert report.step_bound == pytest.approx(0.5, abs=1e-6)
        assert report.regular

    def test_halfplane_bounded(self, halfplane_model, halfplane_orbit):
        report = hyperbolic_step(halfplane_model, halfplane_orbit, tail_start=500.0)
        assert report.step_bound <= 0.5
        assert report.regular

    def test_forward_matches_backward_chain(self, strip_model, strip_orbit):
        # the mirrored forward trajectory visits the same omega points
        traj = forward_trajectory(strip_model, strip_orbit.disk_points[80], 20.0, 0.25)
        fwd = hyperbolic_step(strip_model, traj, tail_start=2.0)
        assert np.max(np.abs(fwd.tail_values - 0.5)) <= 1e-6

    def test_window_validation(self, strip_model, strip_orbit):
        with pytest.raises(ValueError):
            hyperbolic_step(strip_model, strip_orbit, tail_start=195.0)


class TestSpectral:
    def test_strip_value(self, strip_model):
        assert spectral_value(strip_model, -1.0) == pytest.approx(-1.0, rel=1e-3)

    def test_twoslit_value(self, twoslit_model):
        assert spectral_value(twoslit_model, -1.0) == pytest.approx(-0.5, rel=1e-3)

    def test_amplitude_consistency(self, twoslit_model):
        ylow, yhigh = twoslit_model.maximal_strip
        assert -math.pi / (yhigh - ylow) == pytest.approx(
            spectral_value(twoslit_model, -1.0), rel=1e-3
        )

    def test_exponent_law(self, twoslit_model):
        d1 = angular_derivative(twoslit_model, -1.0, 1.0)
        d2 = angular_derivative(twoslit_model, -1.0, 2.0)
        assert abs(d2 - d1 * d1) <= 1e-3 * abs(d2)

    def test_not_repelling(self, halfplane_model, strip_model):
        with pytest.raises(NotRepelling):
            spectral_value(halfplane_model, -1.0)
        with pytest.raises(NotRepelling):
            spectral_value(strip_model, 1.0)  # tau is not repelling


class TestLipschitz:
    def test_strip(self, strip_model, strip_orbit):
        c, violation = lipschitz_check(strip_model, strip_orbit)
        assert c == pytest.approx(0.5, abs=1e-9)
        assert violation <= 1e-9

    def test_twoslit(self, twoslit_model, twoslit_orbit):
        c, violation = lipschitz_check(twoslit_model, twoslit_orbit)
        assert violation <= 1e-9
        assert c > 0

    def test_degenerate_pair(self, strip_model, strip_orbit):
        c, _ = lipschitz_check(strip_model, strip_orbit)
        # t1 = t2 contributes |gamma - gamma| - 0 = 0
        assert abs(strip_orbit.disk_points[5] - strip_orbit.disk_points[5]) <= c * 0.0

    def test_tangential_orbit_rejected(self, halfplane_model, halfplane_orbit):
        with pytest.raises(NotRepelling):
            lipschitz_check(halfplane_model, halfplane_orbit)

    def test_stolz_guard(self, strip_model, strip_orbit):
        # the real orbit has |sigma - z| = 1 - |z| exactly, so any opening
        # below 1 must be rejected
        with pytest.raises(OrbitLeavesStolz):
            lipschitz_check(strip_model, strip_orbit, stolz_opening=0.5)


def test_geometric_times():
    grid = geometric_times(200.0)
    assert grid[0] == 0.0
    assert grid[-1] == 200.0
    assert np.all(np.diff(grid) > 0)
    inner = grid[1:-1]
    assert np.allclose(inner[1:] / inner[:-1], 2.0 ** 0.25)
