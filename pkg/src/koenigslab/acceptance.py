"""Acceptance battery: one callable per top-level numeric criterion.

Each check returns a CriterionResult with the measured quantities in its
detail string; the pytest acceptance module asserts them individually and
the command-line ``suite`` subcommand prints one line per criterion.  All
tolerances are pinned here, not in the callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import boundary, certifier, hyperbolic, invariants, semigroup
from .classify import VERDICT_NON_TANGENTIAL, classify as classify_orbit
from .models import (
    AffineOfModel,
    HalfPlane,
    SlitPlane,
    Strip,
    TwoSlit,
    build_model,
)

__all__ = ["CriterionResult", "catalog_orbits", "run_all", "ALL_CHECKS"]


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str


def _result(name, passed, detail):
    return CriterionResult(name=name, passed=bool(passed), detail=detail)


def catalog_models():
    return {
        "strip": build_model(Strip(-math.pi / 2, math.pi / 2)),
        "halfplane": build_model(HalfPlane(-1.0)),
        "slitplane": build_model(SlitPlane(-1.0, 0.0)),
        "twoslit": build_model(TwoSlit(-1.0, math.pi)),
        "affine": build_model(AffineOfModel(2.0, 1.0 + 0.5j, TwoSlit(-1.0, math.pi))),
    }


def catalog_orbits(models=None):
    """The standard backward orbits exercised by the battery."""
    models = models or catalog_models()
    return {
        "strip": semigroup.backward_orbit(models["strip"], 0.0, 200.0, 0.25),
        "twoslit": semigroup.backward_orbit(models["twoslit"], 0.0, 200.0, 0.25),
        "affine": semigroup.backward_orbit(
            models["affine"], models["affine"].chart.inverse(0.0), 200.0, 0.25
        ),
        "halfplane": semigroup.backward_orbit(models["halfplane"], 0.0, 1000.0, 0.5),
        "slitplane": semigroup.backward_orbit(
            models["slitplane"], models["slitplane"].chart.inverse(1j), 2000.0, 1.0
        ),
    }


def _random_disk(rng, n, rmax=0.9):
    return rmax * np.sqrt(rng.random(n)) * np.exp(2j * math.pi * rng.random(n))


def check_semigroup_axioms(seed=20260809):
    """phi_0 = id to 1e-12 and the composition law to 1e-9, 1e3 triples."""
    rng = np.random.default_rng(seed)
    worst_id = 0.0
    worst_law = 0.0
    for model in catalog_models().values():
        z = _random_disk(rng, 1000)
        t = 10.0 * rng.random(1000)
        s = 10.0 * rng.random(1000)
        z0err = np.abs(np.asarray(semigroup.phi(model, 0.0, z)) - z)
        one = np.asarray(semigroup.phi(model, t + s, z))
        two = np.asarray(semigroup.phi(model, t, semigroup.phi(model, s, z)))
        worst_id = max(worst_id, float(np.max(z0err)))
        worst_law = max(worst_law, float(np.max(np.abs(one - two))))
    passed = worst_id <= 1e-12 and worst_law <= 1e-9
    return _result(
        "semigroup_axioms",
        passed,
        f"identity residual {worst_id:.2e} (<=1e-12), "
        f"composition residual {worst_law:.2e} (<=1e-9)",
    )


def check_backward_identity():
    """phi_s(gamma(t)) = gamma(t-s) to 1e-9 on every catalog orbit."""
    models = catalog_models()
    orbits = catalog_orbits(models)
    worst = 0.0
    for name, orbit in orbits.items():
        res = semigroup.backward_orbit_identity_check(models[name], orbit, 200)
        worst = max(worst, res)
    return _result(
        "backward_orbit_identity", worst <= 1e-9, f"max residual {worst:.2e} (<=1e-9)"
    )


def check_metric_sandwich(seed=20260809):
    """Density sandwich and Distance Lemma on 1e3 random points/pairs."""
    rng = np.random.default_rng(seed)
    sandwich_ok = True
    lemma_ok = True
    detail = []
    for name, model in catalog_models().items():
        z = _random_disk(rng, 1400)
        w = np.asarray(model.chart.eval(z))
        lam = np.asarray(model.chart.density(w))
        delta = np.asarray(hyperbolic._delta(model, w))
        sandwich_ok &= bool(
            np.all(lam >= 1.0 / (4.0 * delta) - 1e-12) and np.all(lam <= 1.0 / delta + 1e-12)
        )
        # pairs whose straight segment stays inside (slits can cut across)
        w1 = w[:700]
        w2 = w[700:1400]
        s_grid = np.linspace(0.0, 1.0, 65)
        seg = w1[None, :] + (w2 - w1)[None, :] * s_grid[:, None]
        good = np.all(np.asarray(model.chart.contains(seg)), axis=0)
        w1, w2 = w1[good], w2[good]
        n_pairs = len(w1)
        z1 = np.asarray(model.chart.inverse(w1))
        z2 = np.asarray(model.chart.inverse(w2))
        k = np.asarray(hyperbolic.k_disk(z1, z2))
        d1 = np.asarray(hyperbolic._delta(model, w1))
        d2 = np.asarray(hyperbolic._delta(model, w2))
        lower = 0.25 * np.log1p(np.abs(w1 - w2) / np.minimum(d1, d2))
        upper = hyperbolic.straight_upper_bounds(model, w1, w2)
        lemma_ok &= bool(
            np.all(lower <= k + 1e-9) and np.all(k <= upper + 1e-6)
        )
        detail.append(f"{name}:{n_pairs}p")
    passed = sandwich_ok and lemma_ok
    return _result(
        "density_sandwich_distance_lemma",
        passed,
        f"sandwich={sandwich_ok}, lemma={lemma_ok} ({', '.join(detail)})",
    )


def check_strip_ideal():
    """Strip orbit: geodesic certificate, constant step 1/2, symmetric ratio."""
    models = catalog_models()
    strip = models["strip"]
    orbit = catalog_orbits(models)["strip"]
    cert = certifier.certify(strip, orbit)
    cert_ok = (
        cert.verdict == certifier.VERDICT_CERTIFIED
        and cert.a_value == 1.0
        and cert.b_value <= 1e-6
    )
    step = semigroup.hyperbolic_step(strip, orbit, tail_start=100.0)
    step_ok = bool(np.all(np.abs(step.tail_values - 0.5) <= 1e-6))
    report = classify_orbit(strip, orbit)
    class_ok = report.verdict == VERDICT_NON_TANGENTIAL
    ratio = boundary.ratio_series(strip, orbit)
    ratio_ok = ratio.verdict == boundary.VERDICT_BOUNDED and bool(
        np.all(np.abs(ratio.ratios - 1.0) <= 1e-9)
    )
    passed = cert_ok and step_ok and class_ok and ratio_ok
    return _result(
        "strip_ideal_case",
        passed,
        f"certified(A={cert.a_value}, B={cert.b_value:.1e}), "
        f"step in [{step.tail_values.min():.9f}, {step.tail_values.max():.9f}], "
        f"verdict={report.verdict}, ratio dev {np.max(np.abs(ratio.ratios-1)):.1e}",
    )


def check_twoslit_constants():
    """Two-slit orbit: explicit constants A=4, B=8+l[0,1] validate; ratio -> 1."""
    models = catalog_models()
    two = models["twoslit"]
    orbit = catalog_orbits(models)["twoslit"]
    consts = certifier.explicit_constants(two, orbit)
    entry = hyperbolic.hyp_length(two, hyperbolic.CurveSegment(orbit, 0.0, 1.0))
    const_ok = (
        abs(consts.a_bound - 4.0) <= 1e-9
        and abs(consts.t_entry - 1.0) <= 1e-9
        and abs(consts.b_bound - (8.0 + entry)) <= 1e-9
    )
    residual = certifier.validate_constants(two, orbit, consts)
    resid_ok = residual <= 1e-6
    ratio = boundary.ratio_series(two, orbit)
    tail = ratio.ratios[len(ratio.ratios) // 2:]
    ratio_ok = ratio.verdict == boundary.VERDICT_BOUNDED and bool(
        np.all(np.abs(tail - 1.0) <= 1e-3)
    )
    passed = const_ok and resid_ok and ratio_ok
    return _result(
        "twoslit_explicit_constants",
        passed,
        f"A={consts.a_bound}, B={consts.b_bound:.6f} (=8+{entry:.6f}), t0={consts.t_entry}, "
        f"pair residual {residual:.2e} (<=1e-6), ratio verdict {ratio.verdict}",
    )


def check_halfplane_tangential():
    """Half-plane orbit: growth refutation with the pinned witness size."""
    models = catalog_models()
    half = models["halfplane"]
    orbit = catalog_orbits(models)["halfplane"]
    cert = certifier.certify(half, orbit)
    i10 = int(np.argmin(np.abs(cert.a_grid - 10.0)))
    b10 = float(cert.minimal_b[i10])
    cert_ok = cert.verdict == certifier.VERDICT_REFUTED_GROWTH and b10 >= 400.0
    ratio = boundary.ratio_series(half, orbit)
    ratio_ok = ratio.verdict == boundary.VERDICT_DIVERGES
    passed = cert_ok and ratio_ok
    return _result(
        "halfplane_tangential",
        passed,
        f"verdict={cert.verdict}, B(A=10)={b10:.1f} (>=400) at T=1000, "
        f"ratio verdict {ratio.verdict}",
    )


def check_spectral_values():
    """Repelling spectral values by difference quotient and strip amplitude."""
    models = catalog_models()
    results = []
    ok = True
    for name, target in (("strip", -1.0), ("twoslit", -0.5)):
        model = models[name]
        mu_quot = semigroup.spectral_value(model, -1.0)
        ylow, yhigh = model.maximal_strip
        mu_amp = -math.pi / (yhigh - ylow)
        ok &= abs(mu_quot - target) <= 1e-3 * abs(target)
        ok &= abs(mu_amp - target) <= 1e-3 * abs(target)
        results.append(f"{name}: quotient {mu_quot:.6f}, amplitude {mu_amp:.6f}")
    return _result("spectral_values", ok, "; ".join(results))


def check_generator(seed=20260809):
    """Generator ODE residual, decay along orbits, Lipschitz bound."""
    rng = np.random.default_rng(seed)
    models = catalog_models()
    orbits = catalog_orbits(models)
    worst_ode = 0.0
    eps = 1e-6
    for model in models.values():
        z = _random_disk(rng, 100, rmax=0.7)
        t = 5.0 * rng.random(100)
        base = np.asarray(semigroup.phi(model, t, z))
        stepped = np.asarray(semigroup.phi(model, t + eps, z))
        g = np.asarray(semigroup.generator(model, base))
        worst_ode = max(worst_ode, float(np.max(np.abs((stepped - base) / eps - g))))
    ode_ok = worst_ode <= 1e-5
    decay_ok = True
    finals = []
    for name in ("strip", "twoslit"):
        series = semigroup.generator_modulus_series(models[name], orbits[name])
        finals.append(float(series[-1]))
        decay_ok &= finals[-1] <= 1e-2
    lip_ok = True
    worst_viol = 0.0
    for name in ("strip", "twoslit", "affine"):
        _, viol = semigroup.lipschitz_check(models[name], orbits[name])
        worst_viol = max(worst_viol, viol)
        lip_ok &= viol <= 1e-9
    passed = ode_ok and decay_ok and lip_ok
    return _result(
        "generator_and_lipschitz",
        passed,
        f"ODE residual {worst_ode:.2e} (<=1e-5), |G| finals {finals[0]:.1e}/{finals[1]:.1e} "
        f"(<=1e-2), Lipschitz violation {worst_viol:.1e} (<=1e-9)",
    )


def check_conformal_invariants(grid=512):
    """Groetzsch modulus identities and the finite-difference cross-check."""
    mu_sym = invariants.grotzsch_mu(1.0 / math.sqrt(2.0))
    sym_ok = abs(mu_sym - math.pi / 2.0) <= 1e-10
    ident_ok = True
    for r in np.arange(0.1, 0.95, 0.1):
        prod = invariants.grotzsch_mu(r) * invariants.grotzsch_mu(math.sqrt(1 - r * r))
        ident_ok &= abs(prod - math.pi ** 2 / 4.0) <= 1e-9
    fd_ok = True
    fd_detail = []
    for r in (0.3, 0.5, 0.7):
        est = invariants.extremal_distance_fd(invariants.grotzsch_domain(r, grid))
        target = invariants.extremal_distance_grotzsch(r)
        rel = abs(est - target) / target
        fd_ok &= rel <= 0.02
        fd_detail.append(f"r={r}: {rel:.3%}")
    lams = [invariants.extremal_distance_grotzsch(10.0 ** (-k)) for k in range(1, 7)]
    mono_ok = bool(np.all(np.diff(lams) > 0.0))
    passed = sym_ok and ident_ok and fd_ok and mono_ok
    return _result(
        "conformal_invariants",
        passed,
        f"mu(1/sqrt2)-pi/2 = {mu_sym - math.pi/2:.1e}, identity ok={ident_ok}, "
        f"fd at {grid}^2: {', '.join(fd_detail)} (<=2%), divergence monotone={mono_ok}",
    )


def check_harmonic_measure(beurling_grid=192):
    """Poisson values, diameter symmetry, and the Beurling product suite."""
    arc_ok = True
    for length in (0.5, 1.0, math.pi, 5.0):
        om = invariants.harmonic_measure_arc(0.0, invariants.Arc(0.3, 0.3 + length))
        arc_ok &= abs(om - length / (2.0 * math.pi)) <= 1e-10
    upper = invariants.Arc(0.0, math.pi)
    diam_ok = True
    for x in (-0.7, 0.0, 0.4, 0.9):
        diam_ok &= abs(invariants.harmonic_measure_arc(x, upper) - 0.5) <= 1e-10
    rows = []
    for k in range(20):
        half = (math.pi / 2.0) * (0.85 ** k)
        arc = invariants.Arc(math.pi - half, math.pi + half)
        rows.append(invariants.beurling_gap(0.0, arc, [1.0], grid_n=beurling_grid))
    products = [r[2] for r in rows]
    omegas = [r[0] for r in rows]
    lams = [r[1] for r in rows]
    beurling_ok = max(products) <= 30.0
    mono_ok = bool(
        np.all(np.diff(omegas) < 0.0) and np.all(np.diff(lams) > 0.0)
    )
    passed = arc_ok and diam_ok and beurling_ok and mono_ok
    return _result(
        "harmonic_measure_beurling",
        passed,
        f"poisson ok={arc_ok}, diameter ok={diam_ok}, max product "
        f"{max(products):.2f} (<=30), monotone decay={mono_ok}",
    )


def check_corollary_sweep():
    """(non-tangential and regular) <=> certified <=> bounded ratio."""
    models = catalog_models()
    orbits = catalog_orbits(models)
    rows = []
    ok = True
    for name, orbit in orbits.items():
        model = models[name]
        report = classify_orbit(model, orbit)
        step = semigroup.hyperbolic_step(
            model, orbit, tail_start=orbit.t_max / 2.0
        )
        cert = certifier.certify(model, orbit)
        ratio = boundary.ratio_series(model, orbit)
        nt_regular = (
            report.verdict == VERDICT_NON_TANGENTIAL and step.regular
        )
        certified = cert.verdict == certifier.VERDICT_CERTIFIED
        bounded = ratio.verdict == boundary.VERDICT_BOUNDED
        ok &= nt_regular == certified == bounded
        rows.append(f"{name}: nt&reg={nt_regular}, cert={certified}, bdd={bounded}")
    return _result("corollary_equivalence_sweep", ok, "; ".join(rows))


ALL_CHECKS = (
    check_semigroup_axioms,
    check_backward_identity,
    check_metric_sandwich,
    check_strip_ideal,
    check_twoslit_constants,
    check_halfplane_tangential,
    check_spectral_values,
    check_generator,
    check_conformal_invariants,
    check_harmonic_measure,
    check_corollary_sweep,
)


def run_all(grid=512, beurling_grid=192, seed=20260809):
    """Run the full battery; returns the list of CriterionResult."""
    results = []
    for fn in ALL_CHECKS:
        kwargs = {}
        if fn is check_conformal_invariants:
            kwargs["grid"] = grid
        elif fn is check_harmonic_measure:
            kwargs["beurling_grid"] = beurling_grid
        elif fn in (check_semigroup_axioms, check_metric_sandwich, check_generator):
            kwargs["seed"] = seed
        results.append(fn(**kwargs))
    return results
