"""Scenario-driven command line front end.

Each subcommand runs one task of a scenario file and writes its artifacts to
the output directory: ``simulate`` an orbit CSV plus the serialized model
block, ``certify`` a certificate JSON, ``ratio`` a distance-ratio CSV,
``classify`` a landing report JSON, ``invariants`` the conformal-invariant
report and the Beurling CSV, and ``suite`` the full acceptance battery.

Artifact bytes are deterministic functions of the scenario (fixed float
formats, sorted JSON keys, no timestamps) and all files are written
atomically (temp file plus rename).  Exit codes: 0 on success, 2 when a
task-level assertion fails, 3 on configuration errors, 4 on numeric
failures; failures leave a machine-readable ``errors.json``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import acceptance, boundary, certifier, invariants, semigroup
from .classify import classify as classify_orbit, report_to_json_dict
from .errors import (
    BackwardTimeExceeded,
    ConfigError,
    EscapeNotReached,
    InvalidSpec,
    InversionDivergence,
    KoenigslabError,
    QuadratureTolerance,
    SolverDivergence,
)
from .models import build_model, list_families
from .scenario import Scenario, model_block_text, parse_scenario

__all__ = ["main"]

EXIT_OK = 0
EXIT_ASSERTION = 2
EXIT_CONFIG = 3
EXIT_NUMERIC = 4

_NUMERIC_ERRORS = (
    InversionDivergence,
    SolverDivergence,
    QuadratureTolerance,
    BackwardTimeExceeded,
    EscapeNotReached,
)


class TaskAssertionError(KoenigslabError):
    """A task-level validation failed; maps to exit code 2."""


def atomic_write(path, data):
    """Write text atomically: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_text(payload):
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _resolve_orbit(model, sc: Scenario):
    z0 = sc.z0
    if z0 is None:
        z0 = complex(model.chart.inverse(sc.w0))
    return semigroup.backward_orbit(model, z0, sc.t_max, sc.dt)


def task_simulate(model, sc, out_dir):
    orbit = _resolve_orbit(model, sc)
    w0 = complex(orbit.omega_points[0])
    linear = np.max(np.abs(orbit.omega_points - (w0 - orbit.times)))
    if linear > 1e-10:
        raise TaskAssertionError(f"linearization residual {linear:.2e} > 1e-10")
    level_dev = float(np.max(np.abs(np.imag(orbit.omega_points) - orbit.level)))
    if level_dev > 1e-12:
        raise TaskAssertionError(f"orbit level drift {level_dev:.2e} > 1e-12")
    if np.any(np.abs(orbit.disk_points) >= 1.0):
        raise TaskAssertionError("disk sample escaped the open disk")
    if orbit.landing is not None and abs(abs(orbit.landing) - 1.0) > 1e-12:
        raise TaskAssertionError("landing estimate is not on the unit circle")
    atomic_write(os.path.join(out_dir, "orbit.csv"), semigroup.orbit_to_csv(orbit))
    atomic_write(os.path.join(out_dir, "model.cfg"), model_block_text(sc.spec))
    meta = {
        "direction": orbit.direction,
        "level": orbit.level,
        "tau": {"re": model.tau.real, "im": model.tau.imag},
        "landing": (
            None
            if orbit.landing is None
            else {"re": orbit.landing.real, "im": orbit.landing.imag}
        ),
        "boundary": [
            {
                "y": comp.y,
                "x_max": getattr(comp, "x_max", None),
            }
            for comp in model.chart.boundary_components()
        ],
    }
    atomic_write(os.path.join(out_dir, "orbit_meta.json"), _json_text(meta))


def task_certify(model, sc, out_dir):
    orbit = _resolve_orbit(model, sc)
    cert = certifier.certify(model, orbit)
    if np.any(cert.distances > cert.lengths + 1e-9):
        raise TaskAssertionError("soundness violated: k > l on a pair")
    if cert.verdict == certifier.VERDICT_CERTIFIED:
        resid = float(
            np.max(cert.lengths - cert.a_value * cert.distances - cert.b_value)
        )
        if resid > 1e-6:
            raise TaskAssertionError(f"certificate residual {resid:.2e} > 1e-6")
    atomic_write(
        os.path.join(out_dir, "certificate.json"), certifier.certificate_to_json(cert)
    )


def task_ratio(model, sc, out_dir):
    orbit = _resolve_orbit(model, sc)
    series = boundary.ratio_series(model, orbit)
    from .models import boundary_distance

    full = np.asarray(boundary_distance(model, orbit.omega_points))
    split_min = np.minimum(series.delta_plus, series.delta_minus)
    if np.max(np.abs(split_min - full)) > 1e-12:
        raise TaskAssertionError("boundary split does not partition the boundary")
    if series.verdict == boundary.VERDICT_BOUNDED:
        c = series.bound
        if np.any(series.ratios > c + 1e-12) or np.any(series.ratios < 1.0 / c - 1e-12):
            raise TaskAssertionError("bounded verdict violates its own constant")
    atomic_write(
        os.path.join(out_dir, "ratio.csv"), boundary.ratio_series_to_csv(series)
    )


def task_classify(model, sc, out_dir):
    orbit = _resolve_orbit(model, sc)
    report = classify_orbit(model, orbit)
    if np.any(np.abs(report.angle_series) > math.pi / 2.0 + 1e-9):
        raise TaskAssertionError("angle series leaves [-pi/2, pi/2]")
    atomic_write(
        os.path.join(out_dir, "report.json"),
        _json_text(report_to_json_dict(report)),
    )


def task_invariants(sc, out_dir, grid=None):
    n = grid or (sc.grid if sc is not None else 256)
    rows = []
    for r in (0.3, 0.5, 0.7):
        mu = invariants.grotzsch_mu(r)
        lam_closed = invariants.extremal_distance_grotzsch(r)
        lam_fd = invariants.extremal_distance_fd(invariants.grotzsch_domain(r, n))
        relerr = abs(lam_fd - lam_closed) / lam_closed
        rows.append(
            {
                "r": r,
                "mu": mu,
                "lambda_closed": lam_closed,
                "lambda_fd": lam_fd,
                "relerr": relerr,
            }
        )
        if relerr > 0.02:
            raise TaskAssertionError(f"fd extremal distance off by {relerr:.2%} at r={r}")
    sym = invariants.grotzsch_mu(1.0 / math.sqrt(2.0))
    if abs(sym - math.pi / 2.0) > 1e-10:
        raise TaskAssertionError("symmetric-point modulus identity failed")
    beurling_lines = ["omega,lambda,product"]
    prev = None
    for k in range(20):
        half = (math.pi / 2.0) * (0.85 ** k)
        arc = invariants.Arc(math.pi - half, math.pi + half)
        om, lam, prod = invariants.beurling_gap(0.0, arc, [1.0], grid_n=192)
        if prod > 30.0:
            raise TaskAssertionError(f"beurling product {prod:.2f} > 30")
        if prev is not None and not (om < prev[0] and lam > prev[1]):
            raise TaskAssertionError("beurling suite lost monotonicity")
        prev = (om, lam)
        beurling_lines.append(f"{om:.12g},{lam:.12g},{prod:.12g}")
    atomic_write(
        os.path.join(out_dir, "invariants.json"), _json_text({"grid": n, "rows": rows})
    )
    atomic_write(
        os.path.join(out_dir, "beurling.csv"), "\n".join(beurling_lines) + "\n"
    )


def task_suite(out_dir, grid, seed):
    results = acceptance.run_all(grid=grid or 512, seed=seed)
    lines = []
    all_ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        lines.append(f"{status} {res.name}: {res.detail}")
        all_ok &= res.passed
    report = {
        "results": [
            {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
        ],
        "allPassed": all_ok,
    }
    atomic_write(os.path.join(out_dir, "suite_report.json"), _json_text(report))
    print("\n".join(lines))
    if not all_ok:
        raise TaskAssertionError("acceptance suite has failing criteria")


def _write_error(out_dir, exc, task):
    payload = {
        "error": type(exc).__name__,
        "message": str(exc),
        "task": task,
    }
    try:
        atomic_write(os.path.join(out_dir, "errors.json"), _json_text(payload))
    except OSError:
        pass


def build_parser():
    parser = argparse.ArgumentParser(
        prog="koenigslab",
        description="Scenario experiments for holomorphic semigroup models",
    )
    parser.add_argument(
        "--list-models", action="store_true", help="print the model families and exit"
    )
    sub = parser.add_subparsers(dest="command")
    for name in ("simulate", "certify", "ratio", "classify", "invariants", "suite"):
        p = sub.add_parser(name)
        if name not in ("suite", "invariants"):
            p.add_argument("--scenario", required=True)
        else:
            p.add_argument("--scenario", required=False, default=None)
        p.add_argument("--out", required=True)
        p.add_argument("--grid", type=int, default=None)
        p.add_argument("--seed", type=int, default=20260809)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_models:
        for fam in list_families():
            print(fam)
        return EXIT_OK
    if args.command is None:
        parser.print_help()
        return EXIT_CONFIG

    out_dir = args.out
    os.makedirs(out_dir, exist_ok=True)
    sc = None
    task = args.command
    try:
        if args.scenario is not None:
            try:
                with open(args.scenario) as handle:
                    text = handle.read()
            except OSError as exc:
                raise ConfigError(f"cannot read scenario: {exc}") from exc
            sc = parse_scenario(text)
            if task not in ("suite", "invariants") and task not in sc.tasks:
                raise ConfigError(
                    f"scenario does not declare task {task!r} (tasks: {sc.tasks})"
                )
        elif task not in ("suite", "invariants"):
            raise ConfigError(f"task {task!r} requires --scenario")

        if task == "suite":
            task_suite(out_dir, args.grid, args.seed)
        elif task == "invariants":
            task_invariants(sc, out_dir, grid=args.grid)
        else:
            try:
                model = build_model(sc.spec)
            except InvalidSpec as exc:
                raise ConfigError(str(exc)) from exc
            runner = {
                "simulate": task_simulate,
                "certify": task_certify,
                "ratio": task_ratio,
                "classify": task_classify,
            }[task]
            runner(model, sc, out_dir)
    except ConfigError as exc:
        _write_error(out_dir, exc, task)
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TaskAssertionError as exc:
        _write_error(out_dir, exc, task)
        print(f"assertion failure: {exc}", file=sys.stderr)
        return EXIT_ASSERTION
    except _NUMERIC_ERRORS as exc:
        _write_error(out_dir, exc, task)
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
