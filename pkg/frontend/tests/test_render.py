"""Rendering every figure kind for every acceptance scenario."""

import hashlib
import json
import os
import subprocess
import sys

import pytest

from orbitfig.render import FigureJob, job_from_dict, render
from orbitfig.schemas import SchemaError

from .conftest import SCENARIOS


def _job(artifact_root, name, kind, out_dir):
    base = artifact_root / name
    inputs = {
        "domain": [base / "orbit.csv", base / "orbit_meta.json"],
        "trajectory": [base / "orbit.csv", base / "orbit_meta.json"],
        "ratio": [base / "ratio.csv"],
        "residual": [base / "certificate.json"],
    }[kind]
    return FigureJob(
        inputs=tuple(str(p) for p in inputs),
        kind=kind,
        out=str(out_dir / f"{name}_{kind}.png"),
    )


@pytest.mark.parametrize("kind", ["domain", "trajectory", "ratio", "residual"])
@pytest.mark.parametrize("name", SCENARIOS)
def test_render_all_scenarios(artifact_root, tmp_path, name, kind):
    job = _job(artifact_root, name, kind, tmp_path)
    out = render(job)
    assert os.path.exists(out)
    assert os.path.getsize(out) > 4096
    with open(out, "rb") as handle:
        assert handle.read(8)[1:4] == b"PNG"


def test_renderer_is_read_only(artifact_root, tmp_path):
    paths = [
        artifact_root / "twoslit" / "orbit.csv",
        artifact_root / "twoslit" / "orbit_meta.json",
    ]
    before = [hashlib.sha256(p.read_bytes()).hexdigest() for p in paths]
    render(_job(artifact_root, "twoslit", "domain", tmp_path))
    after = [hashlib.sha256(p.read_bytes()).hexdigest() for p in paths]
    assert before == after


def test_job_validation(artifact_root, tmp_path):
    with pytest.raises(SchemaError, match="kind"):
        job_from_dict({"inputs": ["x"], "kind": "sculpture", "out": "y.png"})
    with pytest.raises(SchemaError, match="does not exist"):
        FigureJob(inputs=("/nonexistent.csv",), kind="ratio", out="y.png")
    with pytest.raises(SchemaError, match="missing key"):
        job_from_dict({"inputs": ["x"], "kind": "ratio"})


def test_missing_column_propagates(artifact_root, tmp_path):
    src = (artifact_root / "strip" / "ratio.csv").read_text()
    lines = src.split("\n")
    lines[0] = "t,delta_plus,delta_minus"
    broken = tmp_path / "ratio.csv"
    broken.write_text("\n".join(lines))
    job = FigureJob(inputs=(str(broken),), kind="ratio", out=str(tmp_path / "r.png"))
    with pytest.raises(SchemaError, match="ratio"):
        render(job)


def test_cli_renders_job_file(artifact_root, tmp_path):
    job = {
        "inputs": [
            str(artifact_root / "twoslit" / "orbit.csv"),
            str(artifact_root / "twoslit" / "orbit_meta.json"),
        ],
        "kind": "domain",
        "out": str(tmp_path / "cli_domain.png"),
    }
    job_path = tmp_path / "job.json"
    job_path.write_text(json.dumps(job))
    proc = subprocess.run(
        [sys.executable, "-m", "orbitfig.cli", "--job", str(job_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert os.path.exists(job["out"])


def test_cli_schema_error_exit(tmp_path):
    job_path = tmp_path / "job.json"
    job_path.write_text(json.dumps({"inputs": [], "kind": "ratio", "out": "x.png"}))
    proc = subprocess.run(
        [sys.executable, "-m", "orbitfig.cli", "--job", str(job_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert "schema error" in proc.stderr
