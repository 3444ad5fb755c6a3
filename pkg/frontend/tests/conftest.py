"""Generate real artifacts once by driving the producing CLI as a subprocess."""

import os
import subprocess
import sys

import pytest

REPO_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
SCENARIOS = ("strip", "twoslit", "halfplane", "slitplane", "affine_twoslit")


def _run_producer(args):
    proc = subprocess.run(
        [sys.executable, "-m", "koenigslab.cli", *args],
        cwd=REPO_ROOT,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def artifact_root(tmp_path_factory):
    root = tmp_path_factory.mktemp("artifacts")
    for name in SCENARIOS:
        scenario = os.path.join(REPO_ROOT, "scenarios", f"{name}.scenario")
        out = root / name
        for task in ("simulate", "certify", "ratio", "classify"):
            _run_producer([task, "--scenario", scenario, "--out", str(out)])
    _run_producer(["invariants", "--out", str(root / "invariants"), "--grid", "160"])
    return root
