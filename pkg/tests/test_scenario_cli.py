"""Scenario parsing and the command-line artifact/exit-code contract."""

import json
import math
import os

import pytest

from koenigslab.cli import main
from koenigslab.errors import ConfigError
from koenigslab.models import Strip, TwoSlit
from koenigslab.scenario import (
    Scenario,
    model_block_text,
    parse_scenario,
    scenario_to_text,
)

SCENARIO_DIR = os.path.join(os.path.dirname(__file__), "..", "scenarios")


def scenario_path(name):
    return os.path.join(SCENARIO_DIR, f"{name}.scenario")


class TestScenarioFormat:
    def test_round_trip(self):
        sc = Scenario(
            spec=TwoSlit(-1.0, math.pi),
            z0=0.1 + 0.2j,
            w0=None,
            t_max=50.0,
            dt=0.5,
            tasks=("simulate", "ratio"),
            grid=128,
        )
        text = scenario_to_text(sc)
        back = parse_scenario(text)
        assert back == sc
        assert scenario_to_text(back) == text

    def test_seventeen_digit_floats(self):
        text = model_block_text(Strip(-math.pi / 2, math.pi / 2))
        assert "-1.5707963267948966" in text

    def test_comments_and_blank_lines(self):
        text = (
            "# a scenario\n[model]\nfamily = \"strip\"\na = -1.0  # lower\n"
            "b = 1.0\n\n[run]\nz0_re = 0.0\nz0_im = 0.0\nt_max = 20.0\n"
            "dt = 0.5\ntasks = \"simulate\"\n"
        )
        sc = parse_scenario(text)
        assert sc.spec == Strip(-1.0, 1.0)

    @pytest.mark.parametrize(
        "mutation",
        [
            lambda t: t.replace('tasks = "simulate"', 'tasks = ""'),
            lambda t: t.replace("[model]", "[other]"),
            lambda t: t.replace("dt = 0.5", "dt = 100.0"),
            lambda t: t.replace("t_max = 20.0\n", ""),
            lambda t: t.replace('tasks = "simulate"', 'tasks = "warp"'),
            lambda t: t + "orphan = 1.0\n[done]\nkey value\n",
        ],
    )
    def test_invalid_scenarios(self, mutation):
        base = (
            "[model]\nfamily = \"strip\"\na = -1.0\nb = 1.0\n\n[run]\n"
            "z0_re = 0.0\nz0_im = 0.0\nt_max = 20.0\ndt = 0.5\n"
            "tasks = \"simulate\"\n"
        )
        with pytest.raises(ConfigError):
            parse_scenario(mutation(base))


class TestCli:
    def test_list_models(self, capsys):
        assert main(["--list-models"]) == 0
        out = capsys.readouterr().out.split()
        assert sorted(out) == ["affine", "halfplane", "slitplane", "strip", "twoslit"]

    def test_simulate_strip(self, tmp_path):
        out = tmp_path / "strip"
        assert main(["simulate", "--scenario", scenario_path("strip"),
                     "--out", str(out)]) == 0
        lines = (out / "orbit.csv").read_text().strip().split("\n")
        assert lines[0] == "t,re_z,im_z,re_w,im_w"
        row = dict(zip(lines[0].split(","), lines[9].split(",")))
        assert float(row["t"]) == 2.0
        assert float(row["re_z"]) == pytest.approx(-math.tanh(1.0), abs=1e-11)
        assert (out / "model.cfg").exists()
        meta = json.loads((out / "orbit_meta.json").read_text())
        assert meta["direction"] == "backward"
        assert meta["tau"]["re"] == pytest.approx(1.0)
        assert meta["landing"]["re"] == pytest.approx(-1.0)
        assert len(meta["boundary"]) == 2

    def test_certify_twoslit(self, tmp_path):
        out = tmp_path / "two"
        assert main(["certify", "--scenario", scenario_path("twoslit"),
                     "--out", str(out)]) == 0
        cert = json.loads((out / "certificate.json").read_text())
        assert cert["verdict"] == "certified"
        assert cert["A"] <= 4.0

    def test_ratio_halfplane(self, tmp_path):
        out = tmp_path / "hp"
        assert main(["ratio", "--scenario", scenario_path("halfplane"),
                     "--out", str(out)]) == 0
        lines = (out / "ratio.csv").read_text().strip().split("\n")
        assert lines[1].split(",")[1] == "inf"

    def test_classify_slitplane(self, tmp_path):
        out = tmp_path / "sp"
        assert main(["classify", "--scenario", scenario_path("slitplane"),
                     "--out", str(out)]) == 0
        report = json.loads((out / "report.json").read_text())
        assert report["verdict"] == "tangential"

    def test_deterministic_artifacts(self, tmp_path):
        out1 = tmp_path / "a"
        out2 = tmp_path / "b"
        for out in (out1, out2):
            assert main(["simulate", "--scenario", scenario_path("affine_twoslit"),
                         "--out", str(out)]) == 0
        assert (out1 / "orbit.csv").read_bytes() == (out2 / "orbit.csv").read_bytes()

    def test_config_error_exit(self, tmp_path):
        bad = tmp_path / "bad.scenario"
        bad.write_text("[model]\nfamily = \"strip\"\na = -1.0\nb = 1.0\n")
        out = tmp_path / "out"
        assert main(["simulate", "--scenario", str(bad), "--out", str(out)]) == 3
        err = json.loads((out / "errors.json").read_text())
        assert err["error"] == "ConfigError"

    def test_task_not_declared(self, tmp_path):
        sc = tmp_path / "only_sim.scenario"
        sc.write_text(
            "[model]\nfamily = \"strip\"\na = -1.0\nb = 1.0\n\n[run]\n"
            "z0_re = 0.0\nz0_im = 0.0\nt_max = 20.0\ndt = 0.5\n"
            "tasks = \"simulate\"\n"
        )
        out = tmp_path / "out"
        assert main(["certify", "--scenario", str(sc), "--out", str(out)]) == 3

    def test_numeric_error_exit(self, tmp_path):
        sc = tmp_path / "exceed.scenario"
        sc.write_text(
            "[model]\nfamily = \"slitplane\"\nx0 = -1.0\ny0 = 0.0\n\n[run]\n"
            "z0_re = 0.0\nz0_im = 0.0\nt_max = 10.0\ndt = 0.5\n"
            "tasks = \"simulate\"\n"
        )
        out = tmp_path / "out"
        assert main(["simulate", "--scenario", str(sc), "--out", str(out)]) == 4
        err = json.loads((out / "errors.json").read_text())
        assert err["error"] == "BackwardTimeExceeded"

    def test_invariants_task(self, tmp_path):
        out = tmp_path / "inv"
        assert main(["invariants", "--out", str(out), "--grid", "160"]) == 0
        inv = json.loads((out / "invariants.json").read_text())
        assert len(inv["rows"]) == 3
        assert all(r["relerr"] <= 0.02 for r in inv["rows"])
        lines = (out / "beurling.csv").read_text().strip().split("\n")
        assert lines[0] == "omega,lambda,product"
        assert len(lines) == 21
