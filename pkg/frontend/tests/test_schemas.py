"""Schema validation and round trips on real producer artifacts."""

import json
import os

import pytest

from orbitfig.schemas import (
    BEURLING_COLUMNS,
    ORBIT_COLUMNS,
    RATIO_COLUMNS,
    SchemaError,
    read_beurling_csv,
    read_certificate_json,
    read_csv_table,
    read_model_cfg,
    read_orbit_csv,
    read_orbit_meta_json,
    read_ratio_csv,
    read_report_json,
    write_csv_table,
    write_json,
)

from .conftest import SCENARIOS


def _csv_round_trip(path, reader, columns):
    table = reader(path)
    text = write_csv_table(table, list(table.keys()))
    again = read_csv_table_from_text(text, columns, path)
    assert list(again.keys()) == list(table.keys())
    for col in table:
        assert again[col] == table[col]


def read_csv_table_from_text(text, columns, label):
    import tempfile

    with tempfile.NamedTemporaryFile("w", suffix=".csv", delete=False) as handle:
        handle.write(text)
        tmp = handle.name
    try:
        return read_csv_table(tmp, columns)
    finally:
        os.unlink(tmp)


class TestRoundTrips:
    @pytest.mark.parametrize("name", SCENARIOS)
    def test_orbit_csv(self, artifact_root, name):
        _csv_round_trip(
            str(artifact_root / name / "orbit.csv"), read_orbit_csv, ORBIT_COLUMNS
        )

    @pytest.mark.parametrize("name", SCENARIOS)
    def test_ratio_csv(self, artifact_root, name):
        _csv_round_trip(
            str(artifact_root / name / "ratio.csv"), read_ratio_csv, RATIO_COLUMNS
        )

    def test_beurling_csv(self, artifact_root):
        _csv_round_trip(
            str(artifact_root / "invariants" / "beurling.csv"),
            read_beurling_csv,
            BEURLING_COLUMNS,
        )

    @pytest.mark.parametrize("name", SCENARIOS)
    def test_certificate_json_bytes(self, artifact_root, name):
        path = str(artifact_root / name / "certificate.json")
        payload = read_certificate_json(path)
        assert write_json(payload) == open(path).read()

    @pytest.mark.parametrize("name", SCENARIOS)
    def test_report_json_bytes(self, artifact_root, name):
        path = str(artifact_root / name / "report.json")
        payload = read_report_json(path)
        assert write_json(payload) == open(path).read()

    @pytest.mark.parametrize("name", SCENARIOS)
    def test_orbit_meta_json_bytes(self, artifact_root, name):
        path = str(artifact_root / name / "orbit_meta.json")
        payload = read_orbit_meta_json(path)
        assert write_json(payload) == open(path).read()

    @pytest.mark.parametrize("name", SCENARIOS)
    def test_model_cfg(self, artifact_root, name):
        sections = read_model_cfg(str(artifact_root / name / "model.cfg"))
        assert "family" in sections["model"]

    def test_invariants_json(self, artifact_root):
        path = str(artifact_root / "invariants" / "invariants.json")
        payload = json.load(open(path))
        assert {"grid", "rows"} <= set(payload)
        for row in payload["rows"]:
            assert {"r", "mu", "lambda_closed", "lambda_fd", "relerr"} <= set(row)


class TestValidation:
    def test_missing_column_named(self, artifact_root, tmp_path):
        src = (artifact_root / "strip" / "orbit.csv").read_text()
        lines = src.split("\n")
        lines[0] = "t,re_z,im_z,re_w"  # drop im_w
        broken = tmp_path / "broken.csv"
        broken.write_text("\n".join(lines))
        with pytest.raises(SchemaError, match="im_w"):
            read_orbit_csv(str(broken))

    def test_ragged_row(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("t,re_z,im_z,re_w,im_w\n1,2,3\n")
        with pytest.raises(SchemaError, match="expected 5 cells"):
            read_orbit_csv(str(bad))

    def test_bad_number(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("t,re_z,im_z,re_w,im_w\n1,2,x,4,5\n")
        with pytest.raises(SchemaError, match="bad number"):
            read_orbit_csv(str(bad))

    def test_missing_json_key(self, tmp_path):
        bad = tmp_path / "cert.json"
        bad.write_text(json.dumps({"verdict": "certified"}))
        with pytest.raises(SchemaError, match="'A'"):
            read_certificate_json(str(bad))

    def test_inf_literals_preserved(self, artifact_root):
        table = read_ratio_csv(str(artifact_root / "halfplane" / "ratio.csv"))
        assert table["delta_plus"][0] == float("inf")
        text = write_csv_table(table, RATIO_COLUMNS)
        assert text.split("\n")[1].split(",")[1] == "inf"
