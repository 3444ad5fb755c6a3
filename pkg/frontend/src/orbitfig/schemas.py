"""Readers and round-trip writers for the laboratory artifact formats.

The renderer never imports the producing package; it owns an independent
parser for each external format:

* ``orbit.csv``        columns t, re_z, im_z, re_w, im_w (12 significant digits)
* ``ratio.csv``        columns t, delta_plus, delta_minus, ratio (``inf`` literal)
* ``beurling.csv``     columns omega, lambda, product
* ``certificate.json`` verdict / A / B / maxResidual / pairs[{t1,t2,l,k}]
* ``report.json``      landing classification report
* ``orbit_meta.json``  direction, level, tau, landing, boundary components
* ``model.cfg``        sectioned key-value model block

Every reader raises SchemaError naming the first missing column or key.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional


class SchemaError(Exception):
    """Artifact does not match its expected schema."""


def _parse_float(token, path, lineno):
    token = token.strip()
    if token == "inf":
        return math.inf
    if token == "-inf":
        return -math.inf
    try:
        return float(token)
    except ValueError:
        raise SchemaError(f"{path}:{lineno}: bad number {token!r}") from None


def read_csv_table(path, required_columns):
    """Parse a single-header CSV; returns {column: list[float]}."""
    with open(path) as handle:
        lines = [line.rstrip("\n") for line in handle if line.strip()]
    if not lines:
        raise SchemaError(f"{path}: empty file")
    header = lines[0].split(",")
    for col in required_columns:
        if col not in header:
            raise SchemaError(f"{path}: missing column {col!r}")
    table = {col: [] for col in header}
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(header):
            raise SchemaError(
                f"{path}:{lineno}: expected {len(header)} cells, got {len(cells)}"
            )
        for col, cell in zip(header, cells):
            table[col].append(_parse_float(cell, path, lineno))
    return table


ORBIT_COLUMNS = ("t", "re_z", "im_z", "re_w", "im_w")
RATIO_COLUMNS = ("t", "delta_plus", "delta_minus", "ratio")
BEURLING_COLUMNS = ("omega", "lambda", "product")


def read_orbit_csv(path):
    return read_csv_table(path, ORBIT_COLUMNS)


def read_ratio_csv(path):
    return read_csv_table(path, RATIO_COLUMNS)


def read_beurling_csv(path):
    return read_csv_table(path, BEURLING_COLUMNS)


def write_csv_table(table, columns):
    """Serialize back in the producer's fixed format (12 significant digits)."""

    def fmt(x):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.12g}"

    lines = [",".join(columns)]
    n = len(table[columns[0]])
    for i in range(n):
        lines.append(",".join(fmt(table[col][i]) for col in columns))
    return "\n".join(lines) + "\n"


def _require_keys(payload, keys, path):
    for key in keys:
        if key not in payload:
            raise SchemaError(f"{path}: missing key {key!r}")


def read_certificate_json(path):
    with open(path) as handle:
        payload = json.load(handle)
    _require_keys(payload, ("verdict", "A", "B", "maxResidual", "pairs"), path)
    for i, pair in enumerate(payload["pairs"]):
        for key in ("t1", "t2", "l", "k"):
            if key not in pair:
                raise SchemaError(f"{path}: pairs[{i}] missing key {key!r}")
    return payload


def read_report_json(path):
    with open(path) as handle:
        payload = json.load(handle)
    _require_keys(
        payload,
        ("sigma", "clusterInterval", "verdict", "hmLiminf", "hmLimsup", "angles"),
        path,
    )
    return payload


def read_orbit_meta_json(path):
    with open(path) as handle:
        payload = json.load(handle)
    _require_keys(payload, ("direction", "level", "tau", "boundary"), path)
    return payload


def write_json(payload):
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


@dataclass(frozen=True)
class BoundaryPiece:
    """Horizontal boundary component: full line or leftward half-line."""

    y: float
    x_max: Optional[float]  # None for a full line


def boundary_pieces(meta):
    return [BoundaryPiece(b["y"], b.get("x_max")) for b in meta["boundary"]]


def read_model_cfg(path):
    """Parse the sectioned key-value model block into nested dicts."""
    sections = {}
    current = None
    with open(path) as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                current = line[1:-1].strip()
                sections.setdefault(current, {})
                continue
            if "=" not in line or current is None:
                raise SchemaError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            if value.startswith('"') and value.endswith('"'):
                sections[current][key] = value[1:-1]
            else:
                sections[current][key] = _parse_float(value, path, lineno)
    if "model" not in sections or "family" not in sections["model"]:
        raise SchemaError(f"{path}: missing [model] family")
    return sections
