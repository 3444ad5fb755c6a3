"""Flat sectioned key-value scenario files and their parser.

The format is a TOML-style subset kept deliberately small so scenario files
diff cleanly in CI: ``[section]`` headers (one nesting level via dots),
``key = value`` lines with quoted strings, numbers, or booleans, and ``#``
comments.  Floats are serialized with 17 significant digits so re-emitted
scenarios are byte-stable.

A scenario names a model block, a base point (disk-side ``z0`` or image-side
``w0``), the time grid, and the task list::

    [model]
    family = "twoslit"
    x0 = -1.0
    halfgap = 3.1415926535897931

    [run]
    z0_re = 0.0
    z0_im = 0.0
    t_max = 200.0
    dt = 0.25
    tasks = "simulate,certify,ratio,classify"
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import ConfigError, InvalidSpec
from .models import ModelSpec, spec_from_config, spec_to_config

__all__ = ["Scenario", "parse_scenario", "scenario_to_text", "TASK_NAMES"]

TASK_NAMES = ("simulate", "certify", "ratio", "classify", "invariants")


@dataclass(frozen=True)
class Scenario:
    spec: ModelSpec
    z0: Optional[complex]
    w0: Optional[complex]
    t_max: float
    dt: float
    tasks: tuple
    grid: int = 256

    def __post_init__(self):
        if not self.tasks:
            raise ConfigError("scenario declares no tasks")
        unknown = set(self.tasks) - set(TASK_NAMES)
        if unknown:
            raise ConfigError(f"unknown tasks: {sorted(unknown)}")
        if self.dt >= self.t_max:
            raise ConfigError("dt must be smaller than t_max")
        if self.z0 is None and self.w0 is None:
            raise ConfigError("scenario needs z0_re/z0_im or w0_re/w0_im")


def _parse_value(raw, lineno):
    raw = raw.strip()
    if raw.startswith('"') and raw.endswith('"') and len(raw) >= 2:
        return raw[1:-1]
    if raw in ("true", "false"):
        return raw == "true"
    try:
        if any(c in raw for c in ".eE") or raw in ("inf", "-inf"):
            return float(raw)
        return int(raw)
    except ValueError:
        raise ConfigError(f"line {lineno}: cannot parse value {raw!r}") from None


def _parse_sections(text):
    sections = {}
    current = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            name = stripped[1:-1].strip()
            if not name:
                raise ConfigError(f"line {lineno}: empty section name")
            current = name
            sections.setdefault(name, {})
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key = value")
        if current is None:
            raise ConfigError(f"line {lineno}: key before any [section]")
        key, raw = stripped.split("=", 1)
        key = key.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        sections[current][key] = _parse_value(raw, lineno)
    return sections


def _nest(sections, prefix):
    """Collect [prefix] plus [prefix.sub] sections into one dict tree."""
    base = dict(sections.get(prefix, {}))
    for name, body in sections.items():
        if name.startswith(prefix + "."):
            sub = name[len(prefix) + 1:]
            node = base
            parts = sub.split(".")
            for part in parts[:-1]:
                node = node.setdefault(part, {})
            node[parts[-1]] = dict(body)
    return base


def parse_scenario(text) -> Scenario:
    sections = _parse_sections(text)
    if "model" not in sections:
        raise ConfigError("missing [model] section")
    if "run" not in sections:
        raise ConfigError("missing [run] section")
    try:
        spec = spec_from_config(_nest(sections, "model"))
    except InvalidSpec as exc:
        raise ConfigError(f"model block: {exc}") from exc
    run = sections["run"]

    def fetch(key, kind=float, required=True, default=None):
        if key not in run:
            if required:
                raise ConfigError(f"[run] is missing key {key!r}")
            return default
        try:
            return kind(run[key])
        except (TypeError, ValueError):
            raise ConfigError(f"[run] key {key!r} has wrong type") from None

    z0 = None
    w0 = None
    if "z0_re" in run or "z0_im" in run:
        z0 = complex(fetch("z0_re"), fetch("z0_im"))
    if "w0_re" in run or "w0_im" in run:
        w0 = complex(fetch("w0_re"), fetch("w0_im"))
    tasks_raw = run.get("tasks")
    if not isinstance(tasks_raw, str) or not tasks_raw.strip():
        raise ConfigError("[run] key 'tasks' must be a non-empty string")
    tasks = tuple(t.strip() for t in tasks_raw.split(",") if t.strip())
    grid = int(sections.get("invariants", {}).get("grid", 256))
    return Scenario(
        spec=spec,
        z0=z0,
        w0=w0,
        t_max=fetch("t_max"),
        dt=fetch("dt"),
        tasks=tasks,
        grid=grid,
    )


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, int):
        return str(value)
    return f'"{value}"'


def model_block_text(spec: ModelSpec, section="model"):
    """Serialized [model] block (with nested [model.inner] for affine)."""
    cfg = spec_to_config(spec)
    inner = cfg.pop("inner", None)
    lines = [f"[{section}]"]
    for key, value in cfg.items():
        lines.append(f"{key} = {_fmt(value)}")
    text = "\n".join(lines) + "\n"
    if inner is not None:
        nested_spec = spec_from_config(inner)
        text += model_block_text(nested_spec, section=f"{section}.inner")
    return text


def scenario_to_text(sc: Scenario) -> str:
    out = model_block_text(sc.spec)
    out += "\n[run]\n"
    if sc.z0 is not None:
        out += f"z0_re = {_fmt(sc.z0.real)}\nz0_im = {_fmt(sc.z0.imag)}\n"
    if sc.w0 is not None:
        out += f"w0_re = {_fmt(sc.w0.real)}\nw0_im = {_fmt(sc.w0.imag)}\n"
    out += f"t_max = {_fmt(sc.t_max)}\n"
    out += f"dt = {_fmt(sc.dt)}\n"
    out += f'tasks = "{",".join(sc.tasks)}"\n'
    out += f"\n[invariants]\ngrid = {sc.grid}\n"
    return out
