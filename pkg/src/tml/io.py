"""Reading and writing space files and campaign reports.

Space files are UTF-8 JSON objects:

    {
      "name": "example",
      "labels": ["a", "b"],
      "d": [[0.0, 1.0], [1.0, 0.0]],
      "tau": [0.0, 1.0],          # optional; omit for a plain metric space
      "zero_set": ["a"]           # optional; must equal the tau-zero labels
    }

Reals are serialized with Python's shortest round-trip repr, so writing a
space and reading it back reproduces every value bit for bit.  Reports are
flat CSV or JSONL with one row per check and no timestamps, which keeps
repeated runs byte-identical.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import ParseError, SchemaError
from .spaces import (
    FiniteMetricSpace,
    TimedMetricSpace,
    build_metric_space,
    build_timed_space,
)

AnySpace = Union[FiniteMetricSpace, TimedMetricSpace]

_ALLOWED_KEYS = {"name", "labels", "d", "tau", "zero_set"}


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise SchemaError(message)


def _as_real(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where}: expected a number, got {value!r}")
    return float(value)


def read_space(path) -> AnySpace:
    """Load a space file; returns a timed space when 'tau' is present."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"{path}: line {err.lineno} column {err.colno}: {err.msg}") from None

    _require(isinstance(data, dict), "top level must be a JSON object")
    unknown = set(data) - _ALLOWED_KEYS
    _require(not unknown, f"unknown keys: {sorted(unknown)}")
    for key in ("name", "labels", "d"):
        _require(key in data, f"missing required key {key!r}")
    _require(isinstance(data["name"], str), "'name' must be a string")

    labels = data["labels"]
    _require(
        isinstance(labels, list) and all(isinstance(s, str) for s in labels),
        "'labels' must be a list of strings",
    )
    n = len(labels)

    rows = data["d"]
    _require(isinstance(rows, list) and len(rows) == n, f"'d' must be a list of {n} rows")
    table = np.zeros((n, n))
    for i, row in enumerate(rows):
        _require(isinstance(row, list) and len(row) == n, f"'d' row {i} must have {n} entries")
        for j, value in enumerate(row):
            table[i, j] = _as_real(value, f"d[{i}][{j}]")
    space = build_metric_space(labels, table)

    if "tau" not in data:
        _require("zero_set" not in data, "'zero_set' requires 'tau'")
        return space

    tau_list = data["tau"]
    _require(
        isinstance(tau_list, list) and len(tau_list) == n,
        f"'tau' must be a list of {n} numbers",
    )
    tau = np.array([_as_real(v, f"tau[{i}]") for i, v in enumerate(tau_list)])
    timed = build_timed_space(space, tau)

    if "zero_set" in data:
        declared = data["zero_set"]
        _require(
            isinstance(declared, list) and all(isinstance(s, str) for s in declared),
            "'zero_set' must be a list of strings",
        )
        actual = {labels[i] for i in range(n) if tau[i] == 0.0}
        _require(
            set(declared) == actual and len(declared) == len(set(declared)),
            f"'zero_set' must equal the tau-zero labels {sorted(actual)}",
        )
    return timed


def write_space(space: AnySpace, path, name: str = "space") -> None:
    """Serialize a space to JSON with full-precision reals."""
    if isinstance(space, TimedMetricSpace):
        base, tau = space.base, space.tau
    else:
        base, tau = space, None
    payload: dict = {
        "name": name,
        "labels": list(base.labels),
        "d": [[float(v) for v in row] for row in base.d],
    }
    if tau is not None:
        payload["tau"] = [float(v) for v in tau]
        payload["zero_set"] = [base.labels[i] for i in range(base.n) if tau[i] == 0.0]
    Path(path).write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")


def _plain(value):
    """Coerce numpy scalars so json/csv render them like python builtins."""
    if isinstance(value, np.generic):
        return value.item()
    return value


def _render_csv_cell(value) -> str:
    value = _plain(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return str(value)


def write_report(rows: Iterable[Mapping], path, fmt: str = "csv") -> None:
    """Write report rows (mappings sharing one key set) as CSV or JSONL.

    Output contains no timestamps or environment data, so identical inputs
    produce identical bytes.
    """
    rows = list(rows)
    if fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            if not rows:
                return
            writer = csv.writer(fh, lineterminator="\n")
            header: Sequence[str] = list(rows[0].keys())
            writer.writerow(header)
            for row in rows:
                writer.writerow([_render_csv_cell(row[k]) for k in header])
    elif fmt == "jsonl":
        with open(path, "w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps({k: _plain(v) for k, v in row.items()}, sort_keys=True))
                fh.write("\n")
    else:
        raise ValueError(f"unknown report format {fmt!r}")


__all__ = ["read_space", "write_space", "write_report"]
