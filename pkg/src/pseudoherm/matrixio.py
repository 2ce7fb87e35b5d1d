"""JSON matrix files.

A matrix file holds one object::

    {"rows": 2, "cols": 2, "entries": [[re, im], [re, im], ...]}

with ``entries`` in row-major order.  Numbers are written with Python's
shortest round-trip ``repr``, so write -> read reproduces every bit.
"""

from __future__ import annotations

import json
import math
import os

import numpy as np

from .errors import DimensionError, ParseError
from .linalg import _frozen

__all__ = ["format_matrix", "load_json", "matrix_from_dict", "parse_matrix_file", "write_matrix_file"]


def _number(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"{where}: expected a number, got {x!r}")
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{where}: entries must be finite")
    return x


def load_json(path: str | os.PathLike):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def matrix_from_dict(data) -> np.ndarray:
    if not isinstance(data, dict):
        raise ParseError("matrix file must contain a JSON object")
    missing = {"rows", "cols", "entries"} - set(data)
    if missing:
        raise ParseError(f"matrix object lacks {sorted(missing)}")
    rows, cols, entries = data["rows"], data["cols"], data["entries"]
    for name, v in (("rows", rows), ("cols", cols)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise ParseError(f"{name} must be a positive integer, got {v!r}")
    if not isinstance(entries, list):
        raise ParseError("entries must be a list of [re, im] pairs")
    if len(entries) != rows * cols:
        raise DimensionError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
    out = np.empty(rows * cols, dtype=np.complex128)
    for k, e in enumerate(entries):
        if not isinstance(e, list) or len(e) != 2:
            raise ParseError(f"entry {k}: expected [re, im], got {e!r}")
        out[k] = complex(_number(e[0], f"entry {k}"), _number(e[1], f"entry {k}"))
    return _frozen(out.reshape(rows, cols))


def parse_matrix_file(path: str | os.PathLike) -> np.ndarray:
    """Read a matrix file.

    Raises
    ------
    ParseError
        Malformed JSON or structure.
    DimensionError
        ``entries`` does not hold exactly ``rows * cols`` pairs.
    ValueError
        Non-finite entries.
    """
    return matrix_from_dict(load_json(path))


def format_matrix(m) -> str:
    m = np.asarray(m, dtype=np.complex128)
    rows, cols = m.shape
    lines = ",\n".join(
        f"    [{float(z.real)!r}, {float(z.imag)!r}]" for z in m.reshape(-1)
    )
    return f'{{\n  "rows": {rows},\n  "cols": {cols},\n  "entries": [\n{lines}\n  ]\n}}\n'


def write_matrix_file(m, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_matrix(m))
