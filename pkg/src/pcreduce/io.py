"""Reading and writing PC matrices as CSV or JSON.

CSV: ``n`` lines of ``n`` comma-separated positive decimals.
JSON: ``{"n": <int>, "matrix": [[...], ...]}``.

The format is picked from the file suffix (``.json`` means JSON, anything
else CSV).  Parsers reject NaN, infinities and non-positive values and name
the offending cell with 1-based ``(row, col)``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .core import PCMatrixError


def _check_value(value: float, r: int, c: int) -> float:
    if not math.isfinite(value):
        raise PCMatrixError(f"non-finite entry at ({r + 1},{c + 1}): {value!r}")
    if value <= 0:
        raise PCMatrixError(f"non-positive entry at ({r + 1},{c + 1}): {value!r}")
    return value


def _check_square(rows: list[list[float]]) -> np.ndarray:
    n = len(rows)
    if n == 0:
        raise PCMatrixError("empty matrix")
    for r, row in enumerate(rows):
        if len(row) != n:
            raise PCMatrixError(f"row {r + 1} has {len(row)} entries, expected {n}")
    return np.array(rows, dtype=float)


def parse_csv(text: str) -> np.ndarray:
    rows = []
    for r, raw in enumerate(row for row in csv.reader(io.StringIO(text)) if any(f.strip() for f in row)):
        row = []
        for c, field in enumerate(raw):
            try:
                value = float(field)
            except ValueError:
                raise PCMatrixError(f"unparseable entry at ({r + 1},{c + 1}): {field.strip()!r}") from None
            row.append(_check_value(value, r, c))
        rows.append(row)
    return _check_square(rows)


def parse_json(text: str) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PCMatrixError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise PCMatrixError('JSON matrix must be an object with a "matrix" field')
    grid = doc["matrix"]
    if not isinstance(grid, list) or not all(isinstance(row, list) for row in grid):
        raise PCMatrixError('"matrix" must be a list of rows')
    rows = []
    for r, raw in enumerate(grid):
        row = []
        for c, value in enumerate(raw):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise PCMatrixError(f"non-numeric entry at ({r + 1},{c + 1}): {value!r}")
            row.append(_check_value(float(value), r, c))
        rows.append(row)
    m = _check_square(rows)
    if "n" in doc and doc["n"] != len(m):
        raise PCMatrixError(f'"n" is {doc["n"]!r} but the matrix has {len(m)} rows')
    return m


def is_json_path(path: str | Path) -> bool:
    return Path(path).suffix.lower() == ".json"


def read_matrix(path: str | Path) -> np.ndarray:
    text = Path(path).read_text()
    return parse_json(text) if is_json_path(path) else parse_csv(text)


def format_csv(matrix: np.ndarray) -> str:
    # repr keeps full double precision so a round trip is lossless
    return "".join(",".join(repr(float(x)) for x in row) + "\n" for row in np.asarray(matrix))


def format_json(matrix: np.ndarray) -> str:
    m = np.asarray(matrix, dtype=float)
    return json.dumps({"n": len(m), "matrix": m.tolist()}) + "\n"


def write_matrix(matrix: np.ndarray, path: str | Path) -> None:
    text = format_json(matrix) if is_json_path(path) else format_csv(matrix)
    Path(path).write_text(text)
