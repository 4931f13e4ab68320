"""Pairwise comparisons matrices: validation, log/exp maps, row means and triads.

A PC matrix is held as a plain ``numpy`` float array of shape ``(n, n)`` with
strictly positive entries.  Its additive (log-space) counterpart is the array
``b_ij = ln(m_ij)``, which is skew-symmetric whenever the PC matrix is
reciprocal.  Functions here never modify their inputs.

Indices are 0-based throughout the Python API.  Human-facing output (reports,
CLI, JSON) uses 1-based indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

RECIPROCITY_RTOL = 1e-12
SKEW_ATOL = 1e-12
DEFAULT_CONSISTENCY_TOL = 1e-9

Normalization = Literal["raw", "sum-to-one"]


class PCMatrixError(ValueError):
    """Raised for input that is not a usable pairwise comparisons matrix."""


@dataclass(frozen=True)
class Violation:
    kind: Literal["shape", "non-finite", "non-positive", "diagonal", "reciprocity"]
    row: int | None = None
    col: int | None = None
    detail: str = ""

    def __str__(self) -> str:
        if self.row is None:
            return f"{self.kind}: {self.detail}"
        where = f"({self.row + 1},{self.col + 1})"
        if self.kind == "reciprocity":
            where += f"/({self.col + 1},{self.row + 1})"
        return f"{self.kind} at {where}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    status: Literal["reciprocal", "non-reciprocal", "invalid"]
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status == "reciprocal"

    @property
    def valid(self) -> bool:
        return self.status != "invalid"

    def __str__(self) -> str:
        if not self.violations:
            return f"ok ({self.status})"
        lines = [self.status] + [f"  {v}" for v in self.violations]
        return "\n".join(lines)


@dataclass(frozen=True)
class Triad:
    """Ordered triple ``(x, y, z) = (a_ij, a_ik, a_jk)`` with ``i < j < k``.

    Multiplicatively consistent iff ``y == x * z``; additively iff ``y == x + z``.
    """

    i: int
    j: int
    k: int
    x: float
    y: float
    z: float

    @property
    def indices(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)

    @property
    def values(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def with_values(self, x: float, y: float, z: float) -> "Triad":
        return Triad(self.i, self.j, self.k, float(x), float(y), float(z))


@dataclass(frozen=True)
class WeightVector:
    values: NDArray[np.float64]
    normalization: Normalization = "raw"

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if v.ndim != 1 or not np.all(np.isfinite(v)) or np.any(v <= 0):
            raise PCMatrixError("weight vector must be a 1-d array of positive finite values")
        if self.normalization == "sum-to-one" and abs(v.sum() - 1.0) > 1e-12:
            raise PCMatrixError(f"sum-to-one weights sum to {v.sum()!r}")

    def __len__(self) -> int:
        return len(self.values)

    def normalized(self) -> "WeightVector":
        return WeightVector(self.values / self.values.sum(), "sum-to-one")


def as_matrix(matrix: ArrayLike) -> NDArray[np.float64]:
    """Return a float copy of ``matrix``, checking only that it is square."""
    m = np.array(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise PCMatrixError(f"matrix must be square, got shape {m.shape}")
    return m


def validate(matrix: ArrayLike) -> ValidationReport:
    """Classify a matrix as reciprocal, non-reciprocal or invalid.

    Non-finite or non-positive entries (and non-square shapes) make the
    matrix invalid.  A positive matrix with a non-unit diagonal or with
    ``m_ij * m_ji != 1`` is non-reciprocal; every offending cell is listed.
    """
    try:
        m = np.array(matrix, dtype=float)
    except (TypeError, ValueError) as exc:
        return ValidationReport("invalid", (Violation("shape", detail=str(exc)),))
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        return ValidationReport("invalid", (Violation("shape", detail=f"not square: {m.shape}"),))

    bad = []
    for r, c in zip(*np.nonzero(~np.isfinite(m))):
        bad.append(Violation("non-finite", int(r), int(c), f"value {m[r, c]!r}"))
    for r, c in zip(*np.nonzero(np.isfinite(m) & (m <= 0))):
        bad.append(Violation("non-positive", int(r), int(c), f"value {m[r, c]!r}"))
    if bad:
        return ValidationReport("invalid", tuple(bad))

    issues = []
    for r in np.nonzero(np.diag(m) != 1.0)[0]:
        issues.append(Violation("diagonal", int(r), int(r), f"m_ii = {m[r, r]!r}"))
    prod = m * m.T
    rows, cols = np.nonzero(np.abs(prod - 1.0) > RECIPROCITY_RTOL)
    for r, c in zip(rows, cols):
        if r < c:
            issues.append(
                Violation("reciprocity", int(r), int(c), f"{m[r, c]!r} * {m[c, r]!r} = {prod[r, c]!r}")
            )
    if issues:
        return ValidationReport("non-reciprocal", tuple(issues))
    return ValidationReport("reciprocal")


def require_positive(matrix: ArrayLike) -> NDArray[np.float64]:
    """Coerce to a square array and raise :class:`PCMatrixError` unless every entry is positive."""
    report = validate(matrix)
    if not report.valid:
        raise PCMatrixError("; ".join(str(v) for v in report.violations))
    return as_matrix(matrix)


def require_reciprocal(matrix: ArrayLike) -> NDArray[np.float64]:
    report = validate(matrix)
    if not report.ok:
        raise PCMatrixError(
            f"matrix is {report.status}: " + "; ".join(str(v) for v in report.violations)
        )
    return as_matrix(matrix)


def reciprocalize(matrix: ArrayLike) -> NDArray[np.float64]:
    """Repair reciprocity with ``m'_ij = sqrt(m_ij / m_ji)`` and a unit diagonal.

    This is the midpoint of the two conflicting judgments in log space, so an
    already reciprocal matrix is returned unchanged (up to rounding).
    """
    m = require_positive(matrix)
    b = np.log(m)
    out = np.exp(0.5 * (b - b.T))
    np.fill_diagonal(out, 1.0)
    return out


def log_map(matrix: ArrayLike) -> NDArray[np.float64]:
    """Entrywise natural log, PC matrix -> additive matrix."""
    return np.log(require_positive(matrix))


def exp_map(matrix: ArrayLike) -> NDArray[np.float64]:
    """Entrywise exponential, additive matrix -> PC matrix."""
    return np.exp(as_matrix(matrix))


def is_skew_symmetric(matrix: ArrayLike, atol: float = SKEW_ATOL) -> bool:
    b = as_matrix(matrix)
    return bool(np.all(np.diag(b) == 0.0) and np.allclose(b, -b.T, rtol=0.0, atol=atol))


def row_geometric_means(matrix: ArrayLike) -> WeightVector:
    """Row geometric means, evaluated as ``exp(mean(log row))`` to avoid overflow."""
    return WeightVector(np.exp(np.log(require_positive(matrix)).mean(axis=1)), "raw")


def row_arithmetic_means(matrix: ArrayLike) -> NDArray[np.float64]:
    return as_matrix(matrix).mean(axis=1)


def consistent_from_vector(v: WeightVector | ArrayLike) -> NDArray[np.float64]:
    """The consistent matrix ``[v_i / v_j]``."""
    vals = v.values if isinstance(v, WeightVector) else WeightVector(v).values
    # ratios via log differences keep m_ij * m_jk == m_ik to within a few ulps
    lv = np.log(vals)
    return np.exp(lv[:, None] - lv[None, :])


def is_consistent(matrix: ArrayLike, tol: float = DEFAULT_CONSISTENCY_TOL) -> bool:
    """True iff ``|1 - m_ij * m_jk / m_ik| <= tol`` for every ``i, j, k``.

    All index triples are checked (not only ``i < j < k``), so a consistent
    matrix is necessarily reciprocal with a unit diagonal.
    """
    m = require_positive(matrix)
    ratio = m[:, :, None] * m[None, :, :] / m[:, None, :]
    return bool(np.max(np.abs(1.0 - ratio)) <= tol)


def triad_indices(n: int) -> NDArray[np.intp]:
    """All ``(i, j, k)`` with ``i < j < k < n`` in lexicographic order, shape ``(C(n,3), 3)``."""
    if n < 3:
        return np.empty((0, 3), dtype=np.intp)
    return np.array(list(itertools.combinations(range(n), 3)), dtype=np.intp)


def enumerate_triads(matrix: ArrayLike) -> list[Triad]:
    """Every triad of ``matrix`` in lexicographic ``(i, j, k)`` order.

    Values come from the upper triangle.  Matrices with ``n < 3`` have no
    triads and give an empty list.
    """
    m = as_matrix(matrix)
    return [
        Triad(int(i), int(j), int(k), float(m[i, j]), float(m[i, k]), float(m[j, k]))
        for i, j, k in triad_indices(len(m))
    ]
