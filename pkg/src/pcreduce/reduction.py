"""Orthogonal triad projection and the worst-triad inconsistency reduction.

In log space a triad ``v = (x, y, z)`` is consistent iff ``v . e = 0`` with
``e = (1, -1, 1)``.  Projecting onto the plane perpendicular to ``e`` moves
``x`` and ``z`` by ``-c`` and ``y`` by ``+c`` where ``c = (x - y + z) / 3``.
Each row sum of the log matrix is unchanged by such a move, so the row
geometric means of the PC matrix are invariant along the whole reduction and
the limit is the consistent matrix they generate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .core import (
    PCMatrixError,
    Triad,
    WeightVector,
    consistent_from_vector,
    require_positive,
    require_reciprocal,
    row_arithmetic_means,
    row_geometric_means,
    triad_indices,
)
from .inconsistency import ii_from_log_distance, triad_log_distances, worst_index

TracePolicy = Literal["none", "scores-only", "full-matrices"]

# rows of the projector onto the plane perpendicular to (1, -1, 1)
TRIAD_PROJECTOR = np.array(
    [
        [2.0, 1.0, -1.0],
        [1.0, 2.0, 1.0],
        [-1.0, 1.0, 2.0],
    ]
) / 3.0


def _as_triple(t) -> tuple[float, float, float]:
    if isinstance(t, Triad):
        return t.values
    x, y, z = t
    return float(x), float(y), float(z)


def _rewrap(t, values):
    if isinstance(t, Triad):
        return t.with_values(*values)
    return tuple(float(v) for v in values)


def project_triad_additive(t):
    """Orthogonal projection of an additive triad onto ``y = x + z``.

    Accepts a :class:`Triad` or any ``(x, y, z)`` sequence and returns the
    same kind.
    """
    x, y, z = _as_triple(t)
    c = (x - y + z) / 3.0
    return _rewrap(t, (x - c, y + c, z - c))


def project_triad_multiplicative(t):
    """Closest consistent triad in the log metric, in multiplicative form.

    ``x' = x^(2/3) y^(1/3) z^(-1/3)``, ``y' = x^(1/3) y^(2/3) z^(1/3)``,
    ``z' = x^(-1/3) y^(1/3) z^(2/3)``.
    """
    x, y, z = _as_triple(t)
    if not (x > 0 and y > 0 and z > 0):
        raise ValueError(f"triad values must be positive, got {(x, y, z)!r}")
    a, b, c = np.cbrt(x), np.cbrt(y), np.cbrt(z)
    return _rewrap(t, (a * a * b / c, a * b * b * c, b * c * c / a))


def single_entry_repairs(t):
    """The three consistent triads that differ from ``t`` in exactly one value.

    Returns ``((x, x z, z), (y / z, y, z), (x, y, y / x))``.
    """
    x, y, z = _as_triple(t)
    return (
        _rewrap(t, (x, x * z, z)),
        _rewrap(t, (y / z, y, z)),
        _rewrap(t, (x, y, y / x)),
    )


def single_entry_repairs_additive(t):
    x, y, z = _as_triple(t)
    return (
        _rewrap(t, (x, x + z, z)),
        _rewrap(t, (y - z, y, z)),
        _rewrap(t, (x, y, y - x)),
    )


@dataclass(frozen=True)
class ReductionConfig:
    threshold: float = 1e-6
    max_steps: int = 10_000
    trace_policy: TracePolicy = "scores-only"

    def __post_init__(self):
        if not 0 < self.threshold < 1:
            raise ValueError(f"threshold must lie in (0, 1), got {self.threshold!r}")
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {self.max_steps!r}")
        if self.trace_policy not in ("none", "scores-only", "full-matrices"):
            raise ValueError(f"unknown trace policy {self.trace_policy!r}")


@dataclass(frozen=True)
class ReductionStep:
    step: int
    triad: tuple[int, int, int]
    ii_before: float
    ii_after: float
    matrix: NDArray[np.float64] | None = None

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "triad": [a + 1 for a in self.triad],
            "ii_before": self.ii_before,
            "ii_after": self.ii_after,
        }


@dataclass
class ReductionTrace:
    """What happened during :func:`reduce`.

    ``n_steps`` counts every projection performed; ``steps`` holds per-step
    records unless the trace policy was ``"none"``.
    """

    initial_gm: WeightVector
    final_matrix: NDArray[np.float64]
    final_ii: float
    n_steps: int
    converged: bool
    steps: list[ReductionStep] = field(default_factory=list)

    def to_jsonl(self) -> str:
        return "".join(json.dumps(s.to_dict()) + "\n" for s in self.steps)


def reduce(matrix: ArrayLike, config: ReductionConfig | None = None) -> tuple[NDArray[np.float64], ReductionTrace]:
    """Repeatedly project the most inconsistent triad until ``ii <= threshold``.

    Each step locates the worst triad (ties go to the lexicographically
    smallest ``(i, j, k)``), replaces ``(m_ij, m_ik, m_jk)`` by its orthogonal
    projection and the mirrored entries by their reciprocals.  The work is
    done on a private log-space copy.

    Hitting ``max_steps`` above the threshold is not an error: the returned
    trace has ``converged=False``.  Matrices with ``n < 3`` come back
    unchanged with an empty trace.
    """
    config = config or ReductionConfig()
    m = require_reciprocal(matrix)
    n = len(m)
    initial_gm = row_geometric_means(m)
    if n < 3:
        return m, ReductionTrace(initial_gm, m.copy(), 0.0, 0, True)

    triads = triad_indices(n)
    b = np.log(m)
    record = config.trace_policy != "none"
    snapshots = config.trace_policy == "full-matrices"
    steps: list[ReductionStep] = []

    ii = ii_from_log_distance(triad_log_distances(b, triads))
    w = worst_index(ii)
    current = float(ii[w])
    n_steps = 0
    while current > config.threshold and n_steps < config.max_steps:
        i, j, k = (int(a) for a in triads[w])
        c = (b[i, j] - b[i, k] + b[j, k]) / 3.0
        b[i, j] -= c
        b[j, i] += c
        b[i, k] += c
        b[k, i] -= c
        b[j, k] -= c
        b[k, j] += c
        n_steps += 1

        ii = ii_from_log_distance(triad_log_distances(b, triads))
        w = worst_index(ii)
        before, current = current, float(ii[w])
        if record:
            steps.append(
                ReductionStep(n_steps, (i, j, k), before, current, np.exp(b) if snapshots else None)
            )

    final = np.exp(b)
    return final, ReductionTrace(
        initial_gm, final, current, n_steps, current <= config.threshold, steps
    )


def direct_projection(matrix: ArrayLike) -> NDArray[np.float64]:
    """Closest consistent matrix in the log metric: ``[g_i / g_j]`` with ``g`` the row geometric means."""
    return consistent_from_vector(row_geometric_means(matrix))


def direct_projection_additive(log_matrix: ArrayLike) -> NDArray[np.float64]:
    """Orthogonal projection of a skew-symmetric matrix onto the additively consistent subspace.

    Entry ``(i, j)`` of the result is ``r_i - r_j`` where ``r`` holds the row
    arithmetic means.
    """
    r = row_arithmetic_means(log_matrix)
    return r[:, None] - r[None, :]


def project_n4_closed_form(log_matrix: ArrayLike) -> NDArray[np.float64]:
    """Projection of a 4x4 skew-symmetric matrix onto the consistent subspace, written out.

    With upper-triangle entries ``a, b, c, d, e, f`` (row-major), the
    projected entries are::

        A = (2a + b + c - d - e) / 4
        B = (a + 2b + c + d - f) / 4
        C = (a + b + 2c + e + f) / 4
        D = (-a + b + 2d + e - f) / 4
        E = (-a + c + d + 2e + f) / 4
        F = (-b + c - d + e + 2f) / 4
    """
    m = np.array(log_matrix, dtype=float)
    if m.shape != (4, 4):
        raise PCMatrixError(f"closed form applies to 4x4 matrices only, got shape {m.shape}")
    a, b, c, d, e, f = m[0, 1], m[0, 2], m[0, 3], m[1, 2], m[1, 3], m[2, 3]
    A = (2 * a + b + c - d - e) / 4
    B = (a + 2 * b + c + d - f) / 4
    C = (a + b + 2 * c + e + f) / 4
    D = (-a + b + 2 * d + e - f) / 4
    E = (-a + c + d + 2 * e + f) / 4
    F = (-b + c - d + e + 2 * f) / 4
    return np.array(
        [
            [0.0, A, B, C],
            [-A, 0.0, D, E],
            [-B, -D, 0.0, F],
            [-C, -E, -F, 0.0],
        ]
    )


def log_frobenius_distance(m1: ArrayLike, m2: ArrayLike) -> float:
    """``||ln m1 - ln m2||_F``, the metric in which the direct projection is optimal."""
    return float(np.linalg.norm(np.log(require_positive(m1)) - np.log(require_positive(m2))))


def frobenius_distance(m1: ArrayLike, m2: ArrayLike) -> float:
    return float(np.linalg.norm(np.asarray(m1, dtype=float) - np.asarray(m2, dtype=float)))
