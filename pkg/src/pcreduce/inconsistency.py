"""Distance-based inconsistency index ``ii`` and worst-triad localization."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .core import Triad, as_matrix, triad_indices

MAX_MATERIALIZED_N = 100


@dataclass(frozen=True)
class TriadScore:
    triad: Triad
    ii: float
    log_distance: float

    def to_dict(self) -> dict:
        t = self.triad
        return {"i": t.i + 1, "j": t.j + 1, "k": t.k + 1, "ii": self.ii, "log_distance": self.log_distance}


@dataclass(frozen=True)
class InconsistencyReport:
    """Matrix-level ``ii`` with the worst triad and (for ``n <= 100``) every triad's score.

    ``scores`` is sorted by ``ii`` descending, ties broken by ``(i, j, k)``.
    ``worst`` is None only when the matrix has no triads (``n < 3``).
    """

    ii: float
    worst: TriadScore | None
    scores: tuple[TriadScore, ...]

    def to_dict(self, include_scores: bool = True) -> dict:
        worst = None
        if self.worst is not None:
            worst = {k: v for k, v in self.worst.to_dict().items() if k != "log_distance"}
        doc = {"ii": self.ii, "worst": worst}
        if include_scores:
            doc["scores"] = [s.to_dict() for s in self.scores]
        return doc


def ii_from_log_distance(d):
    """``1 - exp(-d)``, accurate for tiny ``d``."""
    return -np.expm1(-np.asarray(d)) if np.ndim(d) else -math.expm1(-d)


def _check_positive(x: float, y: float, z: float) -> None:
    if not (x > 0 and y > 0 and z > 0):
        raise ValueError(f"triad values must be positive, got {(x, y, z)!r}")


def triad_log_distance(x: float, y: float, z: float) -> float:
    """``|ln(y / (x z))|``: distance of the log-triad from the consistent plane along ``(1,-1,1)``."""
    _check_positive(x, y, z)
    return abs(math.log(y / (x * z)))


def ii_original(x: float, y: float, z: float) -> float:
    """``min(|1 - y/x/z|, |1 - x z / y|)``, the index as first formulated."""
    _check_positive(x, y, z)
    return min(abs(1 - y / x / z), abs(1 - x * z / y))


def ii_simplified(x: float, y: float, z: float) -> float:
    """``1 - min(y / (x z), x z / y)``."""
    _check_positive(x, y, z)
    return 1 - min(y / (x * z), x * z / y)


def ii_exp_log(x: float, y: float, z: float) -> float:
    """``1 - exp(-|ln(y / (x z))|)``."""
    return ii_from_log_distance(triad_log_distance(x, y, z))


def triad_ii(t: Triad) -> TriadScore:
    d = triad_log_distance(t.x, t.y, t.z)
    return TriadScore(t, ii_from_log_distance(d), d)


def triad_log_distances(log_matrix: NDArray[np.float64], triads: NDArray[np.intp]) -> NDArray[np.float64]:
    """Vectorized ``|b_ij + b_jk - b_ik|`` for every row ``(i, j, k)`` of ``triads``."""
    i, j, k = triads.T
    return np.abs(log_matrix[i, j] + log_matrix[j, k] - log_matrix[i, k])


def worst_index(ii_values: NDArray[np.float64]) -> int:
    # argmax returns the first maximizer; triads are in lexicographic order
    return int(np.argmax(ii_values))


def matrix_ii(matrix: ArrayLike) -> InconsistencyReport:
    """Score every triad of a reciprocal matrix and report the maximum.

    Only the upper triangle is read.  A matrix with ``n < 3`` has no triads
    and is reported with ``ii = 0``, ``worst = None`` and no scores.
    """
    m = as_matrix(matrix)
    n = len(m)
    triads = triad_indices(n)
    if len(triads) == 0:
        return InconsistencyReport(0.0, None, ())

    d = triad_log_distances(np.log(m), triads)
    ii = ii_from_log_distance(d)

    def score(idx: int) -> TriadScore:
        i, j, k = (int(a) for a in triads[idx])
        t = Triad(i, j, k, float(m[i, j]), float(m[i, k]), float(m[j, k]))
        return TriadScore(t, float(ii[idx]), float(d[idx]))

    w = worst_index(ii)
    if n > MAX_MATERIALIZED_N:
        return InconsistencyReport(float(ii[w]), score(w), ())
    # stable sort on -ii keeps lexicographic order among ties
    order = np.argsort(-ii, kind="stable")
    scores = tuple(score(int(idx)) for idx in order)
    return InconsistencyReport(float(ii[w]), scores[0], scores)
