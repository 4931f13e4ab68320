"""Principal eigenpair by power iteration and the eigenvalue-based consistency index."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .core import WeightVector, require_positive

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITERS = 10_000


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


@dataclass(frozen=True)
class EigenResult:
    """Perron eigenpair of a positive matrix.

    ``residual`` is ``max|M v - lambda v|`` for the sum-to-one ``vector``.
    """

    lambda_max: float
    vector: WeightVector
    iterations: int
    residual: float


def principal_eigenpair(
    matrix: ArrayLike, tol: float = DEFAULT_TOL, max_iters: int = DEFAULT_MAX_ITERS
) -> EigenResult:
    """Power iteration from the uniform vector.

    Iterates ``v <- M v / sum(M v)`` until successive iterates differ by less
    than ``tol`` in the max norm.  The eigenvalue is the mean of the
    componentwise ratios ``(M v)_i / v_i`` at the final iterate.

    Raises :class:`ConvergenceError` after ``max_iters`` iterations.
    """
    m = require_positive(matrix)
    n = len(m)
    v = np.full(n, 1.0 / n)
    step = np.inf
    for it in range(1, max_iters + 1):
        w = m @ v
        w /= w.sum()
        step = np.max(np.abs(w - v))
        v = w
        if step < tol:
            break
    else:
        mv = m @ v
        residual = float(np.max(np.abs(mv - np.mean(mv / v) * v)))
        raise ConvergenceError(
            f"power iteration did not converge in {max_iters} iterations (last step {step:.3e})",
            residual,
            max_iters,
        )
    mv = m @ v
    lam = float(np.mean(mv / v))
    residual = float(np.max(np.abs(mv - lam * v)))
    return EigenResult(lam, WeightVector(v / v.sum(), "sum-to-one"), it, residual)


def saaty_ci(matrix: ArrayLike, tol: float = DEFAULT_TOL, max_iters: int = DEFAULT_MAX_ITERS) -> float:
    """``(lambda_max - n) / (n - 1)``.

    Rounding can push ``lambda_max`` a hair below ``n`` for consistent input;
    the result is clipped at zero.
    """
    n = len(require_positive(matrix))
    if n < 2:
        return 0.0
    lam = principal_eigenpair(matrix, tol, max_iters).lambda_max
    return max(0.0, (lam - n) / (n - 1))


def gm_ev_lambda_3x3(a: float, b: float, c: float) -> float:
    """Eigenvalue of ``[[1,a,b],[1/a,1,c],[1/b,1/c,1]]`` belonging to its row geometric means.

    For every reciprocal 3x3 matrix the geometric-mean vector is the
    principal eigenvector, with eigenvalue ``1 + cbrt(ac/b) + cbrt(b/ac)``.
    """
    if not (a > 0 and b > 0 and c > 0):
        raise ValueError(f"a, b, c must be positive, got {(a, b, c)!r}")
    r = np.cbrt(a * c / b)
    return float(1.0 + r + 1.0 / r)
