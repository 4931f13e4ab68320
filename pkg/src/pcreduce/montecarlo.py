"""Random reciprocal matrix experiments comparing GM and EV approximations.

Each sample draws a hidden weight vector with ``ln v_i ~ U(-1, 1)``, forms
``m_ij = (v_i / v_j) * exp(delta_ij)`` with ``delta_ij ~ U(-beta, beta)`` for
``i < j`` and fills the lower triangle with reciprocals.  Sample ``s`` of a
run seeded with ``seed`` uses its own PCG64 stream derived from
``SeedSequence(seed, spawn_key=(s,))``, so results do not depend on the order
or the process in which samples are evaluated.
"""

from __future__ import annotations

import csv
import io
import json
import statistics
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .core import consistent_from_vector, row_geometric_means
from .inconsistency import matrix_ii
from .reduction import ReductionConfig, frobenius_distance, log_frobenius_distance, reduce
from .spectral import ConvergenceError, principal_eigenpair

RNG_ALGORITHM = f"numpy PCG64 via SeedSequence(seed, spawn_key=(sample,)); numpy {np.__version__}"

RECORD_FIELDS = (
    "sample",
    "initial_ii",
    "steps",
    "converged",
    "final_ii",
    "lambda_max",
    "gm_log_distance",
    "ev_log_distance",
    "gm_frobenius",
    "ev_frobenius",
    "gm_ev_max_diff",
    "error",
)


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    samples: int = 1000
    beta: float = 1.0
    seed: int = 0
    threshold: float = 1e-6
    max_steps: int = 100_000

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"n must be >= 3, got {self.n!r}")
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples!r}")
        if not self.beta >= 0:
            raise ValueError(f"beta must be >= 0, got {self.beta!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        ReductionConfig(self.threshold, self.max_steps)


@dataclass(frozen=True)
class SampleRecord:
    """One sample.  Distances are from the input matrix to the consistent
    matrices generated by the GM and EV weights; ``gm_ev_max_diff`` is the max
    norm gap between the two normalized weight vectors.  Eigen fields are NaN
    and ``error`` is set when power iteration failed.
    """

    sample: int
    initial_ii: float
    steps: int
    converged: bool
    final_ii: float
    lambda_max: float
    gm_log_distance: float
    ev_log_distance: float
    gm_frobenius: float
    ev_frobenius: float
    gm_ev_max_diff: float
    error: str = ""


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    records: list[SampleRecord]
    summary: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.summary:
            self.summary = summarize(self.records)

    def header(self) -> dict:
        return {"config": asdict(self.config), "rng": RNG_ALGORITHM}

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("# " + json.dumps(self.header(), sort_keys=True) + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(RECORD_FIELDS)
        for r in self.records:
            writer.writerow([_fmt(getattr(r, f)) for f in RECORD_FIELDS])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = self.header() | {"summary": self.summary}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def write(self, prefix: str | Path) -> tuple[Path, Path]:
        """Write ``<prefix>.csv`` and ``<prefix>.json``."""
        prefix = Path(prefix)
        csv_path = prefix.with_name(prefix.name + ".csv")
        json_path = prefix.with_name(prefix.name + ".json")
        csv_path.write_text(self.to_csv())
        json_path.write_text(self.to_json())
        return csv_path, json_path


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def sample_rng(seed: int, sample: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(sample,))))


def random_reciprocal(n: int, beta: float, rng: np.random.Generator) -> np.ndarray:
    """A consistent matrix from a random hidden vector, perturbed by log-uniform noise of half-width ``beta``."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n!r}")
    if not beta >= 0:
        raise ValueError(f"beta must be >= 0, got {beta!r}")
    log_v = rng.uniform(-1.0, 1.0, n)
    iu = np.triu_indices(n, 1)
    noise = np.zeros((n, n))
    noise[iu] = rng.uniform(-beta, beta, len(iu[0])) if beta > 0 else 0.0
    b = log_v[:, None] - log_v[None, :] + noise - noise.T
    m = np.exp(b)
    # exact reciprocals and unit diagonal, independent of exp rounding
    m[iu[1], iu[0]] = 1.0 / m[iu]
    np.fill_diagonal(m, 1.0)
    return m


def run_sample(config: ExperimentConfig, sample: int) -> SampleRecord:
    m = random_reciprocal(config.n, config.beta, sample_rng(config.seed, sample))
    initial_ii = matrix_ii(m).ii
    _, trace = reduce(m, ReductionConfig(config.threshold, config.max_steps, "none"))

    gm = row_geometric_means(m).normalized()
    gm_matrix = consistent_from_vector(gm)
    gm_log = log_frobenius_distance(m, gm_matrix)
    gm_frob = frobenius_distance(m, gm_matrix)
    try:
        eig = principal_eigenpair(m)
    except ConvergenceError as exc:
        nan = float("nan")
        return SampleRecord(
            sample, initial_ii, trace.n_steps, trace.converged, trace.final_ii,
            nan, gm_log, nan, gm_frob, nan, nan, str(exc),
        )
    ev_matrix = consistent_from_vector(eig.vector)
    return SampleRecord(
        sample,
        initial_ii,
        trace.n_steps,
        trace.converged,
        trace.final_ii,
        eig.lambda_max,
        gm_log,
        log_frobenius_distance(m, ev_matrix),
        gm_frob,
        frobenius_distance(m, ev_matrix),
        float(np.max(np.abs(gm.values - eig.vector.values))),
    )


def _run_chunk(args: tuple[ExperimentConfig, range]) -> list[SampleRecord]:
    config, samples = args
    return [run_sample(config, s) for s in samples]


def run_experiment(config: ExperimentConfig, workers: int = 1) -> ExperimentReport:
    """Run every sample and aggregate.  Output is identical for any ``workers``."""
    if workers <= 1:
        records = [run_sample(config, s) for s in range(config.samples)]
    else:
        bounds = np.linspace(0, config.samples, workers + 1).astype(int)
        chunks = [(config, range(lo, hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = [r for part in pool.map(_run_chunk, chunks) for r in part]
    return ExperimentReport(config, records)


def summarize(records: list[SampleRecord]) -> dict:
    ok = [r for r in records if not r.error]
    steps = [r.steps for r in records]

    def stats(values):
        if not values:
            return {"mean": None, "median": None}
        return {"mean": statistics.fmean(values), "median": statistics.median(values)}

    return {
        "samples": len(records),
        "eigen_failures": len(records) - len(ok),
        "converged": sum(r.converged for r in records),
        "initial_ii": stats([r.initial_ii for r in records]),
        "steps": stats(steps) | {"max": max(steps) if steps else None},
        "steps_histogram": {str(k): v for k, v in sorted(Counter(steps).items())},
        "gm_log_distance": stats([r.gm_log_distance for r in records]),
        "ev_log_distance": stats([r.ev_log_distance for r in ok]),
        "gm_frobenius": stats([r.gm_frobenius for r in records]),
        "ev_frobenius": stats([r.ev_frobenius for r in ok]),
        "fraction_gm_log_le_ev": (
            sum(r.gm_log_distance <= r.ev_log_distance for r in ok) / len(ok) if ok else None
        ),
        "fraction_gm_frobenius_le_ev": (
            sum(r.gm_frobenius <= r.ev_frobenius for r in ok) / len(ok) if ok else None
        ),
        "max_log_distance_gap": (
            max(abs(r.gm_log_distance - r.ev_log_distance) for r in ok) if ok else None
        ),
    }
