"""Command-line interface.

Exit codes: 0 success, 2 bad input or flags, 3 reduction hit ``--max-steps``
above the threshold.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io as pcio
from .core import PCMatrixError, consistent_from_vector, reciprocalize, row_geometric_means, validate
from .inconsistency import matrix_ii
from .montecarlo import ExperimentConfig, run_experiment
from .reduction import ReductionConfig, frobenius_distance, log_frobenius_distance, reduce
from .spectral import ConvergenceError, principal_eigenpair

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_CONVERGED = 3

PRECISION = 9


class InputError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.{PRECISION}f}"


def _fmt_vec(v) -> str:
    return " ".join(_fmt(x) for x in v)


def _load(args) -> np.ndarray:
    """Read the input matrix; require reciprocity unless ``--reciprocalize`` was given."""
    try:
        m = pcio.read_matrix(args.file)
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    except PCMatrixError as exc:
        raise InputError(str(exc)) from None
    report = validate(m)
    if not report.valid:
        raise InputError(str(report))
    if not report.ok:
        if not getattr(args, "reciprocalize", False):
            raise InputError(f"{report}\n(re-run with --reciprocalize to repair)")
        for v in report.violations:
            print(f"warning: repaired {v}", file=sys.stderr)
        m = reciprocalize(m)
    return m


def _eigen(m: np.ndarray):
    try:
        return principal_eigenpair(m)
    except ConvergenceError as exc:
        raise InputError(f"{exc} (residual {exc.residual:.3e})") from None


def cmd_analyze(args) -> int:
    m = _load(args)
    n = len(m)
    ii = matrix_ii(m)
    eig = _eigen(m)
    ci = max(0.0, (eig.lambda_max - n) / (n - 1)) if n > 1 else 0.0
    gm = row_geometric_means(m).normalized()
    if args.json:
        doc = {
            "n": n,
            "validation": validate(m).status,
            "inconsistency": ii.to_dict(include_scores=args.scores),
            "lambda_max": eig.lambda_max,
            "ci": ci,
            "gm": gm.values.tolist(),
            "ev": eig.vector.values.tolist(),
        }
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    print(f"validation: {validate(m)}")
    print(f"n: {n}")
    print(f"ii: {_fmt(ii.ii)}")
    if ii.worst is not None:
        t = ii.worst.triad
        print(f"worst triad: ({t.i + 1},{t.j + 1},{t.k + 1})")
    print(f"lambda_max: {_fmt(eig.lambda_max)}")
    print(f"CI: {_fmt(ci)}")
    print(f"GM weights: {_fmt_vec(gm.values)}")
    print(f"EV weights: {_fmt_vec(eig.vector.values)}")
    if args.scores:
        for s in ii.scores:
            t = s.triad
            print(f"  ({t.i + 1},{t.j + 1},{t.k + 1}) ii={_fmt(s.ii)}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    m = _load(args)
    try:
        config = ReductionConfig(args.threshold, args.max_steps, "scores-only" if args.trace else "none")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    final, trace = reduce(m, config)

    text = pcio.format_json(final) if pcio.is_json_path(args.file) else pcio.format_csv(final)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.trace:
        Path(args.trace).write_text(trace.to_jsonl())
    print(f"steps: {trace.n_steps}, final ii: {trace.final_ii:.3e}", file=sys.stderr)
    if not trace.converged:
        print(f"error: ii still {trace.final_ii:.3e} > {args.threshold} after {trace.n_steps} steps", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_weights(args) -> int:
    m = _load(args)
    w = row_geometric_means(m).normalized() if args.method == "gm" else _eigen(m).vector
    for x in w.values:
        print(_fmt(x))
    return EXIT_OK


def cmd_compare(args) -> int:
    m = _load(args)
    gm = row_geometric_means(m).normalized()
    ev = _eigen(m).vector
    gm_m, ev_m = consistent_from_vector(gm), consistent_from_vector(ev)
    print(f"GM weights: {_fmt_vec(gm.values)}")
    print(f"EV weights: {_fmt_vec(ev.values)}")
    print(f"max |GM - EV|: {float(np.max(np.abs(gm.values - ev.values))):.3e}")
    print(f"log-Frobenius distance  GM: {_fmt(log_frobenius_distance(m, gm_m))}  EV: {_fmt(log_frobenius_distance(m, ev_m))}")
    print(f"Frobenius distance      GM: {_fmt(frobenius_distance(m, gm_m))}  EV: {_fmt(frobenius_distance(m, ev_m))}")
    return EXIT_OK


def cmd_montecarlo(args) -> int:
    try:
        config = ExperimentConfig(
            n=args.n, samples=args.samples, beta=args.beta, seed=args.seed,
            threshold=args.threshold, max_steps=args.max_steps,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = run_experiment(config, workers=args.workers)
    if args.out:
        csv_path, json_path = report.write(args.out)
        print(f"wrote {csv_path} and {json_path}", file=sys.stderr)
    else:
        sys.stdout.write(report.to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcreduce",
        description="Inconsistency analysis and reduction for pairwise comparisons matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def matrix_command(name: str, help: str):
        p = sub.add_parser(name, help=help)
        p.add_argument("file", help="matrix file (.json, otherwise CSV)")
        p.add_argument("--reciprocalize", action="store_true",
                       help="repair non-reciprocal input with m_ij = sqrt(m_ij/m_ji)")
        return p

    p = matrix_command("analyze", "validation, ii, lambda_max, CI and weight vectors")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--scores", action="store_true", help="list every triad's ii")
    p.set_defaults(func=cmd_analyze)

    p = matrix_command("reduce", "iterative worst-triad inconsistency reduction")
    p.add_argument("--threshold", type=float, default=1e-6)
    p.add_argument("--max-steps", type=int, default=10_000)
    p.add_argument("--trace", metavar="PATH", help="write the per-step trace as JSON lines")
    p.add_argument("--out", metavar="PATH", help="write the reduced matrix here instead of stdout")
    p.set_defaults(func=cmd_reduce)

    p = matrix_command("weights", "sum-to-one priority vector")
    p.add_argument("--method", choices=("gm", "ev"), default="gm")
    p.set_defaults(func=cmd_weights)

    p = matrix_command("compare", "GM vs EV weights and distances of their consistent matrices")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("montecarlo", help="random matrix experiment")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=float, default=1e-6)
    p.add_argument("--max-steps", type=int, default=100_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", metavar="PREFIX", help="write PREFIX.csv and PREFIX.json (default: summary to stdout)")
    p.set_defaults(func=cmd_montecarlo)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
