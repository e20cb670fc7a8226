"""Command-line front end.

    indefsplit analyze A.mtx M.mtx [--format json] [--out report.json]
    indefsplit trace A.mtx M.mtx --kind T --steps 512 --out curves.csv
    indefsplit paper-example --check
    indefsplit sweep --dims 2..6 --count 100 --seed 42 [--mismatch-only]

Exit codes: 0 success, 1 check failure, 2 usage or input error,
3 numerical error (singular matrix, non-convergence).
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import NumericalError, ParameterError
from .homotopy import DEFAULT_STEPS, MIN_STEPS, trace
from .mmio import MatrixMarketError, load_symmetric
from .pencil import DEFAULT_REAL_TOL
from .report import (
    build_report,
    dumps,
    paper_example_checks,
    render_checks,
    render_sweep_text,
    render_text,
    sweep,
    trajectory_csv,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    pass


def _steps(text):
    n = int(text)
    if n < MIN_STEPS:
        raise argparse.ArgumentTypeError(f"--steps must be >= {MIN_STEPS}")
    return n


def _dims(text):
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"--dims expects A..B, got {text!r}") from None
    if lo_i < 1 or hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"--dims needs 1 <= A <= B, got {text!r}")
    return list(range(lo_i, hi_i + 1))


def _nonneg(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def _add_tolerances(p):
    p.add_argument("--tol-zero", type=float, default=None, metavar="X",
                   help="zero threshold for inertia (default 1e-12*dim*max|a_ij|)")
    p.add_argument("--tol-real", type=float, default=DEFAULT_REAL_TOL, metavar="X",
                   help="|im| <= X*(1+|lambda|) counts as real (default %(default)g)")


def _add_output(p, formats=True):
    if formats:
        p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="PATH", default=None, help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="indefsplit",
        description="Inertia and contractivity diagnostics for symmetric splittings A = M - N.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one (A, M) pair")
    p.add_argument("matrix_a", metavar="A")
    p.add_argument("matrix_m", metavar="M")
    p.add_argument("--steps", type=_steps, default=DEFAULT_STEPS)
    p.add_argument("--symmetrize", action="store_true", help="accept general input and average with the transpose")
    _add_tolerances(p)
    _add_output(p)

    p = sub.add_parser("trace", help="eigenvalue curves of the homotopy as CSV")
    p.add_argument("matrix_a", metavar="A")
    p.add_argument("matrix_m", metavar="M")
    p.add_argument("--kind", choices=("T", "S"), default="T")
    p.add_argument("--steps", type=_steps, default=DEFAULT_STEPS)
    p.add_argument("--symmetrize", action="store_true")
    p.add_argument("--tol-zero", type=float, default=None, metavar="X")
    _add_output(p, formats=False)

    p = sub.add_parser("paper-example", help="recompute the worked 5x5 example")
    p.add_argument("--check", action="store_true", help="exit 1 unless every printed value is reproduced")
    p.add_argument("--tol", type=float, default=1e-3, help="comparison tolerance (default %(default)g)")
    p.add_argument("--steps", type=_steps, default=DEFAULT_STEPS)
    _add_output(p, formats=False)

    p = sub.add_parser("sweep", help="theory checks over seeded random pairs")
    p.add_argument("--dims", type=_dims, default=_dims("2..6"), metavar="A..B")
    p.add_argument("--count", type=_nonneg, default=100, metavar="N", help="cases per dimension")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--mismatch-only", action="store_true", help="only pairs whose inertias differ")
    p.add_argument("--steps", type=_steps, default=DEFAULT_STEPS)
    _add_output(p)
    return parser


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_pair(args):
    a = load_symmetric(args.matrix_a, args.symmetrize)
    m = load_symmetric(args.matrix_m, args.symmetrize)
    if a.shape != m.shape:
        raise UsageError(
            f"dimension mismatch: {args.matrix_a} is {a.shape[0]}x{a.shape[0]}, "
            f"{args.matrix_m} is {m.shape[0]}x{m.shape[0]}"
        )
    return a, m


def cmd_analyze(args) -> int:
    a, m = _load_pair(args)
    inputs = {"A": args.matrix_a, "M": args.matrix_m}
    doc = build_report(a, m, inputs, steps=args.steps, zero_tol=args.tol_zero, real_tol=args.tol_real)
    _emit(dumps(doc) if args.format == "json" else render_text(doc), args.out)
    return EXIT_OK


def cmd_trace(args) -> int:
    a, m = _load_pair(args)
    tr = trace(a, m, args.kind, args.steps, args.tol_zero)
    _emit(trajectory_csv(tr), args.out)
    return EXIT_OK


def cmd_paper_example(args) -> int:
    rows = paper_example_checks(args.tol, args.steps)
    _emit(render_checks(rows, args.tol), args.out)
    if args.check and not all(r.passed for r in rows if r.decisive):
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_sweep(args) -> int:
    result = sweep(args.dims if args.count else [], args.count, args.seed, args.mismatch_only, args.steps)
    _emit(dumps(result) if args.format == "json" else render_sweep_text(result), args.out)
    return EXIT_CHECK_FAILED if result["summary"]["violations"] else EXIT_OK


_COMMANDS = {
    "analyze": cmd_analyze,
    "trace": cmd_trace,
    "paper-example": cmd_paper_example,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (MatrixMarketError, UsageError, ParameterError, OSError) as exc:
        print(f"indefsplit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"indefsplit: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
