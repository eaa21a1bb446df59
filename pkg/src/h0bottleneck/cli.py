"""
Command-line interface::

    h0bottleneck dist A.csv B.csv [--format pairs] [--verbose]
    h0bottleneck matrix DIR_OR_FILES... [--out M.csv] [--summary-out S.json]
    h0bottleneck simulate --n-points N --seed S --out A.csv [--partner-out B.csv]
    h0bottleneck verify --count 1000 --max-size 8 --seed 7
    h0bottleneck bench --sweep equal-size --sizes 10000:200000:10000 --reps 20

Exit status: 0 success, 1 usage or parse error, 2 validation error,
3 verification mismatch.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import verify as verify_mod
from .algorithm import bottleneck0
from .bench import SETTINGS, report_json, sweep, sweep_heatmap, write_records
from .diagram import (DiagramParseError, DiagramValidationError, ValidationPolicy,
                      read_diagram, write_diagram)
from .features import pairwise_matrix, summarize_distances
from .simulate import PairSpec, SimSpec, simulate_diagram, simulate_pair

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def format_distance(value: float) -> str:
    """Display form: 10 significant digits, trailing zeros dropped."""
    return f"{value:.10g}"


def _policy(args) -> ValidationPolicy:
    return ValidationPolicy(args.on_nonzero_birth, args.on_infinite_death, args.zero_tolerance)


def _add_input_flags(p):
    p.add_argument("--format", choices=["deaths", "pairs"], default="deaths",
                   help="deaths: one death per line; pairs: birth,death per line")
    p.add_argument("--on-nonzero-birth", choices=["reject", "coerce"], default="reject")
    p.add_argument("--on-infinite-death", choices=["reject", "drop"], default="reject")
    p.add_argument("--zero-tolerance", type=float, default=0.0)


def _read(path, args):
    try:
        return read_diagram(path, args.format, _policy(args))
    except OSError as err:
        raise UsageError(f"{path}: {err.strerror or err}") from None
    except DiagramParseError as err:
        raise UsageError(f"{path}: {err}") from None
    except DiagramValidationError as err:
        raise DiagramValidationError(f"{path}: {err}") from None


def _parse_sizes(text: str) -> list[int]:
    sizes = []
    for part in text.split(","):
        if ":" in part:
            start, stop, *step = (int(v) for v in part.split(":"))
            sizes += list(range(start, stop + 1, step[0] if step else 1))
        elif part.strip():
            sizes.append(int(part))
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return sizes


def _out(path):
    return open(path, "w", newline="", encoding="utf-8") if path else None


def cmd_dist(args) -> int:
    a = _read(args.file_a, args)
    b = _read(args.file_b, args)
    result = bottleneck0(a, b)
    print(repr(result.value) if args.full else format_distance(result.value))
    if args.verbose:
        print(f"case: {result.terminal_case.value}  trims: {result.trims}", file=sys.stderr)
    return EXIT_OK


def _diagram_paths(items) -> list[Path]:
    paths = []
    for item in map(Path, items):
        if item.is_dir():
            paths += sorted(p for p in item.iterdir() if p.suffix == ".csv")
        else:
            paths.append(item)
    if not paths:
        raise UsageError("no diagram files given")
    return paths


def cmd_matrix(args) -> int:
    paths = _diagram_paths(args.inputs)
    labels = [p.stem for p in paths]
    if len(set(labels)) != len(labels):
        labels = [str(p) for p in paths]
    matrix = pairwise_matrix([(lab, _read(p, args)) for lab, p in zip(labels, paths)])
    fh = _out(args.out)
    matrix.to_csv(fh or sys.stdout)
    if fh:
        fh.close()
    if args.summary_out:
        summary = (asdict(summarize_distances(matrix)) if len(labels) > 1 else None)
        with open(args.summary_out, "w", encoding="utf-8") as fh:
            json.dump({"diagrams": len(labels), "summary": summary}, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def cmd_simulate(args) -> int:
    base = SimSpec(args.n_points, args.upper, args.seed)
    if args.partner_out:
        a, b = simulate_pair(PairSpec(base, args.jitter, args.partner_range_rule))
    else:
        a, b = simulate_diagram(base), None
    for diagram, path in ((a, args.out), (b, args.partner_out)):
        if diagram is None:
            continue
        fh = _out(path)
        write_diagram(diagram, fh or sys.stdout, args.format)
        if fh:
            fh.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    report = verify_mod.run_verify(args.count, args.max_size, args.seed)
    print(report.format())
    if report.ok:
        return EXIT_OK
    Path(args.repro_out).write_text(report.mismatches[0].to_json() + "\n", encoding="utf-8")
    print(f"counterexample written to {args.repro_out}", file=sys.stderr)
    return EXIT_MISMATCH


def cmd_bench(args) -> int:
    def progress(n, reps):
        print(f"  n={n}: {reps} pairs", file=sys.stderr)

    kw = dict(include_sort=args.include_sort_time)
    if args.sweep == "heatmap":
        records = []
        grid = sweep_heatmap(args.sizes, args.reps, args.seed, records=records, **kw)
        extra = {"sweep": "heatmap",
                 "heatmap": [{"i": i, "j": j, "median_seconds": t}
                             for (i, j), t in sorted(grid.items())]}
    else:
        records = sweep(args.sweep, args.sizes, args.reps, args.seed, progress=progress, **kw)
        extra = {"sweep": args.sweep}
    fh = _out(args.out)
    write_records(records, fh or sys.stdout)
    if fh:
        fh.close()
    text = report_json(records, include_sort=args.include_sort_time, extra=extra)
    if args.fit_out:
        Path(args.fit_out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text, file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="h0bottleneck",
                     description="Dimension-zero bottleneck distance tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="distance between two diagram files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    _add_input_flags(p)
    p.add_argument("--verbose", action="store_true", help="report the resolving case")
    p.add_argument("--full", action="store_true", help="print full float precision")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("matrix", help="pairwise distance matrix over diagram files")
    p.add_argument("inputs", nargs="+", help="CSV files or directories of them")
    _add_input_flags(p)
    p.add_argument("--out", help="matrix CSV (default: stdout)")
    p.add_argument("--summary-out", help="distribution summary JSON")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("simulate", help="write seeded synthetic diagrams")
    p.add_argument("--n-points", type=int, required=True)
    p.add_argument("--upper", type=float, default=None,
                   help="deaths uniform on (0, UPPER); default 2 * n-points")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="diagram CSV (default: stdout)")
    p.add_argument("--partner-out", help="also write a jittered-size partner diagram")
    p.add_argument("--jitter", type=float, default=0.8)
    p.add_argument("--partner-range-rule", choices=["twice-partner-size", "same-as-base"],
                   default="twice-partner-size")
    p.add_argument("--format", choices=["deaths", "pairs"], default="deaths")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="fuzz against the reference oracles")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--max-size", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repro-out", default="verify-counterexample.json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="timing sweeps with regression fits")
    p.add_argument("--sweep", choices=[*SETTINGS, "heatmap"], default="equal-size")
    p.add_argument("--sizes", type=_parse_sizes, required=True,
                   help="comma list and/or START:STOP[:STEP] ranges")
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="records CSV (default: stdout)")
    p.add_argument("--fit-out", help="summaries and fits JSON (default: stderr)")
    p.add_argument("--include-sort-time", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"h0bottleneck: {err}", file=sys.stderr)
        return EXIT_USAGE
    except DiagramValidationError as err:
        print(f"h0bottleneck: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ValueError, OSError) as err:
        print(f"h0bottleneck: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
