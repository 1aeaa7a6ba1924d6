"""Command-line front end.

    bigraph census --rows 2 --cols 2 --ones 2 --format json
    bigraph verify --rows 3 --cols 3 --all-k
    bigraph class --matrix "10|01"
    bigraph sweep --rows 4 --cols 4

Exit codes: 0 success, 1 invalid arguments, 2 a nonzero residual was
measured for the identity sum of 1/prod(delta!) (a finding, not a failure),
3 an exact cross-check failed (a bug), 4 the combination budget was exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path

from .canonical import orbit_data
from .census import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Census,
    CensusError,
    ConsistencyError,
    IdentityReport,
    class_record,
    enumerate_census,
    report_of,
)
from .core import BinaryMatrix

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RESIDUAL = 2
EXIT_INCONSISTENT = 3
EXIT_BUDGET = 4

CACHE_ENV = "BIGRAPH_CACHE_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    rows: int | None = None
    cols: int | None = None
    ones: int | None = None
    all_k: bool = False
    mode: str = "both"
    format: str = "text"
    output: Path | None = None
    cache_dir: Path | None = None
    budget: int = DEFAULT_BUDGET
    threads: int = 1
    matrix: str | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        cache = args.cache_dir or os.environ.get(CACHE_ENV) or None
        return cls(
            command=args.command,
            rows=getattr(args, "rows", None),
            cols=getattr(args, "cols", None),
            ones=getattr(args, "ones", None),
            all_k=getattr(args, "all_k", False),
            mode=getattr(args, "mode", "both"),
            format=args.format or ("json" if args.command == "census" else "text"),
            output=Path(args.output) if args.output else None,
            cache_dir=Path(cache) if cache else None,
            budget=args.budget,
            threads=args.threads,
            matrix=getattr(args, "matrix", None),
        )


def fraction_text(q: Fraction) -> str:
    return str(q) if q.denominator != 1 else f"{q.numerator}/1"


def cache_path(cache_dir: Path, m: int, n: int, k: int) -> Path:
    return cache_dir / f"{m}-{n}-{k}.json"


def load_cached(cache_dir: Path | None, m: int, n: int, k: int) -> Census | None:
    if cache_dir is None:
        return None
    path = cache_path(cache_dir, m, n, k)
    if not path.exists():
        return None
    return Census.from_json(path.read_text())


def store_cached(cache_dir: Path | None, census: Census) -> None:
    if cache_dir is None:
        return
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_path(cache_dir, census.m, census.n, census.k)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(census.to_json())
    tmp.replace(path)


def _emit(config: RunConfig, text: str) -> None:
    if config.output is None:
        sys.stdout.write(text)
    else:
        config.output.write_text(text)


def census_text(c: Census) -> str:
    lines = [
        f"m={c.m} n={c.n} k={c.k} classes={c.num_classes} binomial={c.binomial}",
        f"lhs={fraction_text(c.paper_lhs)} rhs={fraction_text(c.paper_rhs)} "
        f"residual={fraction_text(c.residual)}",
        f"partition={'ok' if c.exact_partition_ok else 'FAIL'} "
        f"eq2={'ok' if c.eq2_exact_ok else 'FAIL'} mismatches={len(c.mismatch_classes)}",
    ]
    for r in c.classes:
        lines.append(
            f"  {r.canonical}  orbit={r.orbit_size} stab={r.stabilizer_order} "
            f"deltas=[{' '.join(map(str, r.deltas_rows))} | {' '.join(map(str, r.deltas_cols))}] "
            f"prod={r.delta_factorial_product}"
        )
    return "\n".join(lines) + "\n"


def _require(config: RunConfig, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(config, n) is None]
    if missing:
        raise UsageError(f"{config.command} requires {', '.join(missing)}")


def cmd_census(config: RunConfig) -> int:
    _require(config, "rows", "cols", "ones")
    census = load_cached(config.cache_dir, config.rows, config.cols, config.ones)
    if census is None:
        census = enumerate_census(config.rows, config.cols, config.ones,
                                  budget=config.budget, threads=config.threads)
        store_cached(config.cache_dir, census)
    if config.format == "csv":
        _emit(config, census.to_csv())
    elif config.format == "text":
        _emit(config, census_text(census))
    else:
        _emit(config, census.to_json())
    return EXIT_OK


def _report_line(r: IdentityReport, mode: str) -> str:
    parts = [f"m={r.m} n={r.n} k={r.k} classes={r.num_classes}"]
    if mode in ("paper", "both"):
        parts.append(f"lhs={fraction_text(r.paper_lhs)} rhs={fraction_text(r.paper_rhs)} "
                     f"residual={fraction_text(r.residual)}")
        if r.mismatch_classes:
            parts.append(f"mismatch={','.join(r.mismatch_classes)}")
    if mode in ("exact", "both"):
        parts.append(f"partition={'ok' if r.exact_partition_ok else 'FAIL'} "
                     f"eq2={'ok' if r.eq2_exact_ok else 'FAIL'}")
    return "  ".join(parts)


def _measure(config: RunConfig, m: int, n: int, k: int) -> tuple[IdentityReport, bool]:
    """Fresh report plus whether it agrees with any cached census for the same key."""
    census = enumerate_census(m, n, k, budget=config.budget, threads=config.threads)
    cached = load_cached(config.cache_dir, m, n, k)
    if cached is None:
        store_cached(config.cache_dir, census)
        agrees = True
    else:
        agrees = (cached.residual == census.residual
                  and cached.num_classes == census.num_classes)
    return report_of(census), agrees


def _run_reports(config: RunConfig, keys) -> int:
    reports = []
    stale = []
    for m, n, k in keys:
        report, agrees = _measure(config, m, n, k)
        reports.append(report)
        if not agrees:
            stale.append(f"{m}-{n}-{k}")

    if config.format == "json":
        _emit(config, json.dumps({"mode": config.mode,
                                  "reports": [r.to_dict() for r in reports],
                                  "cache_disagreements": stale}, indent=2) + "\n")
    else:
        lines = [_report_line(r, config.mode) for r in reports]
        nonzero = sum(r.residual != 0 for r in reports)
        failed = sum(not r.exact_ok for r in reports)
        summary = [f"{len(reports)} reports"]
        if config.mode != "exact":
            summary.append(f"{nonzero} nonzero residuals")
        summary += [f"{failed} exact-check failures", f"{len(stale)} cache disagreements"]
        lines.append(", ".join(summary))
        _emit(config, "\n".join(lines) + "\n")

    if stale or any(not r.exact_ok for r in reports):
        return EXIT_INCONSISTENT
    if config.mode != "exact" and any(r.residual != 0 for r in reports):
        return EXIT_RESIDUAL
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    _require(config, "rows", "cols")
    m, n = config.rows, config.cols
    if config.all_k:
        ks = range(m * n + 1)
    else:
        _require(config, "ones")
        ks = [config.ones]
    return _run_reports(config, [(m, n, k) for k in ks])


def cmd_sweep(config: RunConfig) -> int:
    _require(config, "rows", "cols")
    if config.rows < 1 or config.cols < 1:
        raise CensusError("sweep bounds must be positive")
    keys = [(m, n, k)
            for m in range(1, config.rows + 1)
            for n in range(1, config.cols + 1)
            for k in range(m * n + 1)]
    for m, n, k in keys:
        if comb(m * n, k) > config.budget:
            raise BudgetExceeded(f"sweep includes C({m * n}, {k}) = {comb(m * n, k)} "
                                 f"> budget {config.budget}")
    return _run_reports(config, keys)


def cmd_class(config: RunConfig) -> int:
    _require(config, "matrix")
    try:
        a = BinaryMatrix.from_string(config.matrix)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = orbit_data(a)
    rec = class_record(data.canonical)
    if rec.orbit_size != data.orbit_size:
        raise ConsistencyError("orbit size of the input and its canonical form differ")
    if config.format == "json":
        _emit(config, json.dumps({"input": str(a), **rec.to_dict()}, indent=2) + "\n")
    else:
        _emit(config, "\n".join([
            f"input: {a}",
            f"canonical: {rec.canonical}",
            f"orbit_size: {rec.orbit_size}",
            f"stabilizer_order: {rec.stabilizer_order}",
            f"deltas_rows: {' '.join(map(str, rec.deltas_rows))}",
            f"deltas_cols: {' '.join(map(str, rec.deltas_cols))}",
            f"delta_fact_product: {rec.delta_factorial_product}",
            f"row_degrees: {' '.join(map(str, rec.row_degrees))}",
            f"col_degrees: {' '.join(map(str, rec.col_degrees))}",
        ]) + "\n")
    return EXIT_OK


COMMANDS = {"census": cmd_census, "verify": cmd_verify, "class": cmd_class, "sweep": cmd_sweep}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bigraph", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"])
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--cache-dir", help=f"census cache directory (default ${CACHE_ENV})")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="largest C(mn, k) to enumerate (default %(default)s)")
    common.add_argument("--threads", type=int, default=1, help="worker processes, 0 = auto")

    shape = _Parser(add_help=False)
    shape.add_argument("--rows", type=int, help="m, the number of row vertices")
    shape.add_argument("--cols", type=int, help="n, the number of column vertices")

    p = sub.add_parser("census", parents=[common, shape], help="enumerate classes for (m, n, k)")
    p.add_argument("--ones", type=int, help="k, the number of edges")

    p = sub.add_parser("verify", parents=[common, shape], help="check the identity for (m, n, k)")
    p.add_argument("--ones", type=int)
    p.add_argument("--all-k", action="store_true", help="every k from 0 to m*n")
    p.add_argument("--mode", choices=["paper", "exact", "both"], default="both")

    p = sub.add_parser("sweep", parents=[common, shape],
                       help="verify every m <= rows, n <= cols and k")
    p.add_argument("--mode", choices=["paper", "exact", "both"], default="both")

    p = sub.add_parser("class", parents=[common], help="characteristics of one matrix")
    p.add_argument("--matrix", help='matrix string such as "01|10"')
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig.from_args(args)
    if config.format == "csv" and config.command != "census":
        print("bigraph: error: csv output is only available for census", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[config.command](config)
    except BudgetExceeded as exc:
        print(f"bigraph: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, CensusError) as exc:
        print(f"bigraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"bigraph: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
