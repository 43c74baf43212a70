"""Command-line front end.

Exit codes: 0 clean, 1 verification mismatch, 2 usage error, 3 full
candidate found.  Machine-readable records go to stdout (or ``--output``);
human summaries go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from math import isqrt
from pathlib import Path

from . import __version__
from .arith import as_power_of_two, factorize, format_factorization, format_ratio, sigma_from_factorization
from .criteria import (
    deficiency_report,
    is_almost_perfect_criterion,
    is_almost_perfect_direct,
    is_deficient_criterion,
    verify_criteria,
)
from .pipeline import evaluate_candidate
from .search import PAPER_A059046, TASK_A059046, TASK_SCAN, run_task
from .sieve import DEFAULT_SEGMENT_SIZE, MIN_SEGMENT_SIZE

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_FOUND = 3

JOBS_ENV = "ALMOSTPERFECT_JOBS"

log = logging.getLogger("almostperfect")


@dataclass
class RunConfig:
    subcommand: str
    lo: int
    hi: int
    segment_size: int = DEFAULT_SEGMENT_SIZE
    jobs: int = 1
    checkpoint_path: Path | None = None
    resume: bool = False
    output_path: Path | None = None

    def __post_init__(self) -> None:
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.segment_size < MIN_SEGMENT_SIZE:
            raise ValueError(f"segment size must be >= {MIN_SEGMENT_SIZE}")
        if self.hi < self.lo:
            raise ValueError(f"empty range [{self.lo}, {self.hi}]")
        if self.resume and self.checkpoint_path is None:
            raise ValueError("--resume needs --checkpoint")


def _int_at_least(minimum: int):
    def parse(text: str) -> int:
        try:
            value = int(text.replace("_", ""))
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {value}")
        return value

    parse.__name__ = f"int>={minimum}"
    return parse


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV)
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        log.warning("ignoring non-integer %s=%r", JOBS_ENV, raw)
        return 1


def _yn(flag: bool) -> str:
    return "true" if flag else "false"


def _dash(v) -> str:
    return "-" if v is None else str(v)


# -- subcommands ------------------------------------------------------------


def cmd_inspect(args) -> int:
    n = args.n
    factors = factorize(n)
    rep = deficiency_report(n, sigma_from_factorization(factors))
    s = rep.sigma_n
    out = [
        ("n", n),
        ("factorization", format_factorization(factors)),
        ("omega", len(factors)),
        ("sigma", s),
        ("deficiency", rep.deficiency),
        ("abundancy", format_ratio(rep.abundancy)),
        ("almost_perfect_direct", _yn(is_almost_perfect_direct(n, s))),
        ("almost_perfect_criterion", _yn(is_almost_perfect_criterion(n, s))),
        ("deficient_direct", _yn(s < 2 * n)),
        ("deficient_criterion", _yn(is_deficient_criterion(n, s))),
        ("power_of_two", _dash(as_power_of_two(n))),
    ]
    b = isqrt(n)
    if b > 1 and b * b == n and b % 2:
        v = evaluate_candidate(b, s)
        out += [
            ("odd_square_root", b),
            ("candidate.admissible", _yn(v.admissible)),
            ("candidate.sigma_b2", v.sigma_b2),
            ("candidate.divisibility_holds", _yn(v.divisibility_holds)),
            ("candidate.quotient", _dash(v.quotient)),
            ("candidate.determined_r", _dash(v.determined_r)),
        ]
        out += [(f"candidate.check.{name}", "pass" if ok else "fail") for name, ok in v.bound_checks]
        out += [
            ("candidate.direct_confirmed", _dash(None if v.direct_confirmed is None else _yn(v.direct_confirmed))),
            ("candidate.is_full_candidate", _yn(v.is_full_candidate)),
        ]
    width = max(len(k) for k, _ in out)
    for key, value in out:
        print(f"{key:<{width}}  {value}")
    return EXIT_OK


def cmd_verify_criteria(args) -> int:
    summary = verify_criteria(args.limit, args.segment_size)
    odd_others = [n for n in summary.almost_perfect if as_power_of_two(n) is None]
    print(f"limit\t{summary.limit}")
    print(f"almost_perfect\t{len(summary.almost_perfect)}\t{','.join(map(str, summary.almost_perfect))}")
    print(f"almost_perfect_not_power_of_two\t{len(odd_others)}")
    print(f"deficient\t{summary.deficient_count}")
    print(f"discrepancies\t{len(summary.discrepancies)}")
    for which, n in summary.discrepancies:
        print(f"DISCREPANCY\t{which}\t{n}")
    print(f"verify-criteria: n <= {summary.limit}: {len(summary.discrepancies)} discrepancies", file=sys.stderr)
    return EXIT_OK if summary.ok else EXIT_MISMATCH


def _config(args, lo: int, hi: int) -> RunConfig:
    return RunConfig(
        args.command, lo, hi, args.segment_size, args.jobs,
        args.checkpoint, args.resume, args.output,
    )


def cmd_a059046(args) -> int:
    cfg = _config(args, 2, args.limit)
    fmt = "bfile" if args.bfile else args.format
    terms: list[int] = []
    summary = run_task(
        TASK_A059046, cfg.lo, cfg.hi, cfg.output_path,
        fmt=fmt, segment_size=cfg.segment_size, jobs=cfg.jobs,
        checkpoint_path=cfg.checkpoint_path, resume=cfg.resume,
        max_units=args.max_segments, on_hit=lambda h: terms.append(h.n),
    )
    print(f"a059046: {summary.hits} terms <= {cfg.hi}", file=sys.stderr)
    if not summary.completed:
        print("a059046: stopped early; continue with --resume", file=sys.stderr)
        return EXIT_OK
    if args.verify_paper:
        if summary.resumed_from not in (None, 2):
            print("a059046: resumed run, earlier terms not re-checked against the listing", file=sys.stderr)
            return EXIT_OK
        expected = [t for t in PAPER_A059046 if t <= cfg.hi]
        got = terms[: len(PAPER_A059046)]
        if got != expected:
            print(f"a059046: golden mismatch: expected {expected}, got {got}", file=sys.stderr)
            return EXIT_MISMATCH
        print(f"a059046: first {len(expected)} terms match the printed listing", file=sys.stderr)
    return EXIT_OK


def cmd_search(args) -> int:
    cfg = _config(args, args.u_min, args.u_max)
    try:
        summary = run_task(
            TASK_SCAN, cfg.lo, cfg.hi, cfg.output_path,
            segment_size=cfg.segment_size, jobs=cfg.jobs,
            checkpoint_path=cfg.checkpoint_path, resume=cfg.resume,
            diagnostic=args.diagnostic, max_units=args.max_segments,
        )
    except KeyboardInterrupt:
        print("search: interrupted; the checkpoint covers every flushed record", file=sys.stderr)
        return 130
    if summary.normalized:
        print(f"search: u-min {summary.requested_lo} rounded up to {summary.range_lo}", file=sys.stderr)
    near = summary.hits - summary.candidates
    print(
        f"search: u in [{summary.range_lo}, {summary.range_hi}]: evaluated {summary.evaluated}, "
        f"near misses {near}, full candidates {summary.candidates}",
        file=sys.stderr,
    )
    if summary.best_near_miss is not None:
        print(f"search: best near miss b = {summary.best_near_miss}", file=sys.stderr)
    if not summary.completed:
        print("search: stopped early; continue with --resume", file=sys.stderr)
    if summary.candidates:
        return EXIT_FOUND
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--jobs", type=_int_at_least(1), default=_default_jobs(),
                   help=f"worker processes (default from ${JOBS_ENV}, else 1)")
    p.add_argument("--segment-size", type=_int_at_least(MIN_SEGMENT_SIZE), default=DEFAULT_SEGMENT_SIZE)
    p.add_argument("--checkpoint", type=Path, help="checkpoint file, rewritten after every merged segment")
    p.add_argument("--resume", action="store_true", help="continue from --checkpoint")
    p.add_argument("--output", type=Path, help="write records here instead of stdout")
    p.add_argument("--max-segments", type=_int_at_least(1), help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="almostperfect", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inspect", help="report divisor-sum quantities for one integer")
    p.add_argument("n", type=_int_at_least(1))
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("verify-criteria", help="check both abundancy criteria against direct tests")
    p.add_argument("--limit", type=_int_at_least(1), required=True)
    p.add_argument("--segment-size", type=_int_at_least(MIN_SEGMENT_SIZE), default=DEFAULT_SEGMENT_SIZE)
    p.set_defaults(func=cmd_verify_criteria)

    p = sub.add_parser("a059046", help="generate n with (sigma(n) - n) | (n - 1)")
    p.add_argument("--limit", type=_int_at_least(2), required=True)
    p.add_argument("--verify-paper", action="store_true", help="compare with the 62 published terms")
    p.add_argument("--bfile", action="store_true", help="OEIS b-file lines '<index> <term>'")
    p.add_argument("--format", choices=("plain", "bfile", "hits"), default="plain")
    _add_run_options(p)
    p.set_defaults(func=cmd_a059046)

    p = sub.add_parser("search", help="scan odd u for a possible odd part u^2")
    p.add_argument("--u-min", type=_int_at_least(1), default=35)
    p.add_argument("--u-max", type=_int_at_least(1), required=True)
    p.add_argument("--diagnostic", action="store_true", help="also scan prime powers u")
    _add_run_options(p)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
