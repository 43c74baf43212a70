"""Range scans: A059046 generation and the odd-square counterexample scan.

A scan walks a range in work units (contiguous segments), collects the
hits of each unit, and merges them strictly in range order.  Units can be
computed by a process pool; the merge, the output file and the checkpoint
all live in the parent, and a checkpoint is only written after every
record before its ``next`` position has been flushed.  Because a unit's
hits depend only on the integers inside it, any segmentation or worker
count produces the same byte stream.
"""

from __future__ import annotations

import io
import logging
import multiprocessing
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from math import isqrt
from pathlib import Path
from typing import Callable, Iterable, Iterator, TextIO

import numpy as np

from .pipeline import MIN_ODD_PART_ROOT, CandidateVerdict, evaluate_candidate
from .sieve import DEFAULT_SEGMENT_SIZE, iter_segments, partition_range, sieve_sigma_segment, sieve_square_segment

log = logging.getLogger(__name__)

TASK_A059046 = "a059046"
TASK_SCAN = "odd-square-scan"
TASKS = (TASK_A059046, TASK_SCAN)

KIND_A059046 = "A059046"
KIND_NEARMISS = "NEARMISS"
KIND_CANDIDATE = "CANDIDATE"

CHECKPOINT_VERSION = 1

# First 62 terms as printed alongside the divisibility lemma.
PAPER_A059046 = (
    2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43,
    47, 49, 53, 59, 61, 64, 67, 71, 73, 77, 79, 81, 83, 89, 97, 101, 103, 107,
    109, 113, 121, 125, 127, 128, 131, 137, 139, 149, 151, 157, 163, 167, 169,
    173, 179, 181, 191, 193, 197, 199, 211,
)


@dataclass(frozen=True)
class ScanHit:
    """One record in a hit stream.

    For A059046 terms ``n`` is the term and ``sigma_n`` is ``sigma(n)``.  For
    scan hits ``n`` is the root ``b`` and ``sigma_n`` is ``sigma(b^2)``.
    """

    kind: str
    n: int
    sigma_n: int
    quotient: int | None
    r: int | None
    flags: tuple[str, ...]
    emitted_at: int = 0
    verdict: CandidateVerdict | None = None

    @property
    def odd_square(self) -> bool:
        return "odd_square" in self.flags

    def record(self) -> str:
        dash = lambda v: "-" if v is None else str(v)  # noqa: E731
        flags = ",".join(self.flags) if self.flags else "-"
        return f"{self.kind}\t{self.n}\t{self.sigma_n}\t{dash(self.quotient)}\t{dash(self.r)}\t{flags}"


@dataclass
class Checkpoint:
    task: str
    range_lo: int
    range_hi: int
    next_unprocessed: int
    hits_count: int = 0
    best_near_miss: int | None = None
    evaluated: int = 0
    candidates: int = 0
    version: int = CHECKPOINT_VERSION

    def __post_init__(self) -> None:
        if self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}")
        if not self.range_lo <= self.next_unprocessed <= self.range_hi + 1:
            raise ValueError("next position outside the checkpointed range")

    @property
    def done(self) -> bool:
        return self.next_unprocessed > self.range_hi

    def dumps(self) -> str:
        lines = [
            f"version={self.version}",
            f"task={self.task}",
            f"range_lo={self.range_lo}",
            f"range_hi={self.range_hi}",
            f"next={self.next_unprocessed}",
            f"hits={self.hits_count}",
            f"best_near_miss={'-' if self.best_near_miss is None else self.best_near_miss}",
            f"evaluated={self.evaluated}",
            f"candidates={self.candidates}",
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Checkpoint":
        kv = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"malformed checkpoint line {line!r}")
            kv[key] = value
        version = int(kv.get("version", "0"))
        if version != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint version {version}")
        best = kv.get("best_near_miss", "-")
        return cls(
            task=kv["task"],
            range_lo=int(kv["range_lo"]),
            range_hi=int(kv["range_hi"]),
            next_unprocessed=int(kv["next"]),
            hits_count=int(kv["hits"]),
            best_near_miss=None if best == "-" else int(best),
            evaluated=int(kv.get("evaluated", "0")),
            candidates=int(kv.get("candidates", "0")),
            version=version,
        )

    def save(self, path: str | os.PathLike) -> None:
        """Write to a sibling temp file, fsync, then rename over ``path``."""
        path = Path(path)
        tmp = path.with_name(path.name + ".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "Checkpoint":
        return cls.loads(Path(path).read_text(encoding="utf-8"))


def normalize_scan_start(u_lo: int) -> int:
    """Round up to the first wheel position: odd, coprime to 3, at least 35."""
    u = max(u_lo, MIN_ODD_PART_ROOT)
    while u % 2 == 0 or u % 3 == 0:
        u += 1
    return u


# -- work units -------------------------------------------------------------


@dataclass
class UnitResult:
    lo: int
    hi: int
    hits: list[ScanHit]
    evaluated: int


def _a059046_unit(lo: int, hi: int) -> UnitResult:
    seg = sieve_sigma_segment(lo, hi, max_size=None)
    sig = seg.sigma_values
    n = np.arange(lo, hi + 1, dtype=np.int64).astype(sig.dtype)
    excess = sig - n
    valid = n >= 2
    # n = 1 has excess 0; it is excluded, and 1 keeps the division defined.
    safe = np.where(valid, excess, 1)
    member = valid & ((n - 1) % safe == 0)
    hits = []
    for i in np.flatnonzero(member).tolist():
        v = lo + i
        s = int(sig[i])
        root = isqrt(v)
        flags = ("odd_square",) if v % 2 and root * root == v else ()
        hits.append(ScanHit(KIND_A059046, v, s, (v - 1) // (s - v), None, flags))
    return UnitResult(lo, hi, hits, int(valid.sum()))


def _scan_unit(lo: int, hi: int, diagnostic: bool = False) -> UnitResult:
    sig2, om = sieve_square_segment(lo, hi, max_size=None)
    u = np.arange(lo, hi + 1, dtype=np.int64).astype(sig2.dtype)
    wheel = (u % 2 == 1) & (u % 3 != 0) & (u >= MIN_ODD_PART_ROOT)
    wheel &= om >= (1 if diagnostic else 2)
    u2 = u * u
    excess = np.where(wheel, sig2 - u2, 1)
    near = wheel & ((u2 - 1) % excess == 0)
    hits = []
    for i in np.flatnonzero(near).tolist():
        b = lo + i
        verdict = evaluate_candidate(b, int(sig2[i]))
        kind = KIND_CANDIDATE if verdict.is_full_candidate else KIND_NEARMISS
        hits.append(
            ScanHit(
                kind, b, verdict.sigma_b2, verdict.quotient, verdict.determined_r,
                tuple(verdict.failed_checks()), verdict=verdict,
            )
        )
    return UnitResult(lo, hi, hits, int(wheel.sum()))


def _run_unit(args: tuple[str, int, int, bool]) -> UnitResult:
    task, lo, hi, diagnostic = args
    if task == TASK_A059046:
        return _a059046_unit(lo, hi)
    return _scan_unit(lo, hi, diagnostic)


def work_units(lo: int, hi: int, segment_size: int, jobs: int) -> list[tuple[int, int]]:
    """Split into ``jobs`` parts, then cut each part into segments."""
    if hi < lo:
        return []
    units = []
    for a, b in partition_range(lo, hi, jobs):
        units.extend(iter_segments(a, b, segment_size))
    return units


def iter_unit_results(
    task: str,
    lo: int,
    hi: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    jobs: int = 1,
    diagnostic: bool = False,
) -> Iterator[UnitResult]:
    """Unit results in range order, computed by ``jobs`` worker processes."""
    if task not in TASKS:
        raise ValueError(f"unknown task {task!r}")
    units = [(task, a, b, diagnostic) for a, b in work_units(lo, hi, segment_size, jobs)]
    if jobs <= 1 or len(units) <= 1:
        for unit in units:
            yield _run_unit(unit)
        return
    with multiprocessing.get_context("fork").Pool(jobs) as pool:
        # imap preserves submission order, which is the ordered merge.
        yield from pool.imap(_run_unit, units, chunksize=1)


def _numbered(results: Iterable[UnitResult], start: int = 0) -> Iterator[ScanHit]:
    k = start
    for res in results:
        for hit in res.hits:
            k += 1
            yield _with_position(hit, k)


def _with_position(hit: ScanHit, k: int) -> ScanHit:
    return ScanHit(hit.kind, hit.n, hit.sigma_n, hit.quotient, hit.r, hit.flags, k, hit.verdict)


def generate_a059046(limit: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE, jobs: int = 1) -> Iterator[ScanHit]:
    """Every ``n`` in ``[2, limit]`` with ``(sigma(n) - n) | (n - 1)``, ascending."""
    if limit < 2:
        raise ValueError("limit must be >= 2")
    yield from _numbered(iter_unit_results(TASK_A059046, 2, limit, segment_size=segment_size, jobs=jobs))


def a059046_terms(limit: int) -> list[int]:
    return [h.n for h in generate_a059046(limit)]


def scan_odd_squares(
    u_lo: int,
    u_hi: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    jobs: int = 1,
    diagnostic: bool = False,
) -> Iterator[ScanHit]:
    """Near misses and candidates among wheel values ``u`` in ``[u_lo, u_hi]``.

    The wheel keeps odd ``u`` coprime to 3 with at least two distinct prime
    factors; ``diagnostic=True`` also admits prime powers, whose divisibility
    leg always passes.
    """
    lo = normalize_scan_start(u_lo)
    yield from _numbered(
        iter_unit_results(TASK_SCAN, lo, u_hi, segment_size=segment_size, jobs=jobs, diagnostic=diagnostic)
    )


# -- resumable runs ---------------------------------------------------------


@dataclass
class RunSummary:
    task: str
    range_lo: int
    range_hi: int
    evaluated: int = 0
    hits: int = 0
    candidates: int = 0
    best_near_miss: int | None = None
    completed: bool = False
    resumed_from: int | None = None
    requested_lo: int | None = None
    _best_key: tuple[int, int] | None = field(default=None, repr=False)

    @property
    def normalized(self) -> bool:
        return self.requested_lo is not None and self.requested_lo != self.range_lo


def _truncate_lines(path: Path, keep: int) -> None:
    """Drop everything after the first ``keep`` lines (records past the checkpoint)."""
    if not path.exists():
        if keep:
            raise ValueError(f"checkpoint expects {keep} records but {path} is missing")
        path.touch()
        return
    with open(path, "rb+") as fh:
        offset = 0
        for _ in range(keep):
            line = fh.readline()
            if not line.endswith(b"\n"):
                raise ValueError(f"{path} has fewer than {keep} complete records")
            offset += len(line)
        fh.truncate(offset)


@contextmanager
def _open_output(output, append: bool):
    if output is None:
        yield sys.stdout
    elif isinstance(output, io.TextIOBase) or hasattr(output, "write"):
        yield output
    else:
        with open(output, "a" if append else "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def format_hit(hit: ScanHit, fmt: str) -> str:
    if fmt == "plain":
        return str(hit.n)
    if fmt == "bfile":
        return f"{hit.emitted_at} {hit.n}"
    if fmt == "hits":
        return hit.record()
    raise ValueError(f"unknown output format {fmt!r}")


def run_task(
    task: str,
    lo: int,
    hi: int,
    output: str | os.PathLike | TextIO | None = None,
    *,
    fmt: str = "hits",
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    jobs: int = 1,
    checkpoint_path: str | os.PathLike | None = None,
    resume: bool = False,
    diagnostic: bool = False,
    max_units: int | None = None,
    on_hit: Callable[[ScanHit], None] | None = None,
) -> RunSummary:
    """Run a scan to completion (or for ``max_units`` units), writing records and checkpoints.

    On ``resume`` the checkpoint decides where to continue; if ``output`` is
    a path it is first cut back to the checkpointed record count, so the
    final file is byte-identical to an uninterrupted run.
    """
    requested_lo = lo
    if task == TASK_SCAN:
        lo = normalize_scan_start(lo)
    elif task == TASK_A059046:
        lo = max(lo, 2)
    else:
        raise ValueError(f"unknown task {task!r}")

    summary = RunSummary(task, lo, hi, requested_lo=requested_lo)
    start = lo
    if resume:
        if checkpoint_path is None or not Path(checkpoint_path).exists():
            raise FileNotFoundError("resume requested but no checkpoint file exists")
        ck = Checkpoint.load(checkpoint_path)
        if (ck.task, ck.range_lo, ck.range_hi) != (task, lo, hi):
            raise ValueError(
                f"checkpoint is for {ck.task} [{ck.range_lo}, {ck.range_hi}], not {task} [{lo}, {hi}]"
            )
        start = ck.next_unprocessed
        summary.hits = ck.hits_count
        summary.evaluated = ck.evaluated
        summary.candidates = ck.candidates
        summary.best_near_miss = ck.best_near_miss
        if ck.best_near_miss is not None:
            failed = evaluate_candidate(ck.best_near_miss).failed_checks()
            summary._best_key = (len(failed), ck.best_near_miss)
        summary.resumed_from = start
        if isinstance(output, (str, os.PathLike)):
            _truncate_lines(Path(output), ck.hits_count)
        log.info("resuming %s at %d with %d records", task, start, ck.hits_count)

    def checkpoint(next_pos: int) -> None:
        if checkpoint_path is None:
            return
        Checkpoint(
            task, lo, hi, next_pos, summary.hits, summary.best_near_miss,
            summary.evaluated, summary.candidates,
        ).save(checkpoint_path)

    results = iter_unit_results(task, start, hi, segment_size=segment_size, jobs=jobs, diagnostic=diagnostic)
    merged = 0
    with _open_output(output, append=resume) as out:
        try:
            for res in results:
                for hit in res.hits:
                    summary.hits += 1
                    hit = _with_position(hit, summary.hits)
                    out.write(format_hit(hit, fmt) + "\n")
                    if on_hit is not None:
                        on_hit(hit)
                    if hit.kind == KIND_CANDIDATE:
                        summary.candidates += 1
                    if hit.kind in (KIND_NEARMISS, KIND_CANDIDATE):
                        key = (len(hit.flags), hit.n)
                        if summary._best_key is None or key < summary._best_key:
                            summary._best_key = key
                            summary.best_near_miss = hit.n
                summary.evaluated += res.evaluated
                out.flush()
                checkpoint(res.hi + 1)
                merged += 1
                if max_units is not None and merged >= max_units and res.hi < hi:
                    return summary
        finally:
            close = getattr(results, "close", None)
            if close is not None:
                close()
    if start > hi and lo <= hi + 1:
        checkpoint(hi + 1)
    summary.completed = True
    return summary
