"""Almost-perfect and deficiency characterizations, deficiency of b^2 and its bound.

The ``*_criterion`` predicates evaluate abundancy sandwiches with exact
fractions; the ``*_direct`` predicates compare divisor sums outright.  The
two routes must agree for every input, and ``verify_criteria`` checks that
over a range using bulk divisor sums from the sieve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import ExactRatio, abundancy, sigma


@dataclass(frozen=True)
class DeficiencyReport:
    n: int
    sigma_n: int
    deficiency: int
    abundancy: ExactRatio

    @property
    def is_deficient(self) -> bool:
        return self.deficiency > 0


def deficiency_report(n: int, sigma_n: int | None = None) -> DeficiencyReport:
    s = sigma(n) if sigma_n is None else sigma_n
    return DeficiencyReport(n, s, 2 * n - s, abundancy(n, s))


def is_almost_perfect_direct(n: int, sigma_n: int | None = None) -> bool:
    """True iff ``sigma(n) == 2n - 1``."""
    s = sigma(n) if sigma_n is None else sigma_n
    return s == 2 * n - 1


def is_almost_perfect_criterion(n: int, sigma_n: int | None = None) -> bool:
    """Abundancy sandwich ``2n/(n+1) <= I(n) < (2n+1)/(n+1)``."""
    index = abundancy(n, sigma_n)
    return Fraction(2 * n, n + 1) <= index < Fraction(2 * n + 1, n + 1)


def is_deficient_criterion(n: int, sigma_n: int | None = None) -> bool:
    """Deficiency via ``2n/(n+D) <= I(n) < (2n+D)/(n+D)`` with ``D = 2n - sigma(n)``.

    The sandwich is only meaningful for ``D >= 1``; perfect and abundant
    ``n`` return False without evaluating it.
    """
    report = deficiency_report(n, sigma_n)
    d = report.deficiency
    if d <= 0:
        return False
    return Fraction(2 * n, n + d) <= report.abundancy < Fraction(2 * n + d, n + d)


def deficiency_c(r: int, b: int) -> ExactRatio:
    """``b^2 - (b^2 - 1)/(2^(r+1) - 1)`` as an exact fraction.

    This is what the deficiency of ``b^2`` would have to be if ``2^r b^2``
    were almost perfect.  It is an integer only in that hypothetical case,
    so no integrality is assumed.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if b < 1 or b % 2 == 0:
        raise ValueError("b must be a positive odd integer")
    b2 = b * b
    return b2 - Fraction(b2 - 1, 2 ** (r + 1) - 1)


def c_lower_bound(b: int) -> ExactRatio:
    """``(2b^2 + 1)/3``."""
    if b < 1:
        raise ValueError("b must be >= 1")
    return Fraction(2 * b * b + 1, 3)


def odd_ceiling(x: Fraction) -> int:
    """Smallest odd integer ``>= x``."""
    k = math.ceil(x)
    return k if k % 2 else k + 1


@dataclass
class CriteriaSummary:
    limit: int
    almost_perfect: list[int]
    deficient_count: int
    discrepancies: list[tuple[str, int]]

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def verify_criteria(limit: int, segment_size: int | None = None) -> CriteriaSummary:
    """Compare both criteria against their direct tests for every ``n <= limit``."""
    from .sieve import DEFAULT_SEGMENT_SIZE, iter_segments, sieve_sigma_segment

    if limit < 1:
        raise ValueError("limit must be >= 1")
    almost: list[int] = []
    deficient = 0
    bad: list[tuple[str, int]] = []
    for lo, hi in iter_segments(1, limit, segment_size or DEFAULT_SEGMENT_SIZE):
        seg = sieve_sigma_segment(lo, hi)
        for n, s in zip(range(lo, hi + 1), seg.sigma_values.tolist()):
            direct = s == 2 * n - 1
            if is_almost_perfect_criterion(n, s) != direct:
                bad.append(("almost-perfect", n))
            if direct:
                almost.append(n)
            direct_def = s < 2 * n
            if is_deficient_criterion(n, s) != direct_def:
                bad.append(("deficient", n))
            deficient += direct_def
    return CriteriaSummary(limit, almost, deficient, bad)
