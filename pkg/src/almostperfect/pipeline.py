"""Candidate gauntlet for the odd part ``b^2`` of a hypothetical almost perfect ``2^r b^2``.

Given ``b`` the exponent ``r`` is forced: ``2^(r+1) = 1 + (b^2-1)/(sigma(b^2)-b^2)``.
So each ``b`` yields at most one ``r``, and every other necessary
condition is then a finite exact check.  All checks are evaluated even
after one fails, so near misses carry full diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import as_power_of_two, omega, sigma, sigma_of_square
from .criteria import c_lower_bound, is_almost_perfect_direct

MIN_ODD_PART_ROOT = 35  # 5 * 7: smallest odd composite coprime to 3 with two primes

# Check names, in evaluation order.
LEMMA2_C_BOUND = "c_lower_bound"
LEMMA3_SOLITARY = "solitary_gcd"
COMPOSITE_SIGMA = "composite_sigma"
ABUNDANCY_BELOW_4_3 = "abundancy_below_4_3"
THM7_LOWER = "abundancy_lower_bound"
THM5_R_BOUND = "r_bound"
THM6_CHAIN = "inequality_chain"
THM8_BAND = "r_abundancy_band"

R_FREE_CHECKS = (LEMMA2_C_BOUND, LEMMA3_SOLITARY, COMPOSITE_SIGMA, ABUNDANCY_BELOW_4_3, THM7_LOWER)
R_CHECKS = (THM5_R_BOUND, THM6_CHAIN, THM8_BAND)


@dataclass(frozen=True)
class CandidateVerdict:
    b: int
    admissible: bool
    sigma_b2: int
    divisibility_holds: bool
    quotient: int | None
    determined_r: int | None
    bound_checks: tuple[tuple[str, bool], ...]
    direct_confirmed: bool | None
    is_full_candidate: bool

    def failed_checks(self) -> list[str]:
        """Names of everything that failed, including the structural legs."""
        failed = []
        if not self.admissible:
            failed.append("admissible")
        if not self.divisibility_holds:
            failed.append("divisibility")
        elif self.determined_r is None:
            failed.append("power_of_two")
        failed.extend(name for name, ok in self.bound_checks if not ok)
        if self.direct_confirmed is False:
            failed.append("direct")
        return failed

    def check(self, name: str) -> bool | None:
        return dict(self.bound_checks).get(name)


def admissible(b: int) -> bool:
    """Odd, coprime to 3, at least 35, with two or more distinct prime factors.

    Prime powers ``p^k`` are excluded: for them the quotient is always
    ``p - 1``, so ``quotient + 1`` is odd and no ``r`` exists.
    """
    return b >= MIN_ODD_PART_ROOT and b % 2 == 1 and b % 3 != 0 and omega(b) >= 2


def _quotient(b: int, sigma_b2: int) -> int | None:
    excess = sigma_b2 - b * b
    if excess <= 0 or (b * b - 1) % excess:
        return None
    return (b * b - 1) // excess


def _r_from_quotient(q: int | None) -> int | None:
    if q is None:
        return None
    k = as_power_of_two(q + 1)
    if k is None or k < 2:
        return None
    return k - 1


def determine_r(b: int, sigma_b2: int | None = None) -> int | None:
    """The only ``r >= 1`` for which ``2^r b^2`` could be almost perfect, or None.

    Primes and prime powers are accepted here even though ``admissible``
    rejects them: their divisibility leg always passes, which makes them
    useful regression inputs.
    """
    if b <= 1 or b % 2 == 0:
        raise ValueError("b must be odd and > 1")
    s = sigma_of_square(b) if sigma_b2 is None else sigma_b2
    return _r_from_quotient(_quotient(b, s))


def check_solitary_gcd(b: int, sigma_b2: int | None = None) -> bool:
    s = sigma_of_square(b) if sigma_b2 is None else sigma_b2
    return gcd(b * b, s) == 1


def check_bounds(
    b: int,
    r: int | None,
    sigma_b2: int | None = None,
    sigma_b: int | None = None,
) -> list[tuple[str, bool]]:
    """Evaluate every necessary inequality for ``(b, r)`` exactly.

    With ``r=None`` only the checks that depend on ``b`` alone are returned.
    The bound ``r < log2(b) - 1`` is compared as ``2^(r+1) < b``.
    """
    b2 = b * b
    s2 = sigma_of_square(b) if sigma_b2 is None else sigma_b2
    s1 = sigma(b) if sigma_b is None else sigma_b
    i_b2 = Fraction(s2, b2)
    i_b = Fraction(s1, b)
    c = 2 * b2 - s2

    results = [
        (LEMMA2_C_BOUND, c >= c_lower_bound(b)),
        (LEMMA3_SOLITARY, check_solitary_gcd(b, s2)),
        (COMPOSITE_SIGMA, s2 > b2 + b + 1),
        (ABUNDANCY_BELOW_4_3, 1 < i_b < i_b2 < Fraction(4, 3)),
    ]
    lower = Fraction(2 * b - 1, 2 * b - 2)
    results.append((THM7_LOWER, lower < i_b2 and lower < i_b * i_b))
    if r is None:
        return results

    if r < 1:
        raise ValueError("r must be >= 1")
    two_r = 2**r
    sigma_two_r = 2 * two_r - 1
    results.append((THM5_R_BOUND, 2 * two_r < b))
    chain = (
        Fraction(sigma_two_r, b) < 1 < i_b < Fraction(4, 3) < Fraction(3, 2)
        <= Fraction(sigma_two_r, two_r) < 2 < Fraction(s1, two_r)
    )
    results.append((THM6_CHAIN, chain))
    if r == 1:
        band = Fraction(8, 7) < i_b2 < Fraction(4, 3) and b % 3 != 0
    else:
        band = i_b2 < Fraction(8, 7) and b % 7 != 0
    results.append((THM8_BAND, band))
    return results


def evaluate_candidate(b: int, sigma_b2: int | None = None) -> CandidateVerdict:
    """Run the whole gauntlet on ``b`` and return a verdict.

    ``is_full_candidate`` additionally needs ``sigma(2^r b^2) == 2^(r+1) b^2 - 1``
    to hold exactly; the lemma checks are filters, the direct test decides.
    """
    if b < 1:
        raise ValueError("b must be >= 1")
    s2 = sigma_of_square(b) if sigma_b2 is None else sigma_b2
    ok_adm = admissible(b)
    if b == 1 or b % 2 == 0:
        # b = 1 is the powers-of-two family; even b is outside the form.
        return CandidateVerdict(b, ok_adm, s2, False, None, None, (), None, False)

    q = _quotient(b, s2)
    r = _r_from_quotient(q)
    checks = tuple(check_bounds(b, r, s2))
    direct = None
    if r is not None:
        # Full refactorization of 2^r b^2, independent of s2.
        direct = is_almost_perfect_direct(2**r * b * b)
    full = (
        ok_adm
        and q is not None
        and r is not None
        and all(ok for _, ok in checks)
        and bool(direct)
    )
    return CandidateVerdict(b, ok_adm, s2, q is not None, q, r, checks, direct, full)
