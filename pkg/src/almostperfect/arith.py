"""Exact integer arithmetic: factorization, divisor sums, omega, abundancy.

Every quantity here is a Python ``int`` (unbounded) or a ``Fraction``
(always reduced, compared by cross-multiplication), so nothing can wrap
or round.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache

Factorization = list[tuple[int, int]]
ExactRatio = Fraction

TRIAL_DIVISION_BOUND = 10_000

# First 13 primes as Miller-Rabin bases: deterministic for n < 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
# Beyond the deterministic limit we add fixed bases; still reproducible.
_MR_EXTRA_BASES = (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


@lru_cache(maxsize=8)
def small_primes(bound: int) -> tuple[int, ...]:
    """Primes ``p <= bound`` by a plain Eratosthenes sieve."""
    if bound < 2:
        return ()
    flags = bytearray([1]) * (bound + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, bound + 1, p)))
    return tuple(i for i, f in enumerate(flags) if f)


def _check_positive(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"expected int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with a fixed witness set.

    Deterministic for every ``n`` below 3.3e24, which covers anything the
    search can reach.  Larger inputs get 25 fixed bases.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < _MR_DETERMINISTIC_LIMIT else _MR_BASES + _MR_EXTRA_BASES
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def pollard_brent(n: int, seed: int = 1) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    rng = random.Random(seed)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: dict[int, int]) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack.extend((root, root))
            continue
        f = pollard_brent(m)
        stack.extend((f, m // f))


def factorize(n: int, trial_bound: int = TRIAL_DIVISION_BOUND) -> Factorization:
    """Prime-power decomposition of ``n`` as ``[(p, e), ...]``, primes ascending.

    Trial division by primes up to ``trial_bound``, then Pollard-Brent on
    whatever cofactor remains.

    >>> factorize(1225)
    [(5, 2), (7, 2)]
    """
    _check_positive(n)
    found: dict[int, int] = {}
    for p in small_primes(trial_bound):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if n > 1:
        if n <= trial_bound * trial_bound or is_probable_prime(n):
            found[n] = found.get(n, 0) + 1
        else:
            _split_large(n, found)
    return sorted(found.items())


def sigma_prime_power(p: int, e: int) -> int:
    """``1 + p + ... + p**e``."""
    return (p ** (e + 1) - 1) // (p - 1)


def sigma_from_factorization(factors: Factorization) -> int:
    total = 1
    for p, e in factors:
        total *= sigma_prime_power(p, e)
    return total


def sigma(n: int) -> int:
    """Sum of the positive divisors of ``n``."""
    return sigma_from_factorization(factorize(n))


def sigma_of_square(b: int) -> int:
    """``sigma(b*b)`` from the factorization of ``b`` (cheaper than factoring b^2)."""
    return sigma_from_factorization([(p, 2 * e) for p, e in factorize(b)])


def omega(n: int) -> int:
    """Number of distinct prime factors of ``n``."""
    return len(factorize(n))


def gcd(a: int, b: int) -> int:
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    if a < 0 or b < 0:
        raise ValueError("gcd expects nonnegative arguments")
    return math.gcd(a, b)


def as_power_of_two(n: int) -> int | None:
    """Return ``k`` when ``n == 2**k``, else ``None``."""
    _check_positive(n)
    if n & (n - 1):
        return None
    return n.bit_length() - 1


def is_prime(n: int) -> bool:
    return is_probable_prime(n)


def is_composite(n: int) -> bool:
    return n > 1 and not is_prime(n)


def abundancy(n: int, sigma_n: int | None = None) -> ExactRatio:
    """The abundancy index ``sigma(n)/n`` as a reduced fraction."""
    _check_positive(n)
    return Fraction(sigma(n) if sigma_n is None else sigma_n, n)


def deficiency(n: int, sigma_n: int | None = None) -> int:
    """``2n - sigma(n)``; negative for abundant ``n``."""
    _check_positive(n)
    return 2 * n - (sigma(n) if sigma_n is None else sigma_n)


def format_factorization(factors: Factorization) -> str:
    if not factors:
        return "1"
    return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factors)


def format_ratio(x: Fraction) -> str:
    """Always ``p/q``, even when q is 1, so machine output has one shape."""
    return f"{x.numerator}/{x.denominator}"
