"""Segmented multiplicative sieves over contiguous integer ranges.

A segment ``[lo, hi]`` is factored by dividing out every prime up to
``isqrt(hi)``; whatever remains above 1 is a single large prime.  The same
pass accumulates ``sigma(n)`` (or ``sigma(n^2)``) and ``omega(n)``.

Arrays are ``int64`` while the values provably fit, and fall back to
Python-int object arrays beyond that, so results never wrap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DEFAULT_SEGMENT_SIZE = 2**20
MIN_SEGMENT_SIZE = 2**10

# Below these bounds sigma(n) < 7n and sigma(n^2) < 6n^2, which fit int64.
_INT64_SIGMA_LIMIT = 10**17
_INT64_SQUARE_SIGMA_LIMIT = 10**9


@lru_cache(maxsize=4)
def primes_upto(bound: int) -> np.ndarray:
    if bound < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(bound + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


@dataclass(frozen=True)
class SieveSegment:
    lo: int
    hi: int
    sigma_values: np.ndarray

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def __getitem__(self, n: int) -> int:
        if not self.lo <= n <= self.hi:
            raise IndexError(f"{n} outside [{self.lo}, {self.hi}]")
        return int(self.sigma_values[n - self.lo])


def _check_range(lo: int, hi: int, max_size: int | None) -> None:
    if lo < 1:
        raise ValueError("segments start at 1 or above")
    if hi < lo:
        raise ValueError(f"inverted range [{lo}, {hi}]")
    if max_size is not None and hi - lo + 1 > max_size:
        raise ValueError(f"segment of {hi - lo + 1} exceeds size {max_size}")


def _factor_sums(lo: int, hi: int, power: int) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(sigma(n**power), omega(n))`` for ``n`` in ``[lo, hi]``."""
    limit = _INT64_SIGMA_LIMIT if power == 1 else _INT64_SQUARE_SIGMA_LIMIT
    dtype = np.int64 if hi <= limit else object
    if dtype is object:
        rem = np.array(list(range(lo, hi + 1)), dtype=object)
    else:
        rem = np.arange(lo, hi + 1, dtype=np.int64)
    sig = np.ones(len(rem), dtype=dtype)
    omega = np.zeros(len(rem), dtype=np.int8)
    size = len(rem)

    for p in primes_upto(math.isqrt(hi)).tolist():
        start = -lo % p
        if start >= size:
            continue
        sub = rem[start::p]
        exps = np.zeros(len(sub), dtype=np.intp)
        idx = np.arange(len(sub))
        while idx.size:
            sub[idx] //= p
            exps[idx] += 1
            idx = idx[sub[idx] % p == 0]
        top = int(exps.max())
        table = np.array(
            [(p ** (power * j + 1) - 1) // (p - 1) for j in range(top + 1)], dtype=dtype
        )
        sig[start::p] *= table[exps]
        omega[start::p] += 1

    big = rem > 1
    q = rem[big]
    if power == 1:
        sig[big] *= q + 1
    else:
        sig[big] *= q * q + q + 1
    omega[big] += 1
    return sig, omega


def sieve_sigma_segment(lo: int, hi: int, max_size: int | None = DEFAULT_SEGMENT_SIZE) -> SieveSegment:
    """Exact ``sigma(n)`` for every ``n`` in ``[lo, hi]``."""
    _check_range(lo, hi, max_size)
    sig, _ = _factor_sums(lo, hi, 1)
    return SieveSegment(lo, hi, sig)


def sieve_square_segment(lo: int, hi: int, max_size: int | None = DEFAULT_SEGMENT_SIZE) -> tuple[np.ndarray, np.ndarray]:
    """``(sigma(u^2), omega(u))`` arrays for ``u`` in ``[lo, hi]``."""
    _check_range(lo, hi, max_size)
    return _factor_sums(lo, hi, 2)


def partition_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split ``[lo, hi]`` into at most ``parts`` contiguous nonempty pieces.

    Sizes differ by at most one, larger pieces first.  Asking for more parts
    than there are integers gives one piece per integer.

    >>> partition_range(1, 100, 4)
    [(1, 25), (26, 50), (51, 75), (76, 100)]
    """
    if parts < 1:
        raise ValueError("parts must be >= 1")
    if hi < lo:
        raise ValueError(f"inverted range [{lo}, {hi}]")
    total = hi - lo + 1
    parts = min(parts, total)
    base, extra = divmod(total, parts)
    out = []
    start = lo
    for i in range(parts):
        end = start + base + (i < extra) - 1
        out.append((start, end))
        start = end + 1
    return out


def iter_segments(lo: int, hi: int, size: int):
    """Consecutive ``(a, b)`` windows of at most ``size`` integers covering ``[lo, hi]``."""
    if size < 1:
        raise ValueError("segment size must be >= 1")
    start = lo
    while start <= hi:
        end = min(hi, start + size - 1)
        yield start, end
        start = end + 1
