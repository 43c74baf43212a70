from __future__ import annotations

from functools import lru_cache

import pytest

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=4)
def divisor_sum_table(limit: int) -> tuple[int, ...]:
    """sigma(n) for n <= limit by adding every d to all its multiples.

    Shares nothing with the multiplicative code paths under test.
    """
    s = [0] * (limit + 1)
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            s[m] += d
    return tuple(s)


def brute_sigma(n: int) -> int:
    """Sum of divisors by testing every d <= sqrt(n)."""
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d
            if d * d != n:
                total += n // d
        d += 1
    return total


def brute_factor(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


@pytest.fixture
def sigma_table():
    return divisor_sum_table


@pytest.fixture
def acceptance():
    def record(number: int, title: str, passed: bool, detail: str = "") -> None:
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
