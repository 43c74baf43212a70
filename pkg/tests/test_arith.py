import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from almostperfect.arith import (
    abundancy,
    as_power_of_two,
    deficiency,
    factorize,
    format_ratio,
    gcd,
    is_probable_prime,
    omega,
    sigma,
    sigma_of_square,
    small_primes,
)
from conftest import brute_factor, brute_sigma, divisor_sum_table


@pytest.mark.parametrize(
    "n, expected",
    [(1, []), (35, [(5, 1), (7, 1)]), (1225, [(5, 2), (7, 2)]), (2**10, [(2, 10)])],
)
def test_factorize_examples(n, expected):
    assert factorize(n) == expected


def test_factorize_1225_matches_trial_division():
    assert factorize(1225) == brute_factor(1225)


@pytest.mark.parametrize("bad", [0, -5])
def test_factorize_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        factorize(bad)


def test_factorize_rejects_non_int():
    with pytest.raises(TypeError):
        factorize(12.0)


def test_reconstruction_up_to_a_million():
    for n in range(1, 10**6 + 1):
        prod = 1
        for p, e in factorize(n):
            prod *= p**e
        assert prod == n


@pytest.mark.parametrize(
    "n",
    [
        (10**12 + 39) * (10**12 + 61),
        (2**31 - 1) ** 3 * 35,
        2**61 - 1,
        1_000_003**2,
        600851475143,
    ],
)
def test_factorize_large_cofactors(n):
    fac = factorize(n)
    assert math.prod(p**e for p, e in fac) == n
    assert all(is_probable_prime(p) for p, _ in fac)
    assert [p for p, _ in fac] == sorted({p for p, _ in fac})


@given(st.integers(min_value=1, max_value=10**15))
@settings(max_examples=200, deadline=None)
def test_factorization_invariants(n):
    fac = factorize(n)
    primes = [p for p, _ in fac]
    assert primes == sorted(set(primes))
    assert all(e >= 1 for _, e in fac)
    assert all(is_probable_prime(p) for p in primes)
    assert math.prod(p**e for p, e in fac) == n
    assert factorize(n) == fac


def test_miller_rabin_matches_sieve():
    primes = set(small_primes(200_000))
    assert [n for n in range(200_001) if is_probable_prime(n)] == sorted(primes)


@pytest.mark.parametrize(
    "n",
    # strong pseudoprimes to several small bases
    [2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383, 341550071728321,
     3825123056546413051, 318665857834031151167461],
)
def test_miller_rabin_rejects_strong_pseudoprimes(n):
    assert not is_probable_prime(n)


def test_sigma_examples():
    assert sigma(1) == 1
    assert sigma(1225) == 1767 == 31 * 57
    for r in range(1, 11):
        assert sigma(2**r) == 2 ** (r + 1) - 1


def test_sigma_matches_oracle_up_to_1e5():
    table = divisor_sum_table(10**5)
    for n in range(1, 10**5 + 1):
        assert sigma(n) == table[n], n


def test_sigma_1225_brute_force():
    assert brute_sigma(1225) == 1767


def test_sigma_rejects_zero():
    with pytest.raises(ValueError):
        sigma(0)


def test_multiplicativity_exhaustive_small():
    for a in range(1, 201):
        for b in range(1, 201):
            if math.gcd(a, b) == 1:
                assert sigma(a * b) == sigma(a) * sigma(b)


@given(st.integers(1, 10**4), st.integers(1, 10**4))
@settings(max_examples=2000, deadline=None)
def test_multiplicativity_sampled(a, b):
    if math.gcd(a, b) == 1:
        assert sigma(a * b) == sigma(a) * sigma(b)


@given(st.integers(1, 10**6))
@settings(max_examples=300, deadline=None)
def test_sigma_of_square(b):
    assert sigma_of_square(b) == sigma(b * b)


@pytest.mark.parametrize("n, k", [(1, 0), (35, 2), (125, 1), (2 * 3 * 5 * 7 * 11, 5)])
def test_omega(n, k):
    assert omega(n) == k


def test_omega_rejects_zero():
    with pytest.raises(ValueError):
        omega(0)


def test_gcd():
    assert gcd(12, 18) == 6
    assert gcd(1225, 1767) == 1
    assert gcd(0, 7) == 7
    for n in (1, 2, 99, 10**20):
        assert gcd(n, 1) == 1
    with pytest.raises(ValueError):
        gcd(0, 0)


@pytest.mark.parametrize("n, k", [(8, 3), (1, 0), (12, None), (2**100, 100), (2**100 + 1, None), (3, None)])
def test_as_power_of_two(n, k):
    assert as_power_of_two(n) == k


def test_as_power_of_two_rejects_zero():
    with pytest.raises(ValueError):
        as_power_of_two(0)


def test_abundancy_is_reduced():
    x = abundancy(1225)
    assert (x.numerator, x.denominator) == (1767, 1225)
    assert abundancy(6) == 2 and abundancy(6).denominator == 1
    assert abundancy(9) == Fraction(13, 9)
    assert format_ratio(abundancy(6)) == "2/1"


def test_deficiency_sign():
    assert deficiency(8) == 1
    assert deficiency(6) == 0
    assert deficiency(12) == -4


@given(
    st.integers(0, 10**30), st.integers(1, 10**30),
    st.integers(0, 10**30), st.integers(1, 10**30),
)
def test_exact_ratio_order_is_cross_multiplication(a, b, c, d):
    x, y = Fraction(a, b), Fraction(c, d)
    assert (x < y) == (a * d < c * b)
    assert (x == y) == (a * d == c * b)
    assert math.gcd(x.numerator, x.denominator) == 1
