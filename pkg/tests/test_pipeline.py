from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from almostperfect.arith import is_composite, is_prime, sigma, sigma_of_square
from almostperfect.criteria import is_almost_perfect_direct
from almostperfect.pipeline import (
    ABUNDANCY_BELOW_4_3,
    LEMMA3_SOLITARY,
    R_CHECKS,
    R_FREE_CHECKS,
    THM5_R_BOUND,
    THM6_CHAIN,
    THM8_BAND,
    admissible,
    check_bounds,
    check_solitary_gcd,
    determine_r,
    evaluate_candidate,
)
from conftest import brute_sigma


@pytest.mark.parametrize(
    "b, expected",
    [(35, True), (25, False), (45, False), (55, True), (49, False), (37, False), (36, False), (1, False), (175, True)],
)
def test_admissible(b, expected):
    assert admissible(b) is expected


def test_determine_r_35_and_55():
    s35 = brute_sigma(1225)
    assert s35 - 1225 == 542 and 1224 % 542 != 0
    assert determine_r(35) is None
    s55 = brute_sigma(3025)
    assert s55 == 4123 and (3024 % (s55 - 3025)) != 0
    assert determine_r(55) is None


@pytest.mark.parametrize("p", [5, 7, 31, 127, 8191, 65537, 1_000_003])
def test_primes_pass_divisibility_but_not_power_of_two(p):
    v = evaluate_candidate(p)
    assert v.divisibility_holds
    assert v.quotient == p - 1
    # quotient + 1 = p is odd, never a power of two
    assert v.determined_r is None
    assert not v.admissible
    assert determine_r(p) is None


@pytest.mark.parametrize("p, k", [(5, 2), (7, 3), (11, 2), (13, 5)])
def test_prime_powers_pass_divisibility(p, k):
    v = evaluate_candidate(p**k)
    assert v.divisibility_holds and v.quotient == p - 1


@pytest.mark.parametrize("b", [0, 1, 2, 36])
def test_determine_r_rejects(b):
    with pytest.raises(ValueError):
        determine_r(b)


def test_forced_r_from_injected_sigma():
    # A fake sigma(b^2) that makes the quotient 2^(r+1) - 1 must yield that r.
    b = 35
    for r in (1, 2, 3):
        m = 2 ** (r + 1) - 1
        if (b * b - 1) % m == 0:
            assert determine_r(b, b * b + (b * b - 1) // m) == r


def test_check_bounds_examples():
    checks = dict(check_bounds(35, 1))
    assert checks[THM5_R_BOUND]
    assert not dict(check_bounds(35, 10))[THM5_R_BOUND]
    i = Fraction(1767, 1225)
    assert 1767 * 7 == 12369 and 8 * 1225 == 9800 and i > Fraction(8, 7)
    assert not dict(check_bounds(35, 2))[THM8_BAND]


def test_check_bounds_shape():
    names = [n for n, _ in check_bounds(35, 3)]
    assert names == list(R_FREE_CHECKS + R_CHECKS)
    assert [n for n, _ in check_bounds(35, None)] == list(R_FREE_CHECKS)
    with pytest.raises(ValueError):
        check_bounds(35, 0)


def test_check_bounds_does_not_short_circuit():
    # 35 fails the r bound at r = 10 and the 4/3 bound, yet later checks still run
    res = check_bounds(35, 10)
    assert len(res) == len(R_FREE_CHECKS) + len(R_CHECKS)
    assert not dict(res)[ABUNDANCY_BELOW_4_3]
    assert not dict(res)[THM6_CHAIN]


@pytest.mark.parametrize("b, s2, expected", [(35, 1767, True), (15, 403, True), (21, 741, False)])
def test_solitary_gcd(b, s2, expected):
    assert brute_sigma(b * b) == s2
    assert check_solitary_gcd(b) is expected
    assert dict(check_bounds(b, None))[LEMMA3_SOLITARY] is expected


def test_evaluate_candidate_examples():
    v = evaluate_candidate(35)
    assert v.admissible and not v.divisibility_holds and not v.is_full_candidate
    assert v.sigma_b2 == 1767 and v.quotient is None and v.determined_r is None
    assert "divisibility" in v.failed_checks()

    v9 = evaluate_candidate(9)
    assert not v9.admissible
    v1 = evaluate_candidate(1)
    assert not v1.admissible and not v1.is_full_candidate and v1.bound_checks == ()


def test_injected_sigma_still_needs_direct_confirmation():
    b = 35
    fake = b * b + (b * b - 1) // 3
    v = evaluate_candidate(b, fake)
    assert v.determined_r == 1
    assert v.direct_confirmed is False
    assert not v.is_full_candidate
    assert "direct" in v.failed_checks()


def test_verdict_invariants_and_soundness_up_to_1e5():
    for b in range(3, 10**5 + 1, 2):
        v = evaluate_candidate(b)
        if v.determined_r is not None:
            assert v.divisibility_holds
            q1 = v.quotient + 1
            assert q1 & (q1 - 1) == 0 and q1 >= 4
            # the direct test is the arbiter
            if v.is_full_candidate:
                m = 2**v.determined_r * b * b
                assert sigma(m) == 2 * m - 1
        if v.is_full_candidate:
            assert v.admissible and v.divisibility_holds
            assert all(ok for _, ok in v.bound_checks)
        # every odd b <= 1e5 fails; 2^r b^2 with such b is not almost perfect
        assert not v.is_full_candidate


@given(st.integers(1, 5 * 10**5).map(lambda k: 2 * k + 1))
def test_r_is_a_function_of_b(b):
    assert determine_r(b) == determine_r(b)
    assert evaluate_candidate(b).determined_r == determine_r(b)


def test_powers_of_two_family():
    for k in range(1, 31):
        assert is_almost_perfect_direct(2**k)
    assert not evaluate_candidate(1).admissible


def test_theorem7_chain_is_algebra():
    for b in range(2, 10**4 + 1):
        left = Fraction(2 * b * b, 2 * b * b - b - 1)
        middle = 1 + Fraction(b + 1, (2 * b + 1) * (b - 1))
        assert left == middle
        assert middle > Fraction(2 * b - 1, 2 * b - 2)


def test_composite_square_sigma_bound():
    for b in range(9, 10**4 + 1, 2):
        if is_composite(b):
            assert sigma_of_square(b) > b * b + b + 1


def test_prime_square_sigma_is_the_bound():
    for p in (3, 5, 7, 101):
        assert is_prime(p) and sigma_of_square(p) == p * p + p + 1


def test_multiples_of_three_exceed_four_thirds():
    for b in range(9, 10**4 + 1, 6):
        i = Fraction(sigma_of_square(b), b * b)
        assert i >= Fraction(13, 9) > Fraction(4, 3)
        assert not dict(check_bounds(b, None))[ABUNDANCY_BELOW_4_3]
