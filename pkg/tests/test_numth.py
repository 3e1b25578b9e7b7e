import math

import pytest
from hypothesis import given, strategies as st

from partaug.numth import (
    cor1_prime_bound,
    divisor_pairs,
    divisors,
    is_prime,
    moebius,
    p_part_split,
    prime_in_progression,
    thm1_prime_bound,
)


def eratosthenes(n):
    flags = bytearray([1]) * (n + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return flags


def brute_least_above(n_sq):
    b = 0
    while b * b <= n_sq:
        b += 1
    return b


@pytest.mark.parametrize("n,mu", [(1, 1), (12, 0), (30, -1), (2, -1), (6, 1), (49, 0)])
def test_moebius_values(n, mu):
    assert moebius(n) == mu


def test_moebius_rejects_zero():
    with pytest.raises(ValueError):
        moebius(0)


@given(st.integers(1, 5000))
def test_moebius_divisor_sum(n):
    assert sum(moebius(d) for d in divisors(n)) == (1 if n == 1 else 0)


def test_divisor_pairs():
    assert divisor_pairs(1) == ((1, 1),)
    assert divisor_pairs(4) == ((1, 1), (1, 2), (2, 2), (1, 4), (2, 4), (4, 4))
    assert len(divisor_pairs(6)) == 9


@given(st.integers(1, 300))
def test_divisor_pairs_complete(n):
    brute = sorted(((r, t) for t in range(1, n + 1) if n % t == 0 for r in range(1, t + 1) if t % r == 0),
                   key=lambda rt: (rt[1], rt[0]))
    assert list(divisor_pairs(n)) == brute


@pytest.mark.parametrize("q,p,qp,m", [(12, 2, 3, 4), (7, 3, 7, 1), (18, 3, 2, 9)])
def test_p_part_split(q, p, qp, m):
    s = p_part_split(q, p)
    assert (s.qprime, s.m) == (qp, m)


@given(st.integers(1, 10**6), st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_p_part_split_round_trip(q, p):
    s = p_part_split(q, p)
    assert s.qprime * s.m == q and s.qprime % p
    m = s.m
    while m % p == 0:
        m //= p
    assert m == 1


def test_primality_matches_sieve():
    flags = eratosthenes(20000)
    assert all(is_prime(n) == bool(flags[n]) for n in range(20001))
    assert is_prime(999999000001)  # 10**12 range
    assert not is_prime(999999000001 * 3)


@pytest.mark.parametrize("k,e,lower,p", [(1, 1, 1, 2), (5, 6, 1, 5), (1, 6, 100, 103)])
def test_prime_in_progression_examples(k, e, lower, p):
    assert prime_in_progression(k, e, lower) == p


def test_prime_in_progression_needs_coprime():
    with pytest.raises(ValueError):
        prime_in_progression(2, 4, 1)


@pytest.mark.parametrize("n,order,bound", [(1, 1, 5), (1, 4, 33), (2, 6, 118)])
def test_coprime_identity_prime_bound(n, order, bound):
    # p > 4 n |G|^(3/2)  <=>  p^2 > 16 n^2 |G|^3
    assert thm1_prime_bound(n, order) == bound == brute_least_above(16 * n * n * order**3)


@pytest.mark.parametrize("qp,beta,order,bound", [(1, 1, 1, 5), (3, 2, 6, 353), (2, 0, 8, 1)])
def test_idempotent_prime_bound(qp, beta, order, bound):
    assert cor1_prime_bound(qp, beta, order) == bound
    assert bound == brute_least_above(16 * qp * qp * beta * beta * order**3)


@given(st.integers(1, 20), st.integers(1, 120))
def test_bounds_are_tight(n, order):
    b = thm1_prime_bound(n, order)
    assert b * b > 16 * n * n * order**3 >= (b - 1) ** 2
