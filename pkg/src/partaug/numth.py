"""Number-theoretic helpers: Möbius function, divisor chains, p-parts, primes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "PPartSplit",
    "is_prime",
    "factorize",
    "divisors",
    "moebius",
    "divisor_pairs",
    "p_part_split",
    "prime_in_progression",
    "thm1_prime_bound",
    "cor1_prime_bound",
]


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            k = 0
            while n % f == 0:
                n //= f
                k += 1
            out.append((f, k))
        f += 1 if f == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    divs = [1]
    for p, k in factorize(n):
        divs = [d * p**i for d in divs for i in range(k + 1)]
    return tuple(sorted(divs))


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius is defined on positive integers")
    fac = factorize(n)
    if any(k > 1 for _, k in fac):
        return 0
    return -1 if len(fac) % 2 else 1


@lru_cache(maxsize=None)
def divisor_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """All ``(r, t)`` with ``r | t | n``, sorted by ``(t, r)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple((r, t) for t in divisors(n) for r in divisors(t))


@dataclass(frozen=True)
class PPartSplit:
    q: int
    p: int
    qprime: int
    m: int


def p_part_split(q: int, p: int) -> PPartSplit:
    """Split ``q = qprime * m`` with ``m`` the largest power of ``p`` dividing ``q``."""
    if q < 1:
        raise ValueError("q must be positive")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    qprime, m = q, 1
    while qprime % p == 0:
        qprime //= p
        m *= p
    return PPartSplit(q, p, qprime, m)


def prime_in_progression(k: int, e: int, lower: int = 2) -> int:
    """Smallest prime ``p >= lower`` with ``p = k (mod e)``."""
    if e < 1 or k < 1:
        raise ValueError("k and e must be positive")
    if math.gcd(k, e) != 1:
        raise ValueError(f"gcd({k}, {e}) != 1: progression holds at most one prime")
    c = max(lower, 2)
    c += (k - c) % e
    while not is_prime(c):
        c += e
    return c


def _least_above_sqrt(n_sq: int) -> int:
    # least integer B with B*B > n_sq
    return math.isqrt(n_sq) + 1


def thm1_prime_bound(n: int, group_order: int) -> int:
    """Least ``B`` such that ``p >= B`` implies ``p > 4 n |G|^(3/2)``."""
    if n < 1 or group_order < 1:
        raise ValueError("n and group order must be positive")
    return _least_above_sqrt(16 * n * n * group_order**3)


def cor1_prime_bound(qprime: int, beta: int, group_order: int) -> int:
    """Least ``B`` such that ``p >= B`` implies ``p > 4 q' |beta| |G|^(3/2)``."""
    if qprime < 1 or group_order < 1:
        raise ValueError("q' and group order must be positive")
    return _least_above_sqrt(16 * qprime * qprime * beta * beta * group_order**3)
