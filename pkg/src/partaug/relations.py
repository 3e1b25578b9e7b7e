"""Both sides of the partial-augmentation relations, evaluated per class.

Every right-hand side has the shape

    sum_{r | t | N} mu(r) * sum_{x^G : class(x^I) = s, x^I is an (B*r/t)-th power} nu_x

with outer modulus ``N``, exponent base ``B`` and inner power ``I``.  One
implementation (:func:`rhs_coefficients`) serves all four relations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Optional

from .groups import ClassTable, Group
from .numth import cor1_prime_bound, divisor_pairs, is_prime, moebius, p_part_split
from .ringcore import (
    GroupMismatchError,
    GroupRingElement,
    PAVector,
    augmentation,
    element_to_json,
    generalized_trace,
    pa_vector,
    ring_mul,
    ring_pow,
    torsion_order,
)

__all__ = [
    "PreconditionError",
    "NotPrimeError",
    "NotTorsionUnitError",
    "NotCoprimeError",
    "ResidueError",
    "NotIdempotentMultipleError",
    "PrimeDividesBetaError",
    "PrimeTooSmallError",
    "BudgetError",
    "RelationKind",
    "Row",
    "VerificationReport",
    "TraceProbe",
    "rhs_coefficients",
    "rhs_sum",
    "verify_theorem2",
    "verify_eq9",
    "verify_theorem1",
    "verify_corollary1",
    "oracle_nu_power",
    "probe_trace_conjecture",
]


class PreconditionError(ValueError):
    """Inputs outside a relation's hypotheses; never a mathematical FAIL."""


class NotPrimeError(PreconditionError):
    pass


class NotTorsionUnitError(PreconditionError):
    pass


class NotCoprimeError(PreconditionError):
    pass


class ResidueError(PreconditionError):
    pass


class NotIdempotentMultipleError(PreconditionError):
    pass


class PrimeDividesBetaError(PreconditionError):
    pass


class PrimeTooSmallError(PreconditionError):
    pass


class BudgetError(PreconditionError):
    pass


class RelationKind(str, Enum):
    THM1_EQ1 = "THM1_EQ1"
    THM2_EQ2 = "THM2_EQ2"
    COR1_EQ3 = "COR1_EQ3"
    EQ9 = "EQ9"


@dataclass(frozen=True)
class Row:
    class_rep: int
    lhs: int
    rhs: int
    modulus: Optional[int]
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    group: str
    relation: RelationKind
    params: dict
    rows: tuple[Row, ...]
    mode: str = "congruence"

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "relation": self.relation.value,
            "params": dict(self.params, mode=self.mode),
            "rows": [
                {"class_rep": r.class_rep, "lhs": r.lhs, "rhs": r.rhs, "modulus": r.modulus, "pass": r.passed}
                for r in self.rows
            ],
            "pass": self.passed,
        }


_COEFF_CACHE: dict = {}


def rhs_coefficients(G: Group, outer_n: int, base: int, inner_power: int) -> tuple[tuple[int, ...], ...]:
    """Matrix ``c[s][x]`` with ``rhs(s) = sum_x c[s][x] * nu_x``."""
    if outer_n < 1 or base < 1 or inner_power < 1:
        raise ValueError("exponents must be positive")
    key = (G, outer_n, base, inner_power)
    hit = _COEFF_CACHE.get(key)
    if hit is not None:
        return hit
    ct = G.class_table
    inner = G.power_row(inner_power)
    # class of x^I for each class representative x
    target = [ct.class_of[inner[c.rep]] for c in ct.classes]
    k = len(ct)
    mat = [[0] * k for _ in range(k)]
    for r, t in divisor_pairs(outer_n):
        if (base * r) % t:
            raise ValueError(f"exponent {base}*{r}/{t} is not an integer")
        mu = moebius(r)
        if mu == 0:
            continue
        powers = G.power_row(base * r // t)
        image = {ct.class_of[y] for y in powers}
        for x in range(k):
            if target[x] in image:
                mat[target[x]][x] += mu
    result = tuple(tuple(row) for row in mat)
    _COEFF_CACHE[key] = result
    return result


def rhs_sum(
    G: Group,
    classtable: ClassTable,
    pa: PAVector,
    outer_n: int,
    power_exponent_base: int,
    inner_power: int,
    s: int,
) -> int:
    if pa.classes is not classtable or classtable is not G.class_table:
        raise ValueError("PA vector does not belong to this group's class table")
    row = rhs_coefficients(G, outer_n, power_exponent_base, inner_power)[s]
    return sum(c * v for c, v in zip(row, pa.values) if c)


def _rhs_all(G: Group, pa: PAVector, outer_n: int, base: int, inner: int) -> list[int]:
    mat = rhs_coefficients(G, outer_n, base, inner)
    return [sum(c * v for c, v in zip(row, pa.values) if c) for row in mat]


def _rows(G: Group, lhs: list[int], rhs: list[int], modulus: Optional[int]) -> tuple[Row, ...]:
    reps = G.class_table.reps
    out = []
    for rep, a, b in zip(reps, lhs, rhs):
        ok = (a - b) % modulus == 0 if modulus else a == b
        out.append(Row(rep, a, b, modulus, ok))
    return tuple(out)


def _require_group(G: Group, u: GroupRingElement) -> None:
    if u.group is not G:
        raise GroupMismatchError(f"element lives over {u.group.label}, not this {G.label} instance")


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")


def _require_torsion_unit(u: GroupRingElement) -> int:
    if augmentation(u) != 1:
        raise NotTorsionUnitError("u must have augmentation 1")
    o = torsion_order(u)
    if o is None:
        raise NotTorsionUnitError("u is not a torsion unit")
    return o


def _require_coprime(k: int, e: int) -> None:
    if k < 1 or math.gcd(k, e) != 1:
        raise NotCoprimeError(f"k = {k} is not coprime to the exponent {e}")


def verify_theorem2(G: Group, u: GroupRingElement, q: int, p: int) -> VerificationReport:
    """nu_s(u^q) = rhs over pa(u^q') modulo p, for any element u."""
    _require_group(G, u)
    if q < 1:
        raise PreconditionError("q must be positive")
    _require_prime(p)
    split = p_part_split(q, p)
    lhs = list(pa_vector(ring_pow(u, q)).values)
    rhs = _rhs_all(G, pa_vector(ring_pow(u, split.qprime)), split.qprime, q, split.m)
    params = {"q": q, "p": p, "qprime": split.qprime, "m": split.m}
    return VerificationReport(G.label, RelationKind.THM2_EQ2, params, _rows(G, lhs, rhs, p))


def verify_eq9(G: Group, u: GroupRingElement, n: int, k: int) -> VerificationReport:
    """nu_s(u^(nk)) = rhs over pa(u^n), exactly, for a normalized torsion unit."""
    _require_group(G, u)
    if n < 1:
        raise PreconditionError("n must be positive")
    o = _require_torsion_unit(u)
    _require_coprime(k, G.exponent)
    # u has order o, so powers reduce mod o
    lhs = list(pa_vector(ring_pow(u, (n * k) % o)).values)
    rhs = _rhs_all(G, pa_vector(ring_pow(u, n % o)), n, k * n, k)
    params = {"n": n, "k": k, "unit_order": o}
    return VerificationReport(G.label, RelationKind.EQ9, params, _rows(G, lhs, rhs, None), mode="equality")


def verify_theorem1(G: Group, u: GroupRingElement, n: int, k: int) -> VerificationReport:
    """nu_s(u) = rhs over pa(u) exactly, when n = k = 1 mod |u| and gcd(k, exp G) = 1."""
    _require_group(G, u)
    if n < 1:
        raise PreconditionError("n must be positive")
    o = _require_torsion_unit(u)
    _require_coprime(k, G.exponent)
    if n % o != 1 % o or k % o != 1 % o:
        raise ResidueError(f"n = {n} and k = {k} must both be 1 modulo |u| = {o}")
    pa = pa_vector(u)
    rhs = _rhs_all(G, pa, n, k * n, k)
    params = {"n": n, "k": k, "unit_order": o}
    return VerificationReport(G.label, RelationKind.THM1_EQ1, params, _rows(G, list(pa.values), rhs, None), mode="equality")


def verify_corollary1(
    G: Group, u: GroupRingElement, beta: int, q: int, p: int, mode: str = "congruence"
) -> VerificationReport:
    """Relation for ``u = beta * e`` with ``e`` idempotent, mod p or exactly."""
    _require_group(G, u)
    if mode not in ("congruence", "equality"):
        raise PreconditionError(f"unknown mode {mode!r}")
    if q < 1:
        raise PreconditionError("q must be positive")
    _require_prime(p)
    if ring_mul(u, u) != beta * u:
        raise NotIdempotentMultipleError(f"u*u != {beta}*u")
    if beta % p == 0:
        raise PrimeDividesBetaError(f"p = {p} divides beta = {beta}")
    split = p_part_split(q, p)
    if mode == "equality":
        bound = cor1_prime_bound(split.qprime, beta, G.order)
        if p < bound:
            raise PrimeTooSmallError(f"equality needs p >= {bound}, got {p}")
    pa = pa_vector(u)
    rhs = _rhs_all(G, pa, split.qprime, q, split.m)
    modulus = p if mode == "congruence" else None
    params = {"q": q, "p": p, "beta": beta, "qprime": split.qprime, "m": split.m}
    return VerificationReport(G.label, RelationKind.COR1_EQ3, params, _rows(G, list(pa.values), rhs, modulus), mode=mode)


def oracle_nu_power(G: Group, u: GroupRingElement, q: int, s: int, budget: int = 10**6) -> int:
    """nu_s(u^q) summed over all q-tuples from the support of u."""
    _require_group(G, u)
    if q < 1:
        raise PreconditionError("q must be positive")
    terms = u.terms
    if len(terms) ** q > budget:
        raise BudgetError(f"{len(terms)}^{q} tuples exceed budget {budget}")
    class_of, t = G.class_table.class_of, G.table
    total = 0
    for tup in itertools.product(terms, repeat=q):
        g, c = 0, 1
        for h, a in tup:
            g = t[g][h]
            c *= a
        if class_of[g] == s:
            total += c
    return total


@dataclass(frozen=True)
class TraceProbe:
    group: str
    p: int
    n: int
    unit_order: int
    traces: tuple[int, ...]
    element: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.traces == (0,) * self.n + (1,)

    def to_json(self) -> dict:
        d = asdict(self)
        d["traces"] = list(self.traces)
        d["holds"] = self.holds
        return d


def probe_trace_conjecture(G: Group, u: GroupRingElement, p: int) -> TraceProbe:
    """Generalized traces Tr^(0..n)(u) for a unit of order p^n, n >= 1."""
    _require_group(G, u)
    _require_prime(p)
    o = _require_torsion_unit(u)
    n, x = 0, o
    while x % p == 0:
        x //= p
        n += 1
    if x != 1 or n == 0:
        raise PreconditionError(f"unit order {o} is not a positive power of {p}")
    traces = tuple(generalized_trace(u, p, i) for i in range(n + 1))
    return TraceProbe(G.label, p, n, o, traces, element_to_json(u))
