"""Exact arithmetic in the integral group ring ZG.

Elements are immutable, sparse, and carry Python integers, so powers never
overflow.  Partial augmentations, generalized traces, inverses and torsion
orders are computed here together with generators of test units.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Mapping, Optional

from .groups import ClassTable, Group, GroupError, load_group
from .numth import divisors, is_prime

__all__ = [
    "GroupMismatchError",
    "NotAUnitError",
    "GroupRingElement",
    "PAVector",
    "ring_add",
    "ring_sub",
    "ring_mul",
    "ring_scale",
    "ring_pow",
    "augmentation",
    "partial_augmentation",
    "pa_vector",
    "generalized_trace",
    "inverse",
    "torsion_order",
    "bicyclic_unit",
    "bicyclic_units",
    "conjugate",
    "subgroup_sum",
    "sample_units",
    "load_element",
    "element_to_json",
]


class GroupMismatchError(ValueError):
    pass


class NotAUnitError(ValueError):
    pass


class GroupRingElement:
    """``sum(alpha_g * g)`` with zero coefficients pruned."""

    __slots__ = ("group", "terms", "_hash")

    def __init__(self, group: Group, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for g, a in items:
            g = int(g)
            if not 0 <= g < group.order:
                raise GroupError(f"element index {g} outside group of order {group.order}")
            acc[g] = acc.get(g, 0) + int(a)
        self.group = group
        self.terms: tuple[tuple[int, int], ...] = tuple(sorted((g, a) for g, a in acc.items() if a))
        self._hash = hash((id(group), self.terms))

    @classmethod
    def _raw(cls, group: Group, acc: dict[int, int]) -> "GroupRingElement":
        obj = cls.__new__(cls)
        obj.group = group
        obj.terms = tuple(sorted((g, a) for g, a in acc.items() if a))
        obj._hash = hash((id(group), obj.terms))
        return obj

    @classmethod
    def zero(cls, group: Group) -> "GroupRingElement":
        return cls._raw(group, {})

    @classmethod
    def one(cls, group: Group) -> "GroupRingElement":
        return cls._raw(group, {0: 1})

    @classmethod
    def of(cls, group: Group, g: int, coeff: int = 1) -> "GroupRingElement":
        return cls(group, {g: coeff})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self.terms)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(g for g, _ in self.terms)

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group is other.group and self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{a}*{self.group.names[g]}" for g, a in self.terms)

    def __add__(self, other):
        return ring_add(self, other)

    def __sub__(self, other):
        return ring_sub(self, other)

    def __neg__(self):
        return ring_scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, int):
            return ring_scale(other, self)
        return ring_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return ring_scale(other, self)
        return NotImplemented

    def __pow__(self, q: int):
        return ring_pow(self, q)


def _same(u: GroupRingElement, v: GroupRingElement) -> Group:
    if u.group is not v.group:
        raise GroupMismatchError(f"elements live over {u.group.label} and {v.group.label}")
    return u.group


def ring_add(u: GroupRingElement, v: GroupRingElement) -> GroupRingElement:
    G = _same(u, v)
    acc = dict(u.terms)
    for g, b in v.terms:
        acc[g] = acc.get(g, 0) + b
    return GroupRingElement._raw(G, acc)


def ring_sub(u: GroupRingElement, v: GroupRingElement) -> GroupRingElement:
    return ring_add(u, ring_scale(-1, v))


def ring_scale(c: int, u: GroupRingElement) -> GroupRingElement:
    return GroupRingElement._raw(u.group, {g: c * a for g, a in u.terms})


def ring_mul(u: GroupRingElement, v: GroupRingElement) -> GroupRingElement:
    G = _same(u, v)
    t = G.table
    acc: dict[int, int] = {}
    for g, a in u.terms:
        row = t[g]
        for h, b in v.terms:
            k = row[h]
            acc[k] = acc.get(k, 0) + a * b
    return GroupRingElement._raw(G, acc)


@lru_cache(maxsize=1 << 16)
def ring_pow(u: GroupRingElement, q: int) -> GroupRingElement:
    """``u**q`` by repeated squaring (memoized; elements are immutable)."""
    if q < 0:
        raise ValueError("negative powers are not supported; use inverse()")
    if q == 0:
        return GroupRingElement.one(u.group)
    if q == 1:
        return u
    half = ring_pow(u, q // 2)
    sq = ring_mul(half, half)
    return ring_mul(sq, u) if q & 1 else sq


def augmentation(u: GroupRingElement) -> int:
    return sum(a for _, a in u.terms)


def partial_augmentation(u: GroupRingElement, cls: Optional[int] = None, *, element: Optional[int] = None) -> int:
    """Sum of the coefficients of ``u`` over one conjugacy class.

    The class is given either by its id ``cls`` or by any ``element`` in it.
    """
    ct = u.group.class_table
    if (cls is None) == (element is None):
        raise TypeError("give exactly one of cls or element")
    if element is not None:
        if not 0 <= element < u.group.order:
            raise GroupError(f"element {element} is not in {u.group.label}")
        cls = ct.class_of[element]
    if not 0 <= cls < len(ct):
        raise GroupError(f"class id {cls} out of range")
    class_of = ct.class_of
    return sum(a for g, a in u.terms if class_of[g] == cls)


@dataclass(frozen=True)
class PAVector:
    classes: ClassTable
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.classes):
            raise ValueError("one entry per class required")

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def pa_vector(u: GroupRingElement) -> PAVector:
    ct = u.group.class_table
    vals = [0] * len(ct)
    for g, a in u.terms:
        vals[ct.class_of[g]] += a
    return PAVector(ct, tuple(vals))


def generalized_trace(u: GroupRingElement, p: int, n: int) -> int:
    """Sum of coefficients over elements of order exactly ``p**n``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 0:
        raise ValueError("n must be non-negative")
    target = p**n
    orders = u.group.element_orders
    return sum(a for g, a in u.terms if orders[g] == target)


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    # Gauss-Jordan over Q; None when singular
    n = len(rows)
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pr = aug[col]
        inv = 1 / pr[col]
        if inv != 1:
            aug[col] = pr = [x * inv for x in pr]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                row = aug[r]
                aug[r] = [x - f * y for x, y in zip(row, pr)]
    return [aug[r][n] for r in range(n)]


def inverse(u: GroupRingElement) -> Optional[GroupRingElement]:
    """Two-sided inverse in ZG, or ``None`` when ``u`` is not a unit."""
    G = u.group
    if not u or abs(augmentation(u)) != 1:
        return None
    t, inv = G.table, G.inverses
    alpha = u.coeffs
    # (u v)_z = sum_h alpha_{z h^-1} beta_h
    rows = [[Fraction(alpha.get(t[z][inv[h]], 0)) for h in range(G.order)] for z in range(G.order)]
    rhs = [Fraction(int(z == 0)) for z in range(G.order)]
    sol = _solve_exact(rows, rhs)
    if sol is None or any(x.denominator != 1 for x in sol):
        return None
    v = GroupRingElement(G, {h: int(x) for h, x in enumerate(sol)})
    one = GroupRingElement.one(G)
    assert ring_mul(u, v) == one and ring_mul(v, u) == one
    return v


def torsion_order(u: GroupRingElement, cap: Optional[int] = None) -> Optional[int]:
    """Multiplicative order of the unit ``u``, or ``None`` if none up to ``cap``.

    Divisors of ``2*exponent`` are tried first; the exhaustive fallback runs
    over ``1..cap`` (default ``2*exponent``).
    """
    G = u.group
    if abs(augmentation(u)) != 1:
        raise NotAUnitError("torsion order needs augmentation +-1")
    one = GroupRingElement.one(G)
    for d in divisors(2 * G.exponent):
        if ring_pow(u, d) == one:
            return d
    cap = 2 * G.exponent if cap is None else cap
    x = u
    for d in range(1, cap + 1):
        if x == one:
            return d
        x = ring_mul(x, u)
    return None


def _cyclic_sum(G: Group, h: int) -> GroupRingElement:
    acc, x = {}, 0
    while True:
        acc[x] = 1
        x = G.table[x][h]
        if x == 0:
            break
    return GroupRingElement._raw(G, acc)


def bicyclic_unit(G: Group, g: int, h: int, inverse: bool = False) -> GroupRingElement:
    """``1 + (1 - h) g hhat`` (or its inverse ``1 - (1 - h) g hhat``)."""
    one = GroupRingElement.one(G)
    nil = ring_mul(ring_mul(one - GroupRingElement.of(G, h), GroupRingElement.of(G, g)), _cyclic_sum(G, h))
    return one - nil if inverse else one + nil


def bicyclic_units(G: Group, h_choices: Optional[Iterable[int]] = None) -> list[tuple[GroupRingElement, GroupRingElement]]:
    """Distinct nontrivial bicyclic units with their inverses.

    ``h`` defaults to the non-identity class representatives, ``g`` runs over
    the whole group.  Sorted by coefficient tuple for determinism.
    """
    if h_choices is None:
        h_choices = G.class_table.reps[1:]
    one = GroupRingElement.one(G)
    found: dict[GroupRingElement, GroupRingElement] = {}
    for h in h_choices:
        for g in range(G.order):
            b = bicyclic_unit(G, g, h)
            if b != one and b not in found:
                found[b] = bicyclic_unit(G, g, h, inverse=True)
    return sorted(found.items(), key=lambda bw: bw[0].terms)


def conjugate(u: GroupRingElement, w: GroupRingElement, w_inv: Optional[GroupRingElement] = None) -> GroupRingElement:
    """``w u w^-1``."""
    if w_inv is None:
        w_inv = inverse(w)
        if w_inv is None:
            raise NotAUnitError("conjugating element is not a unit")
    return ring_mul(ring_mul(w, u), w_inv)


def subgroup_sum(G: Group, H: Iterable[int]) -> tuple[GroupRingElement, int]:
    """``(Hhat, |H|)``; ``Hhat / |H|`` is an idempotent of QG."""
    H = frozenset(H)
    if 0 not in H or any(G.table[a][b] not in H for a in H for b in H):
        raise GroupError("not a subgroup: missing identity or not closed")
    u = GroupRingElement(G, {h: 1 for h in H})
    return u, len(H)


def load_element(path: str | Path, group: Optional[Group] = None) -> GroupRingElement:
    """Read ``{"group": ..., "coeffs": {"<index>": <int>}}``.

    A relative group path is resolved against the element file's directory.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        coeffs = data["coeffs"]
        if not isinstance(coeffs, dict):
            raise TypeError
        pairs = [(int(k), v) for k, v in coeffs.items()]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed element file {path}: {exc}") from None
    if any(not isinstance(v, int) or isinstance(v, bool) for _, v in pairs):
        raise ValueError(f"malformed element file {path}: coefficients must be integers")
    if group is None:
        src = str(data.get("group", ""))
        if not src:
            raise ValueError(f"element file {path} names no group")
        local = path.parent / src
        group = load_group(str(local) if local.is_file() else src)
    return GroupRingElement(group, pairs)


def element_to_json(u: GroupRingElement) -> dict:
    return {"group": u.group.label, "coeffs": {str(g): a for g, a in u.terms}}


def sample_units(G: Group, h_choices: Optional[Iterable[int]] = None) -> list[tuple[str, GroupRingElement]]:
    """Trivial units ``g`` and their conjugates ``b g b^-1`` by bicyclic units.

    Labels name the construction; duplicates (by coefficients) are dropped.
    """
    seen: set[GroupRingElement] = set()
    out = []
    for g in range(G.order):
        u = GroupRingElement.of(G, g)
        seen.add(u)
        out.append((f"g{g}", u))
    for i, (b, b_inv) in enumerate(bicyclic_units(G, h_choices)):
        for g in range(G.order):
            u = ring_mul(ring_mul(b, GroupRingElement.of(G, g)), b_inv)
            if u not in seen:
                seen.add(u)
                out.append((f"b{i}*g{g}*b{i}^-1", u))
    return out
