"""Candidate partial-augmentation vectors for a hypothetical torsion unit.

The unknowns are one integer per conjugacy class.  Admissible vectors satisfy
augmentation one, vanishing at the identity (for order > 1), the class-size
bound ``nu_x**2 <= |x^G|`` and the power-map relations for every supplied
``(n, k)`` pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .groups import Group
from .relations import NotCoprimeError, PreconditionError, ResidueError, rhs_coefficients

__all__ = [
    "SieveProblem",
    "Constraint",
    "SieveResult",
    "default_instances",
    "make_problem",
    "build_constraints",
    "enumerate_admissible",
    "certify",
    "run_sieve",
]

DEFAULT_ENUM_CAP = 10**7


def default_instances(G: Group, order: int) -> tuple[tuple[int, int], ...]:
    e = G.exponent
    ks = [k for k in range(1, max(e, 2)) if math.gcd(k, e) == 1 and k % order == 1 % order]
    ns = [order * j + 1 for j in range(4)]
    return tuple((n, k) for k in ks for n in ns)


@dataclass(frozen=True)
class SieveProblem:
    group: Group
    order: int
    instances: tuple[tuple[int, int], ...]
    cap: int = DEFAULT_ENUM_CAP

    def __post_init__(self):
        if self.order < 1:
            raise PreconditionError("hypothesized order must be positive")
        e = self.group.exponent
        for n, k in self.instances:
            if n < 1 or k < 1 or math.gcd(k, e) != 1:
                raise NotCoprimeError(f"(n, k) = ({n}, {k}): k must be coprime to {e}")
            if n % self.order != 1 % self.order or k % self.order != 1 % self.order:
                raise ResidueError(f"(n, k) = ({n}, {k}) not both 1 mod {self.order}")

    @property
    def bounds(self) -> tuple[int, ...]:
        return tuple(math.isqrt(c.size) for c in self.group.class_table)


def make_problem(G: Group, order: int, instances: Optional[Sequence[tuple[int, int]]] = None,
                 cap: int = DEFAULT_ENUM_CAP) -> SieveProblem:
    if instances is None:
        instances = default_instances(G, order)
    return SieveProblem(G, order, tuple(tuple(i) for i in instances), cap)


@dataclass(frozen=True)
class Constraint:
    """Linear ``sum(coeffs[x] * nu_x) == value`` or, for ``class_bound``, ``nu_cls**2 <= value``."""

    kind: str
    coeffs: tuple[int, ...] = ()
    value: int = 0
    cls: Optional[int] = None
    params: tuple = ()

    def holds(self, nu: Sequence[int]) -> bool:
        if self.kind == "class_bound":
            return nu[self.cls] ** 2 <= self.value
        return sum(c * v for c, v in zip(self.coeffs, nu)) == self.value

    def describe(self) -> str:
        if self.kind == "eq1_relation":
            n, k = self.params
            return f"eq1_relation(n={n},k={k},s={self.cls})"
        if self.kind == "class_bound":
            return f"class_bound(cls={self.cls},size={self.value})"
        if self.kind == "order_one":
            return f"order_one(cls={self.cls})"
        return self.kind


def build_constraints(problem: SieveProblem) -> list[Constraint]:
    G = problem.group
    ct = G.class_table
    h = len(ct)
    out = [Constraint("augmentation", (1,) * h, 1)]
    if problem.order > 1:
        out.append(Constraint("berman_higman", (1,) + (0,) * (h - 1), 0, cls=0))
    else:
        # u^1 = 1 forces u = 1
        for x in range(h):
            unit = tuple(int(i == x) for i in range(h))
            out.append(Constraint("order_one", unit, int(x == 0), cls=x))
    for n, k in problem.instances:
        mat = rhs_coefficients(G, n, k * n, k)
        for s in range(h):
            row = [-c for c in mat[s]]
            row[s] += 1
            if any(row):
                out.append(Constraint("eq1_relation", tuple(row), 0, cls=s, params=(n, k)))
    for x, c in enumerate(ct):
        out.append(Constraint("class_bound", cls=x, value=c.size))
    return out


def enumerate_admissible(problem: SieveProblem, constraints: Optional[list[Constraint]] = None) -> list[tuple[int, ...]]:
    """All admissible vectors in lexicographic order (depth-first search)."""
    if constraints is None:
        constraints = build_constraints(problem)
    h = len(problem.group.class_table)
    lo = [-b for b in problem.bounds]
    hi = list(problem.bounds)
    for con in constraints:
        if con.kind == "class_bound":
            b = math.isqrt(con.value)
            lo[con.cls], hi[con.cls] = max(lo[con.cls], -b), min(hi[con.cls], b)
        elif con.kind == "berman_higman":
            lo[0] = hi[0] = 0
    size = math.prod(max(0, b - a + 1) for a, b in zip(lo, hi))
    if size > problem.cap:
        raise PreconditionError(f"search box of {size} vectors exceeds cap {problem.cap}")

    linear = [c for c in constraints if c.kind != "class_bound"]
    # check each linear constraint as soon as its last variable is set
    by_depth: list[list[Constraint]] = [[] for _ in range(h)]
    for con in linear:
        last = max((i for i, c in enumerate(con.coeffs) if c), default=0)
        by_depth[last].append(con)
    aug = next(c for c in linear if c.kind == "augmentation")
    suffix_lo = [0] * (h + 1)
    suffix_hi = [0] * (h + 1)
    for i in range(h - 1, -1, -1):
        suffix_lo[i] = suffix_lo[i + 1] + lo[i]
        suffix_hi[i] = suffix_hi[i + 1] + hi[i]

    found: list[tuple[int, ...]] = []
    nu = [0] * h

    def dfs(depth: int, partial: int) -> None:
        for v in range(lo[depth], hi[depth] + 1):
            s = partial + v
            rest_lo, rest_hi = suffix_lo[depth + 1], suffix_hi[depth + 1]
            if not rest_lo <= aug.value - s <= rest_hi:
                continue
            nu[depth] = v
            if any(not c.holds(nu) for c in by_depth[depth]):
                continue
            if depth == h - 1:
                found.append(tuple(nu))
            else:
                dfs(depth + 1, s)
        nu[depth] = 0

    if size:
        dfs(0, 0)
    return found


def certify(vector: Sequence[int], problem: SieveProblem, constraints: Optional[list[Constraint]] = None) -> list[tuple[str, bool]]:
    """Evaluate every constraint on ``vector`` directly."""
    if constraints is None:
        constraints = build_constraints(problem)
    if len(vector) != len(problem.group.class_table):
        raise ValueError("vector length must equal the number of classes")
    return [(c.describe(), c.holds(vector)) for c in constraints]


@dataclass
class SieveResult:
    group: str
    order: int
    constraints_used: list[str]
    admissible: list[tuple[int, ...]]
    witnesses: list[int]
    witness_vectors: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def sound(self) -> bool:
        found = set(self.admissible)
        return all(w in found for w in self.witness_vectors)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "constraints_used": self.constraints_used,
            "admissible": [list(v) for v in self.admissible],
            "witnesses": self.witnesses,
            "sound": self.sound,
        }


def run_sieve(problem: SieveProblem) -> SieveResult:
    G = problem.group
    ct = G.class_table
    cons = build_constraints(problem)
    adm = enumerate_admissible(problem, cons)
    reps = [c.rep for c in ct if G.element_orders[c.rep] == problem.order]
    vecs = []
    for r in reps:
        v = [0] * len(ct)
        v[ct.class_of[r]] = 1
        vecs.append(tuple(v))
    used = ["augmentation", "class_bound"]
    used.insert(1, "berman_higman" if problem.order > 1 else "order_one")
    used += [f"eq1_relation(n={n},k={k})" for n, k in problem.instances]
    return SieveResult(G.label, problem.order, used, adm, reps, vecs)
