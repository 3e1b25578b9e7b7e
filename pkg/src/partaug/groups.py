"""Finite groups with indexed elements, conjugacy classes and power maps.

Elements are integers ``0..|G|-1`` with ``0`` the identity.  Permutation
groups compose left to right: ``a*b`` applies ``a`` first, then ``b``
(points are written 1-based in cycle notation, stored 0-based).
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache, reduce
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

DEFAULT_CAP = 2000

__all__ = [
    "GroupError",
    "GroupSpec",
    "Group",
    "ConjClass",
    "ClassTable",
    "NAMED_GROUPS",
    "build_group",
    "load_group",
    "parse_group_text",
    "parse_cycles",
    "cycle_notation",
    "conjugacy_classes",
    "element_power",
    "power_image",
    "power_class_map",
    "exponent",
    "subgroup_closure",
    "all_subgroups",
]


class GroupError(ValueError):
    """Malformed group description or a table that is not a group."""


@dataclass(frozen=True)
class GroupSpec:
    kind: str  # "named" | "perm" | "table"
    name: Optional[str] = None
    degree: int = 0
    generators: tuple[str, ...] = ()
    table: Optional[tuple[tuple[int, ...], ...]] = None

    def __post_init__(self):
        if self.kind not in ("named", "perm", "table"):
            raise GroupError(f"unknown group kind {self.kind!r}")
        if self.kind == "named" and not self.name:
            raise GroupError("named group needs a name")
        if self.kind == "perm" and self.degree < 1:
            raise GroupError("permutation degree must be positive")
        if self.kind == "table" and not self.table:
            raise GroupError("table group needs a non-empty table")


# name -> (degree, generators)
NAMED_GROUPS: dict[str, tuple[int, tuple[str, ...]]] = {
    "S3": (3, ("(1 2)", "(1 2 3)")),
    "S4": (4, ("(1 2 3 4)", "(1 2)")),
    "A4": (4, ("(1 2 3)", "(1 2)(3 4)")),
    "A5": (5, ("(1 2 3 4 5)", "(1 2 3)")),
    "D4": (4, ("(1 2 3 4)", "(1 3)")),
    # regular representation of i, j
    "Q8": (8, ("(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)")),
}

_CYCLIC = re.compile(r"^C(\d+)$")


def _named(name: str) -> tuple[int, tuple[str, ...]]:
    m = _CYCLIC.match(name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise GroupError("cyclic group order must be positive")
        if n == 1:
            return 1, ()
        return n, ("(" + " ".join(str(i) for i in range(1, n + 1)) + ")",)
    try:
        return NAMED_GROUPS[name]
    except KeyError:
        raise GroupError(f"unknown named group {name!r}") from None


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse cycle notation such as ``(1 2)(3 4)`` into an image tuple."""
    text = text.strip()
    if not text:
        raise GroupError("empty cycle notation")
    if _CYCLE.sub("", text).strip():
        raise GroupError(f"malformed cycle notation {text!r}")
    perm = list(range(degree))
    seen: set[int] = set()
    for body in _CYCLE.findall(text):
        body = body.replace(",", " ").split()
        try:
            pts = [int(tok) - 1 for tok in body]
        except ValueError:
            raise GroupError(f"malformed cycle notation {text!r}") from None
        for pt in pts:
            if not 0 <= pt < degree:
                raise GroupError(f"point {pt + 1} outside 1..{degree}")
            if pt in seen:
                raise GroupError(f"point {pt + 1} repeated in {text!r}")
            seen.add(pt)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a] = b
    return tuple(perm)


def cycle_notation(perm: Sequence[int]) -> str:
    out = []
    seen = set()
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        out.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(out) or "()"


@dataclass(frozen=True)
class ConjClass:
    rep: int
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ClassTable:
    classes: tuple[ConjClass, ...]
    class_of: tuple[int, ...]

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i) -> ConjClass:
        return self.classes[i]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.classes)

    @property
    def reps(self) -> tuple[int, ...]:
        return tuple(c.rep for c in self.classes)


@dataclass(eq=False)
class Group:
    """A finite group given by its multiplication table.

    ``names[i]`` is a printable label for element ``i`` (cycle notation for
    permutation groups).  Instances are treated as immutable.
    """

    label: str
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    _power_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.order = len(self.table)
        inv = [0] * self.order
        for a, row in enumerate(self.table):
            inv[a] = row.index(0)
        self.inverses = tuple(inv)
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = self.table[x][a]
                k += 1
            orders.append(k)
        self.element_orders = tuple(orders)
        self.exponent = reduce(math.lcm, orders, 1)

    def __repr__(self):
        return f"Group({self.label!r}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    @cached_property
    def class_table(self) -> ClassTable:
        t, inv = self.table, self.inverses
        class_of = [-1] * self.order
        classes = []
        # scanning in index order makes the first unassigned element the minimum
        for x in range(self.order):
            if class_of[x] >= 0:
                continue
            members = sorted({t[t[g][x]][inv[g]] for g in range(self.order)})
            for y in members:
                class_of[y] = len(classes)
            classes.append(ConjClass(x, tuple(members)))
        return ClassTable(tuple(classes), tuple(class_of))

    def power(self, g: int, e: int) -> int:
        if e < 0:
            g, e = self.inverses[g], -e
        result, base = 0, g
        while e:
            if e & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            e >>= 1
        return result

    def power_row(self, e: int) -> tuple[int, ...]:
        """``x -> x^e`` for every element, cached by ``e mod exponent``."""
        key = e % self.exponent
        row = self._power_cache.get(key)
        if row is None:
            row = tuple(self.power(x, key) for x in range(self.order))
            self._power_cache[key] = row
        return row

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise GroupError(f"no element named {name!r} in {self.label}") from None


def _closure(degree: int, gens: list[tuple[int, ...]], cap: int) -> list[tuple[int, ...]]:
    ident = tuple(range(degree))
    elems = [ident]
    seen = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[x[i]] for i in range(degree))
            if y not in seen:
                seen[y] = len(elems)
                elems.append(y)
                if len(elems) > cap:
                    raise GroupError(f"closure exceeds cap of {cap} elements")
                queue.append(y)
    return elems


def _perm_group(label: str, degree: int, generators: Sequence[str], cap: int) -> Group:
    gens = [parse_cycles(g, degree) for g in generators]
    elems = _closure(degree, gens, cap)
    index = {p: i for i, p in enumerate(elems)}
    table = tuple(
        tuple(index[tuple(b[a[i]] for i in range(degree))] for b in elems) for a in elems
    )
    return Group(label, table, tuple(cycle_notation(p) for p in elems))


def _check_table(rows: Sequence[Sequence[int]]) -> np.ndarray:
    m = len(rows)
    try:
        t = np.array(rows, dtype=np.int64)
    except ValueError:
        raise GroupError("table rows have unequal lengths") from None
    if t.shape != (m, m):
        raise GroupError("table must be square")
    full = np.arange(m)
    if ((t < 0) | (t >= m)).any():
        raise GroupError("table entries out of range")
    if not (np.sort(t, axis=1) == full).all() or not (np.sort(t, axis=0) == full[:, None]).all():
        raise GroupError("table rows and columns must be permutations")
    idents = [e for e in range(m) if (t[e] == full).all() and (t[:, e] == full).all()]
    if not idents:
        raise GroupError("table has no identity")
    e = idents[0]
    if e != 0:
        # swap labels 0 and e so the identity sits at index 0
        relabel = full.copy()
        relabel[0], relabel[e] = e, 0
        t = relabel[t[np.ix_(relabel, relabel)]]
    # Light's test over a generating set
    gens: list[int] = []
    span = {0}
    for a in range(m):
        if a in span:
            continue
        gens.append(a)
        span.add(a)
        frontier = list(span)
        while frontier:
            nxt = []
            for x in frontier:
                for y in list(span):
                    for z in (int(t[x, y]), int(t[y, x])):
                        if z not in span:
                            span.add(z)
                            nxt.append(z)
            frontier = nxt
    for a in gens:
        if not (t[t[:, a]] == t[:, t[a]]).all():
            raise GroupError("table is not associative")
    return t


def build_group(spec: GroupSpec, cap: int = DEFAULT_CAP, label: Optional[str] = None) -> Group:
    """Build a :class:`Group` from a :class:`GroupSpec`."""
    if spec.kind == "named":
        degree, gens = _named(spec.name)
        return _perm_group(label or spec.name, degree, gens, cap)
    if spec.kind == "perm":
        return _perm_group(label or f"perm{spec.degree}", spec.degree, spec.generators, cap)
    if len(spec.table) > cap:
        raise GroupError(f"table of size {len(spec.table)} exceeds cap of {cap}")
    t = _check_table(spec.table)
    table = tuple(tuple(int(v) for v in row) for row in t)
    return Group(label or f"table{len(table)}", table, tuple(f"g{i}" for i in range(len(table))))


def parse_group_text(text: str) -> GroupSpec:
    """Parse the group file format (``named``/``perm``/``table`` header)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GroupError("empty group description")
    head = lines[0].split()
    kind = head[0]
    if kind == "named" and len(head) == 2:
        return GroupSpec("named", name=head[1])
    if kind == "perm" and len(head) == 2:
        return GroupSpec("perm", degree=int(head[1]), generators=tuple(lines[1:]))
    if kind == "table" and len(head) == 2:
        m = int(head[1])
        rows = [tuple(int(v) for v in ln.replace(",", " ").split()) for ln in lines[1:]]
        if len(rows) != m or any(len(r) != m for r in rows):
            raise GroupError(f"table header says {m} but body is not {m}x{m}")
        return GroupSpec("table", table=tuple(rows))
    raise GroupError(f"bad group header {lines[0]!r}")


def load_group(source: str, cap: int = DEFAULT_CAP) -> Group:
    """Resolve ``source`` as a group file path or a built-in group name.

    Built-ins are shared instances: elements built over ``load_group("S3")``
    in different places live in the same group.
    """
    path = Path(source)
    if path.is_file():
        return build_group(parse_group_text(path.read_text(encoding="utf-8")), cap, label=source)
    return _builtin(source, cap)


@lru_cache(maxsize=None)
def _builtin(name: str, cap: int) -> Group:
    return build_group(GroupSpec("named", name=name), cap)


def conjugacy_classes(G: Group) -> ClassTable:
    return G.class_table


def element_power(G: Group, g: int, e: int) -> int:
    return G.power(g, e)


def exponent(G: Group) -> int:
    return G.exponent


def power_image(G: Group, e: int) -> frozenset[int]:
    """Classes containing an ``e``-th power."""
    if e < 1:
        raise ValueError("exponent must be positive")
    cls = G.class_table.class_of
    return frozenset(cls[y] for y in G.power_row(e))


def power_class_map(G: Group, e: int) -> dict[int, int]:
    if e < 1:
        raise ValueError("exponent must be positive")
    ct = G.class_table
    row = G.power_row(e)
    return {i: ct.class_of[row[c.rep]] for i, c in enumerate(ct.classes)}


def subgroup_closure(G: Group, gens: Sequence[int]) -> frozenset[int]:
    span = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.table[x][g]
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(span)


def all_subgroups(G: Group) -> list[frozenset[int]]:
    """Every subgroup, sorted by (order, sorted members)."""
    cyclic = {subgroup_closure(G, [g]) for g in range(G.order)}
    subs = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        nxt = set()
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                J = subgroup_closure(G, sorted(H | C))
                if J not in subs:
                    subs.add(J)
                    nxt.add(J)
        frontier = nxt
    return sorted(subs, key=lambda H: (len(H), sorted(H)))
