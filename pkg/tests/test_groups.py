import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from partaug.groups import (
    GroupError,
    GroupSpec,
    all_subgroups,
    build_group,
    conjugacy_classes,
    cycle_notation,
    element_power,
    exponent,
    load_group,
    parse_cycles,
    parse_group_text,
    power_class_map,
    power_image,
)


def compose(a, b):
    # apply a, then b
    return tuple(b[a[i]] for i in range(len(a)))


def brute_closure(gens, degree):
    elems = {tuple(range(degree))}
    while True:
        new = {compose(x, g) for x in elems for g in gens} | elems
        if new == elems:
            return elems
        elems = new


def brute_class_sizes(G):
    """Conjugation on the permutations themselves, not on the table."""
    perms = [parse_cycles(n, _degree(G)) for n in G.names]
    inv = lambda p: tuple(sorted(range(len(p)), key=lambda i: p[i]))
    seen, sizes = set(), []
    for x in perms:
        if x in seen:
            continue
        cls = {compose(compose(inv(g), x), g) for g in perms}
        seen |= cls
        sizes.append(len(cls))
    return sizes


def _degree(G):
    return max((max(map(int, n.replace("(", " ").replace(")", " ").split()), default=1) for n in G.names), default=1)


def test_trivial_group():
    G = load_group("C1")
    assert G.order == 1 and exponent(G) == 1
    assert conjugacy_classes(G).sizes == (1,)


def test_s3_from_generators_matches_brute_closure():
    G = build_group(GroupSpec("perm", degree=3, generators=("(1 2)", "(1 2 3)")))
    brute = brute_closure([parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)], 3)
    assert G.order == len(brute) == 6
    orders = []
    for p in brute:
        k, x = 1, p
        while x != (0, 1, 2):
            x, k = compose(x, p), k + 1
        orders.append(k)
    assert exponent(G) == math.lcm(*orders) == 6


def test_q8_is_quaternion():
    G = load_group("Q8")
    assert G.order == 8 and exponent(G) == 4
    # Q8 has a unique involution, D4 has five
    assert G.element_orders.count(2) == 1
    assert load_group("D4").element_orders.count(2) == 5
    assert sorted(conjugacy_classes(G).sizes) == [1, 1, 2, 2, 2]


def test_bfs_indexing_is_deterministic():
    spec = GroupSpec("perm", degree=4, generators=("(1 2 3 4)", "(1 2)"))
    a, b = build_group(spec), build_group(spec)
    assert a.names == b.names and a.table == b.table
    assert a.names[0] == "()"
    # breadth-first: generators come right after the identity
    assert a.names[1:3] == ("(1 2 3 4)", "(1 2)")


@pytest.mark.parametrize("name", ["C4", "C6", "S3", "S4", "A4", "A5", "D4", "Q8"])
def test_class_sizes_against_brute_conjugation(groups, name):
    G = groups(name)
    ct = conjugacy_classes(G)
    assert sorted(ct.sizes) == sorted(brute_class_sizes(G))
    assert sum(ct.sizes) == G.order
    assert ct.classes[0].members == (0,)
    assert sorted(g for c in ct for g in c.members) == list(range(G.order))
    for c in ct:
        assert c.rep == min(c.members)
    assert list(ct.reps) == sorted(ct.reps)


def test_class_orders_named(groups):
    assert conjugacy_classes(groups("C4")).sizes == (1, 1, 1, 1)
    S3 = groups("S3")
    assert conjugacy_classes(S3).sizes == (1, 3, 2)
    assert [S3.names[r] for r in S3.class_table.reps] == ["()", "(1 2)", "(1 2 3)"]


@pytest.mark.parametrize("name,expected", [("C1", 1), ("S3", 6), ("D4", 4), ("S4", 12), ("A5", 30), ("Q8", 4)])
def test_exponent(groups, name, expected):
    assert exponent(groups(name)) == expected


def test_element_power_examples(S3):
    t = S3.index_of("(1 2)")
    c = S3.index_of("(1 2 3)")
    assert element_power(S3, c, 0) == 0
    assert element_power(S3, t, 2) == 0
    assert element_power(S3, c, 5) == S3.index_of("(1 3 2)") == S3.inv(c)


def test_power_image_examples(groups, S3):
    assert power_image(S3, 1) == frozenset(range(3))
    assert power_image(groups("C2"), 2) == frozenset({0})
    assert power_image(S3, 3) == frozenset({0, 1})


def test_power_class_map_examples(S3):
    assert power_class_map(S3, 1) == {0: 0, 1: 1, 2: 2}
    assert power_class_map(S3, 2) == {0: 0, 1: 0, 2: 2}
    assert power_class_map(S3, 5) == {0: 0, 1: 1, 2: 2}


@pytest.mark.parametrize("name", ["S3", "S4", "A4", "D4", "Q8", "C6"])
def test_power_maps_are_class_functions(groups, name):
    G = groups(name)
    ct = G.class_table
    for e in range(1, 2 * G.exponent + 1):
        image = {ct.class_of[element_power(G, y, e)] for y in range(G.order)}
        assert power_image(G, e) == image
        for c in ct:
            targets = {ct.class_of[element_power(G, x, e)] for x in c.members}
            assert len(targets) == 1
            assert power_class_map(G, e)[ct.class_of[c.rep]] in targets


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["S3", "S4", "A4", "Q8"]), st.integers(0, 23), st.integers(0, 40), st.integers(0, 40))
def test_power_of_power(name, g, e1, e2):
    G = load_group(name)
    g %= G.order
    assert element_power(G, element_power(G, g, e1), e2) == element_power(G, g, e1 * e2)


def test_cycle_notation_round_trip():
    for perm in itertools.permutations(range(4)):
        assert parse_cycles(cycle_notation(perm), 4) == perm


@pytest.mark.parametrize("bad", ["(1 2", "1 2", "(1 5)", "(1 1)", "(a b)", ""])
def test_malformed_cycles(bad):
    with pytest.raises(GroupError):
        parse_cycles(bad, 4)


def test_closure_cap():
    with pytest.raises(GroupError):
        build_group(GroupSpec("named", name="S4"), cap=10)


def test_table_group_relabels_identity():
    # Z/3 with identity at index 2
    rows = ((1, 2, 0), (2, 0, 1), (0, 1, 2))
    G = build_group(GroupSpec("table", table=rows))
    assert G.order == 3 and G.table[0] == (0, 1, 2)
    assert G.exponent == 3


def test_table_group_rejects_non_groups():
    with pytest.raises(GroupError):
        build_group(GroupSpec("table", table=((0, 1), (1, 1))))  # not a Latin square
    with pytest.raises(GroupError):
        build_group(GroupSpec("table", table=((1, 2, 0), (2, 1, 0), (0, 0, 1))))  # column repeats
    # Latin square with identity 0 but not associative (a loop of order 5)
    loop = ((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0))
    with pytest.raises(GroupError, match="associative"):
        build_group(GroupSpec("table", table=loop))


def test_group_file_formats(tmp_path):
    (tmp_path / "a.txt").write_text("# comment\nnamed D4\n")
    (tmp_path / "b.txt").write_text("perm 3\n(1 2)\n# gen 2\n(1 2 3)\n")
    (tmp_path / "c.txt").write_text("table 2\n0 1\n1 0\n")
    assert load_group(str(tmp_path / "a.txt")).order == 8
    assert load_group(str(tmp_path / "b.txt")).class_table.sizes == (1, 3, 2)
    assert load_group(str(tmp_path / "c.txt")).exponent == 2
    with pytest.raises(GroupError):
        parse_group_text("matrix 2\n")


def test_subgroups(groups):
    assert len(all_subgroups(groups("S3"))) == 6
    assert len(all_subgroups(groups("D4"))) == 10
    assert len(all_subgroups(groups("S4"))) == 30
