import itertools
import math

import pytest

from partaug.relations import NotCoprimeError, PreconditionError, ResidueError
from partaug.ringcore import GroupRingElement as E, pa_vector
from partaug.sieve import (
    build_constraints,
    certify,
    default_instances,
    enumerate_admissible,
    make_problem,
    run_sieve,
)


def box_filter(problem):
    """Every vector in the bound box that certify accepts."""
    bounds = problem.bounds
    cons = build_constraints(problem)
    out = []
    for vec in itertools.product(*(range(-b, b + 1) for b in bounds)):
        if all(ok for _, ok in certify(vec, problem, cons)):
            out.append(vec)
    return out


def test_default_instances(S3):
    assert default_instances(S3, 2) == tuple((n, k) for k in (1, 5) for n in (1, 3, 5, 7))
    assert all(k % 3 == 1 for _, k in default_instances(S3, 3))


def test_problem_validation(S3):
    with pytest.raises(NotCoprimeError):
        make_problem(S3, 2, [(1, 3)])
    with pytest.raises(ResidueError):
        make_problem(S3, 2, [(2, 1)])


def test_tautologies_for_n_k_one(groups):
    G = groups("A4")
    cons = build_constraints(make_problem(G, 3, [(1, 1)]))
    assert not [c for c in cons if c.kind == "eq1_relation"]


def test_s3_order_two(S3):
    prob = make_problem(S3, 2)
    adm = enumerate_admissible(prob)
    assert set(adm) <= {(0, 1, 0), (0, 0, 1)}
    assert (0, 1, 0) in adm


def test_s3_order_three(S3):
    assert (0, 0, 1) in enumerate_admissible(make_problem(S3, 3))


@pytest.mark.parametrize("name", ["C1", "S3", "D4", "A4"])
def test_order_one(groups, name):
    G = groups(name)
    assert enumerate_admissible(make_problem(G, 1)) == [(1,) + (0,) * (len(G.class_table) - 1)]


def test_s3_coefficients_order_two(S3):
    # (n, k) = (3, 1): powers by 1 fix classes, so every relation is trivial
    cons = build_constraints(make_problem(S3, 2, [(3, 1)]))
    assert not [c for c in cons if c.kind == "eq1_relation"]


def test_power_relations_prune_c10(groups):
    # k = 3 permutes the generators of C10 while fixing order-2 units' hypotheses
    G = groups("C10")
    adm = enumerate_admissible(make_problem(G, 2))
    loose = enumerate_admissible(make_problem(G, 2, [(1, 1)]))
    assert len(adm) == 3 and len(loose) == 2907
    assert set(adm) < set(loose)
    assert pa_vector(E.of(G, G.power(1, 5))).values in adm


def test_certify_reports(S3):
    prob = make_problem(S3, 2)
    assert all(ok for _, ok in certify((0, 1, 0), prob))
    bad = dict(certify((1, 0, 0), prob))
    assert bad["berman_higman"] is False
    bad = dict(certify((0, 1, -1), prob))
    assert bad["augmentation"] is False


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "C6", "S4"])
def test_enumerator_agrees_with_certify(groups, name):
    G = groups(name)
    for o in sorted(set(G.element_orders)):
        prob = make_problem(G, o)
        assert enumerate_admissible(prob) == box_filter(prob)


@pytest.mark.parametrize("name", ["S3", "S4", "A4", "D4", "Q8", "C6", "A5"])
def test_soundness(groups, name):
    G = groups(name)
    for o in sorted(set(G.element_orders)):
        adm = set(enumerate_admissible(make_problem(G, o)))
        for g in range(G.order):
            if G.element_orders[g] == o:
                assert pa_vector(E.of(G, g)).values in adm


@pytest.mark.parametrize("name", ["C6", "A4", "C10"])
def test_more_instances_never_enlarge(groups, name):
    G = groups(name)
    for o in sorted(set(G.element_orders)):
        inst = default_instances(G, o)
        sets = [set(enumerate_admissible(make_problem(G, o, inst[:i]))) for i in range(len(inst) + 1)]
        for a, b in zip(sets, sets[1:]):
            assert b <= a


def test_n_k_one_equals_base_constraints(groups):
    G = groups("A4")
    prob = make_problem(G, 3, [(1, 1)])
    base = [v for v in itertools.product(*(range(-b, b + 1) for b in prob.bounds))
            if v[0] == 0 and sum(v) == 1 and all(x * x <= c.size for x, c in zip(v, G.class_table))]
    assert enumerate_admissible(prob) == base


def test_cap(groups):
    with pytest.raises(PreconditionError):
        enumerate_admissible(make_problem(groups("A5"), 2, cap=100))


def test_run_sieve_json(S3):
    res = run_sieve(make_problem(S3, 2)).to_json()
    assert res["group"] == "S3" and res["order"] == 2
    assert res["witnesses"] == [1] and res["sound"]
    assert [0, 1, 0] in res["admissible"]
