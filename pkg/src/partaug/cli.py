"""Command-line entry point.

Exit status: 0 when every row passes, 1 on any mathematical FAIL (or a trace
pattern that deviates), 2 on usage or precondition errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import plotting, report
from .groups import DEFAULT_CAP, Group, GroupError, load_group, subgroup_closure
from .numth import factorize
from .relations import (
    PreconditionError,
    probe_trace_conjecture,
    verify_corollary1,
    verify_eq9,
    verify_theorem1,
    verify_theorem2,
)
from .ringcore import (
    GroupRingElement,
    NotAUnitError,
    bicyclic_unit,
    conjugate,
    element_to_json,
    load_element,
    sample_units,
    subgroup_sum,
    torsion_order,
)
from .sieve import make_problem, run_sieve

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _resolve(G: Group, token: str) -> int:
    token = token.strip()
    if token.lstrip("-").isdigit():
        g = int(token)
        if not 0 <= g < G.order:
            raise GroupError(f"element index {g} outside 0..{G.order - 1}")
        return g
    return G.index_of(token)


def _emit(args, payload: dict, tsv: str) -> None:
    sys.stdout.write(report.dumps(payload) if args.format == "json" else tsv)


def _class_names(G: Group) -> list[str]:
    return [G.names[r] for r in G.class_table.reps]


def _group_from_args(args) -> Group | None:
    if args.group is None:
        return None
    return load_group(args.group, cap=args.group_cap)


# group info / elements


def cmd_group_info(args) -> int:
    G = _group_from_args(args)
    ct = G.class_table
    info = {
        "group": G.label,
        "order": G.order,
        "exponent": G.exponent,
        "classes": [
            {"id": i, "rep": c.rep, "rep_name": G.names[c.rep], "size": c.size,
             "element_order": G.element_orders[c.rep]}
            for i, c in enumerate(ct.classes)
        ],
    }
    _emit(args, info, report.group_info_tsv(info))
    return EXIT_OK


def cmd_group_elements(args) -> int:
    G = _group_from_args(args)
    listing = {
        "group": G.label,
        "elements": [
            {"index": g, "name": G.names[g], "order": G.element_orders[g], "class": G.class_table.class_of[g]}
            for g in range(G.order)
        ],
    }
    _emit(args, listing, report.elements_tsv(listing))
    return EXIT_OK


# verify


def _element_from_args(args, G: Group | None) -> tuple[Group, GroupRingElement, int | None]:
    """Return (group, element, beta-or-None) from the element source flags."""
    beta = None
    if args.element:
        u = load_element(args.element, G)
        G = u.group
    else:
        if G is None:
            raise UsageError("--group is required unless --element names the group")
        if args.subgroup:
            H = subgroup_closure(G, [_resolve(G, t) for t in args.subgroup.split(",")])
            u, beta = subgroup_sum(G, H)
        elif args.elem is not None:
            u = GroupRingElement.of(G, _resolve(G, args.elem))
        else:
            raise UsageError("give --element, --elem or --subgroup")
    if args.conj:
        a, h = (_resolve(G, t) for t in args.conj.split(","))
        u = conjugate(u, bicyclic_unit(G, a, h), bicyclic_unit(G, a, h, inverse=True))
    return G, u, beta


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))


def cmd_verify(args) -> int:
    G, u, beta = _element_from_args(args, _group_from_args(args))
    rel = args.relation
    if rel == "thm2":
        _need(args, "q", "p")
        rep = verify_theorem2(G, u, args.q, args.p)
    elif rel == "thm1":
        _need(args, "n", "k")
        rep = verify_theorem1(G, u, args.n, args.k)
    elif rel == "eq9":
        _need(args, "n", "k")
        rep = verify_eq9(G, u, args.n, args.k)
    else:
        _need(args, "q", "p")
        if args.beta is not None:
            beta = args.beta
        if beta is None:
            raise UsageError("cor1 needs --beta (or --subgroup, which sets it to |H|)")
        rep = verify_corollary1(G, u, beta, args.q, args.p, args.mode)
    payload = rep.to_json()
    payload["element"] = element_to_json(u)["coeffs"]
    _emit(args, payload, report.verification_tsv(payload, G.names))
    if args.figure:
        plotting.plot_verification(payload, args.figure, G.names)
    return EXIT_OK if rep.passed else EXIT_FAIL


# random-test


def random_element(G: Group, rng: random.Random, coeff_bound: int) -> GroupRingElement:
    """Support of uniform size in ``1..|G|``, coefficients in ``[-B, B]``."""
    size = rng.randint(1, G.order)
    support = sorted(rng.sample(range(G.order), size))
    return GroupRingElement(G, {g: rng.randint(-coeff_bound, coeff_bound) for g in support})


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"{seed}/{trial}")


def cmd_random_test(args) -> int:
    G = _group_from_args(args)
    if G is None:
        raise UsageError("--group is required")
    if args.trials < 0 or args.coeff_bound < 0 or args.q_max < 1:
        raise UsageError("trials and coeff-bound must be >= 0, q-max >= 1")
    rows, failures = [], []
    for trial in range(args.trials):
        u = random_element(G, trial_rng(args.seed, trial), args.coeff_bound)
        for q in range(1, args.q_max + 1):
            for p in args.primes:
                rep = verify_theorem2(G, u, q, p)
                rows.append({"trial": trial, "q": q, "p": p, "pass": rep.passed})
                if not rep.passed:
                    failures.append({"trial": trial, "element": element_to_json(u)["coeffs"], "report": rep.to_json()})
    summary = {
        "group": G.label,
        "relation": "THM2_EQ2",
        "params": {"trials": args.trials, "coeff_bound": args.coeff_bound, "q_max": args.q_max,
                   "primes": list(args.primes), "seed": args.seed},
        "rows": rows,
        "failures": failures,
        "pass": not failures,
    }
    _emit(args, summary, report.random_test_tsv(summary))
    if args.figure:
        plotting.plot_random_test(summary, args.figure)
    return EXIT_OK if not failures else EXIT_FAIL


# probe traces


def _prime_power(o: int):
    fac = factorize(o) if o > 1 else ()
    return fac[0][0] if len(fac) == 1 else None


def cmd_probe_traces(args) -> int:
    G = _group_from_args(args)
    probes = []
    if args.element or args.elem is not None:
        G, u, _ = _element_from_args(args, G)
        p = args.p
        if p is None:
            p = _prime_power(torsion_order(u) or 0)
            if p is None:
                raise PreconditionError("unit order is not a prime power; pass --p to override")
        pr = probe_trace_conjecture(G, u, p)
        probes.append(dict(pr.to_json(), label="element"))
    else:
        if G is None:
            raise UsageError("--group is required")
        for label, u in sample_units(G):
            p = _prime_power(torsion_order(u))
            if p is None:
                continue
            probes.append(dict(probe_trace_conjecture(G, u, p).to_json(), label=label))
    ok = all(pr["holds"] for pr in probes)
    summary = {"group": G.label, "probes": probes, "pass": ok}
    _emit(args, summary, report.probes_tsv(summary))
    for pr in probes:
        if not pr["holds"]:
            print(f"trace pattern deviates for {pr['label']}: traces {pr['traces']}, element {pr['element']}",
                  file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# sieve


def _pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for tok in text.split(","):
        try:
            n, k = tok.split(":")
            out.append((int(n), int(k)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected n:k pairs, got {tok!r}") from None
    return out


def cmd_sieve(args) -> int:
    G = _group_from_args(args)
    if G is None:
        raise UsageError("--group is required")
    problem = make_problem(G, args.order, args.instances, cap=args.cap)
    result = run_sieve(problem)
    payload = result.to_json()
    _emit(args, payload, report.sieve_tsv(payload))
    if args.figure:
        plotting.plot_sieve(payload, args.figure, _class_names(G))
    return EXIT_OK if result.sound else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="built-in name (C<n>, S3, S4, A4, A5, D4, Q8) or group file")
    common.add_argument("--group-cap", type=int, default=DEFAULT_CAP, help="maximum group order")
    common.add_argument("--format", choices=("json", "tsv"), default="json")

    elem = argparse.ArgumentParser(add_help=False)
    elem.add_argument("--element", help="element JSON file")
    elem.add_argument("--elem", help="trivial unit: element index or cycle-notation name")
    elem.add_argument("--subgroup", help="generators of H; the element is the sum over H")
    elem.add_argument("--conj", help="A,H: conjugate by the bicyclic unit 1 + (1-H) A Hhat")

    fig = argparse.ArgumentParser(add_help=False)
    fig.add_argument("--figure", type=Path, help="also render a figure to this path")

    parser = argparse.ArgumentParser(prog="partaug", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    grp = sub.add_parser("group", help="inspect a group").add_subparsers(dest="action", required=True)
    grp.add_parser("info", parents=[common]).set_defaults(func=cmd_group_info)
    grp.add_parser("elements", parents=[common]).set_defaults(func=cmd_group_elements)

    ver = sub.add_parser("verify", parents=[common, elem, fig], help="check one relation on one element")
    ver.add_argument("relation", choices=("thm2", "thm1", "eq9", "cor1"))
    ver.add_argument("--q", type=int)
    ver.add_argument("--p", type=int)
    ver.add_argument("--n", type=int)
    ver.add_argument("--k", type=int)
    ver.add_argument("--beta", type=int)
    ver.add_argument("--mode", choices=("congruence", "equality"), default="congruence")
    ver.set_defaults(func=cmd_verify)

    rt = sub.add_parser("random-test", parents=[common, fig], help="seeded batch of random elements")
    rt.add_argument("relation", choices=("thm2",))
    rt.add_argument("--trials", type=int, default=200)
    rt.add_argument("--coeff-bound", type=int, default=3)
    rt.add_argument("--q-max", type=int, default=12)
    rt.add_argument("--primes", type=_ints, default=[2, 3, 5])
    rt.add_argument("--seed", type=int, required=True)
    rt.set_defaults(func=cmd_random_test)

    pr = sub.add_parser("probe", parents=[common, elem], help="conjecture probes")
    pr.add_argument("what", choices=("traces",))
    pr.add_argument("--p", type=int)
    pr.set_defaults(func=cmd_probe_traces)

    sv = sub.add_parser("sieve", parents=[common, fig], help="admissible partial augmentations for a unit order")
    sv.add_argument("--order", type=int, required=True)
    sv.add_argument("--instances", type=_pairs, help="n:k pairs; default derived from the order")
    sv.add_argument("--cap", type=int, default=10**7)
    sv.set_defaults(func=cmd_sieve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GroupError, PreconditionError, NotAUnitError, ValueError, OSError) as exc:
        print(f"partaug: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())
