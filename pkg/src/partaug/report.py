"""JSON and aligned-TSV rendering of reports.

JSON is canonical; TSV is a lossy human view.
"""

from __future__ import annotations

import json
from typing import Any, Sequence


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def tsv_table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(h) for h in header]] + [[_cell(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["\t".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def _cell(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "PASS" if v else "FAIL"
    return str(v)


def verification_tsv(report: dict, names: Sequence[str] = ()) -> str:
    params = " ".join(f"{k}={v}" for k, v in report["params"].items())
    head = f"# {report['relation']} on {report['group']} ({params}): {'PASS' if report['pass'] else 'FAIL'}\n"
    rows = []
    for r in report["rows"]:
        rep = names[r["class_rep"]] if names else r["class_rep"]
        rows.append((rep, r["lhs"], r["rhs"], r["modulus"], r["pass"]))
    return head + tsv_table(("class_rep", "lhs", "rhs", "modulus", "verdict"), rows)


def group_info_tsv(info: dict) -> str:
    head = f"# {info['group']}: order {info['order']}, exponent {info['exponent']}\n"
    rows = [(c["id"], c["rep_name"], c["size"], c["element_order"]) for c in info["classes"]]
    return head + tsv_table(("class", "representative", "size", "order"), rows)


def elements_tsv(listing: dict) -> str:
    rows = [(e["index"], e["name"], e["order"], e["class"]) for e in listing["elements"]]
    return tsv_table(("index", "name", "order", "class"), rows)


def random_test_tsv(summary: dict) -> str:
    head = f"# random-test {summary['relation']} on {summary['group']}: {'PASS' if summary['pass'] else 'FAIL'}\n"
    rows = [(r["trial"], r["q"], r["p"], r["pass"]) for r in summary["rows"]]
    return head + tsv_table(("trial", "q", "p", "verdict"), rows)


def sieve_tsv(result: dict) -> str:
    head = (
        f"# sieve on {result['group']}, order {result['order']}: "
        f"{len(result['admissible'])} admissible, witnesses {result['witnesses']}\n"
    )
    rows = [(i, " ".join(str(v) for v in vec)) for i, vec in enumerate(result["admissible"])]
    return head + tsv_table(("#", "nu per class"), rows)


def probes_tsv(summary: dict) -> str:
    head = f"# trace probe on {summary['group']}: {'PASS' if summary['pass'] else 'FAIL'}\n"
    rows = [(pr["label"], pr["unit_order"], pr["p"], " ".join(map(str, pr["traces"])), pr["holds"])
            for pr in summary["probes"]]
    return head + tsv_table(("unit", "order", "p", "traces", "verdict"), rows)
