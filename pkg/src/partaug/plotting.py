"""Figures written next to the delimited reports."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

PASS_COLOR = "#3b7dd8"
FAIL_COLOR = "#d8493b"


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # fixed metadata keeps repeated runs byte-identical for png
    fig.savefig(path, dpi=120, bbox_inches="tight", metadata={"Software": None} if path.suffix == ".png" else None)
    plt.close(fig)
    return path


def plot_verification(report: dict, path, names=()) -> Path:
    """Grouped bars of both sides per class; failing classes in red."""
    rows = report["rows"]
    labels = [names[r["class_rep"]] if names else str(r["class_rep"]) for r in rows]
    x = np.arange(len(rows))
    fig, ax = plt.subplots(figsize=(max(4, 0.9 * len(rows) + 2), 3.2))
    lhs = [float(r["lhs"]) for r in rows]
    rhs = [float(r["rhs"]) for r in rows]
    ax.bar(x - 0.2, lhs, 0.4, label="lhs", color="#888888")
    colors = [PASS_COLOR if r["pass"] else FAIL_COLOR for r in rows]
    ax.bar(x + 0.2, rhs, 0.4, label="rhs", color=colors)
    ax.axhline(0, color="black", lw=0.6)
    ax.set_xticks(x)
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("partial augmentation")
    mode = report["params"].get("mode", "")
    ax.set_title(f"{report['relation']} on {report['group']} ({mode})", fontsize=10)
    ax.legend(frameon=False, fontsize=8)
    return _save(fig, path)


def plot_random_test(summary: dict, path) -> Path:
    """Pass rate per (q, p) cell."""
    cells = defaultdict(lambda: [0, 0])
    for r in summary["rows"]:
        c = cells[(r["q"], r["p"])]
        c[0] += r["pass"]
        c[1] += 1
    qs = sorted({q for q, _ in cells})
    ps = sorted({p for _, p in cells})
    grid = np.full((len(ps), len(qs)), np.nan)
    for (q, p), (ok, tot) in cells.items():
        grid[ps.index(p), qs.index(q)] = ok / tot
    fig, ax = plt.subplots(figsize=(0.5 * len(qs) + 2, 0.5 * len(ps) + 1.5))
    im = ax.imshow(grid, vmin=0, vmax=1, cmap="RdYlBu", aspect="auto")
    ax.set_xticks(range(len(qs)))
    ax.set_xticklabels(qs)
    ax.set_yticks(range(len(ps)))
    ax.set_yticklabels(ps)
    ax.set_xlabel("q")
    ax.set_ylabel("p")
    ax.set_title(f"{summary['relation']} pass rate on {summary['group']}", fontsize=10)
    fig.colorbar(im, ax=ax, fraction=0.05)
    return _save(fig, path)


def plot_sieve(result: dict, path, names) -> Path:
    """Admissible vectors as a signed heat map, one row per vector."""
    k = len(names)
    adm = np.array(result["admissible"], dtype=float).reshape(-1, k)
    fig, ax = plt.subplots(figsize=(0.7 * k + 2, min(12, 0.18 * max(len(adm), 1) + 1.5)))
    if len(adm):
        lim = max(1.0, float(np.abs(adm).max()))
        im = ax.imshow(adm, cmap="coolwarm", vmin=-lim, vmax=lim, aspect="auto", interpolation="nearest")
        fig.colorbar(im, ax=ax, fraction=0.05)
    else:
        ax.text(0.5, 0.5, "no admissible vectors", ha="center", va="center", transform=ax.transAxes)
    ax.set_xticks(range(k))
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("admissible vector")
    ax.set_title(f"sieve {result['group']}, order {result['order']}: {len(adm)} vectors", fontsize=10)
    return _save(fig, path)
