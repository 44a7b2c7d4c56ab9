"""Figures written next to command-line reports (matplotlib, Agg backend)."""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .report import Report  # noqa: E402

# fixed metadata keeps PNG output byte-stable between runs
_META = {"Software": None}


def _save(fig, path: str) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fig.savefig(path, dpi=100, metadata=_META)
    plt.close(fig)
    return path


def plot_report(report: Report, path: str) -> str:
    """Stacked pass/fail counts per check id."""
    counts = report.counts_by_check()
    names = list(counts)
    passed = [counts[n][0] for n in names]
    failed = [counts[n][1] for n in names]
    fig, ax = plt.subplots(figsize=(7, 0.4 * max(len(names), 1) + 1.2))
    y = range(len(names))
    ax.barh(y, passed, color="#4c9a5f", label="pass")
    ax.barh(y, failed, left=passed, color="#c0392b", label="fail")
    ax.set_yticks(list(y))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("entries")
    ax.set_title(f"{report.suite or 'report'}: {report.passes} passed, {report.failures} failed", fontsize=10)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    return _save(fig, path)


def plot_theory(S, path: str) -> str:
    """Superclass sizes and supercharacter degrees side by side."""
    sizes = sorted(S.class_sizes)
    degrees = sorted(S.degrees)
    fig, (a, b) = plt.subplots(1, 2, figsize=(8, 3))
    a.bar(range(len(sizes)), sizes, color="#3b6ea5")
    a.set_title("superclass sizes", fontsize=10)
    a.set_xlabel("superclass (sorted)")
    b.bar(range(len(degrees)), degrees, color="#a55b3b")
    b.set_title("supercharacter degrees", fontsize=10)
    b.set_xlabel("supercharacter (sorted)")
    fig.suptitle(f"|G| = {S.group.order}, {len(S)} superclasses", fontsize=10)
    fig.tight_layout()
    return _save(fig, path)


def plot_series(orders: dict[str, Sequence[int]], path: str) -> str:
    """Orders of the terms of one or more series, on a log scale."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for name, seq in sorted(orders.items()):
        ax.plot(range(len(seq)), seq, marker="o", label=name)
    ax.set_yscale("log", base=2)
    ax.set_xlabel("term")
    ax.set_ylabel("order")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, path)


def plot_lattice(theories: Sequence, path: str) -> str:
    """Hasse diagram of the refinement order, finest theories at the bottom."""
    from .theory import refines

    n = len(theories)
    level = [len(S) for S in theories]
    rows: dict[int, list[int]] = {}
    for i, k in enumerate(level):
        rows.setdefault(k, []).append(i)
    pos = {}
    for r, k in enumerate(sorted(rows, reverse=True)):
        members = rows[k]
        for j, i in enumerate(members):
            pos[i] = ((j + 1) / (len(members) + 1), r)
    below = [[j for j in range(n) if j != i and refines(theories[j], theories[i])] for i in range(n)]
    fig, ax = plt.subplots(figsize=(6, 1 + 0.8 * len(rows)))
    for i in range(n):
        for j in below[i]:
            # draw only covering relations
            if not any(j in below[k] for k in below[i]):
                (x0, y0), (x1, y1) = pos[j], pos[i]
                ax.plot([x0, x1], [y0, y1], color="#999999", lw=0.8, zorder=1)
    xs = [pos[i][0] for i in range(n)]
    ys = [pos[i][1] for i in range(n)]
    ax.scatter(xs, ys, s=30, color="#3b6ea5", zorder=2)
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels([str(k) for k in sorted(rows, reverse=True)], fontsize=8)
    ax.set_ylabel("number of superclasses")
    ax.set_xticks([])
    ax.set_title(f"{n} supercharacter theories", fontsize=10)
    fig.tight_layout()
    return _save(fig, path)
