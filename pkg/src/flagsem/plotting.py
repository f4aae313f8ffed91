"""Matplotlib renderings: proof structures and property reports."""
from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .formulas import Dicograph  # noqa: E402

R_COLOR, B_COLOR, HIT_COLOR = "0.35", "tab:blue", "tab:red"


def _layout(n: int) -> list[tuple[float, float]]:
    # clockwise from the top, so occurrence order reads like the formula
    return [(math.sin(2 * math.pi * k / n), math.cos(2 * math.pi * k / n)) for k in range(n)]


def draw_structure(
    d: Dicograph,
    links: Sequence[tuple[int, int]] = (),
    circuit: Sequence[int] | None = None,
    title: str = "",
    path: str | Path | None = None,
):
    """Vertices on a circle: R arcs as arrows, R edges as thin lines, axiom
    links bold.  Links used by ``circuit`` (closed vertex list) are red."""
    n = len(d.labels)
    pos = _layout(max(n, 1))
    hit = set()
    if circuit:
        hit = {frozenset(p) for p in zip(circuit, circuit[1:])}
    fig, ax = plt.subplots(figsize=(4.5, 4.5))

    def color(u, v, default):
        return HIT_COLOR if frozenset((u, v)) in hit else default

    for u, v in sorted(d.arcs):
        ax.annotate(
            "", xy=pos[v], xytext=pos[u],
            arrowprops=dict(arrowstyle="-|>", color=color(u, v, R_COLOR), shrinkA=12, shrinkB=12, lw=1.2),
        )
    for e in sorted(tuple(sorted(e)) for e in d.edges):
        u, v = e
        ax.plot(*zip(pos[u], pos[v]), color=color(u, v, R_COLOR), lw=1.2, ls="--")
    for u, v in links:
        ax.plot(*zip(pos[u], pos[v]), color=color(u, v, B_COLOR), lw=3.0)
    for (x, y), name in zip(pos, d.vertex_names()):
        ax.text(x, y, name, ha="center", va="center", fontsize=11,
                bbox=dict(boxstyle="circle", fc="white", ec="0.2"))
    ax.set_xlim(-1.3, 1.3)
    ax.set_ylim(-1.3, 1.3)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=10)
    return _finish(fig, path)


def draw_report(results, title: str = "", path: str | Path | None = None):
    """Horizontal bars of checked cases per property, coloured by verdict."""
    names = [r.name for r in results]
    cases = [max(r.cases, 1) for r in results]
    colors = ["tab:green" if r.ok else "tab:red" for r in results]
    fig, ax = plt.subplots(figsize=(6, 0.45 * len(results) + 1.2))
    ax.barh(range(len(results)), cases, color=colors)
    ax.set_yticks(range(len(results)), names)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("cases checked")
    for i, r in enumerate(results):
        ax.text(cases[i], i, f" {r.cases}", va="center", fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return _finish(fig, path)


def _finish(fig, path):
    if path is None:
        return fig
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path
