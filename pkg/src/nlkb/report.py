"""Figures for the ``report`` command."""

import math
from collections import Counter

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .drawspec import edge_caption  # noqa: E402
from .triples import BUILDERS  # noqa: E402


def draw_figure(graph, path, title=None):
    """Nodes on a circle; named edges as arrows, unnamed ones as lines."""
    nodes = sorted(graph.nodes, key=lambda n: (n.label, n.symbol))
    k = max(len(nodes), 1)
    pos = {n.symbol: (math.cos(2 * math.pi * i / k + math.pi / 2),
                      math.sin(2 * math.pi * i / k + math.pi / 2))
           for i, n in enumerate(nodes)}
    fig, ax = plt.subplots(figsize=(5, 5))
    seen = Counter()
    for e in graph.edges:
        a, b = e.endpoints
        pair = frozenset(e.endpoints)
        bend = 0.25 * seen[pair]
        seen[pair] += 1
        style = "-|>" if e.directed else "-"
        ax.annotate("", xy=pos[b], xytext=pos[a],
                    arrowprops=dict(arrowstyle=style, shrinkA=18, shrinkB=18,
                                    connectionstyle=f"arc3,rad={bend}", color="0.3"))
        caption = edge_caption(e)
        if caption:
            mx = (pos[a][0] + pos[b][0]) / 2
            my = (pos[a][1] + pos[b][1]) / 2 + 0.08 * seen[pair]
            ax.text(mx, my, caption, ha="center", fontsize=8)
    for n in nodes:
        x, y = pos[n.symbol]
        ax.text(x, y, n.label, ha="center", va="center",
                bbox=dict(boxstyle="circle", fc="white", ec="black"))
    ax.set_xlim(-1.5, 1.5)
    ax.set_ylim(-1.5, 1.5)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def builder_counts(triples):
    counts = Counter(t.builder for t in triples)
    return [(name, counts.get(name, 0)) for name in BUILDERS]


def builder_figure(triples, path, title=None):
    rows = builder_counts(triples)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.barh([r[0] for r in rows][::-1], [r[1] for r in rows][::-1], color="0.5")
    ax.set_xlabel("triples")
    if title:
        ax.set_title(title)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
