"""Random inputs with known-good structure for extension tests."""

from __future__ import annotations

import random

from arborite.coloring import TreeColoring, equitable_size_bounds
from arborite.graph import Graph, build_graph


def lemma1_triple(rng: random.Random, t: int | None = None, rest: int | None = None) -> tuple[Graph, list[int], TreeColoring]:
    """(G, S, base): base is an equitable t-tree-coloring of G - S and S meets the bound with
    x_i having as many as 2i - 1 outside neighbours (often exactly that many)."""
    t = t or rng.randint(1, 7)
    rest = rest if rest is not None else rng.randint(0, 4 * t)
    _, _, sizes = equitable_size_bounds(rest, t)
    colors = [c for c, k in enumerate(sizes, start=1) for _ in range(k)]
    rng.shuffle(colors)
    n = rest + t
    S = list(range(rest, n))
    rng.shuffle(S)
    edges: set[tuple[int, int]] = set()
    parent = list(range(rest))

    def root(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    # edges of G - S: free across classes, inside a class only between different trees
    for _ in range(rng.randint(0, 3 * rest + 1)):
        if rest < 2:
            break
        u, v = rng.sample(range(rest), 2)
        if colors[u] == colors[v]:
            ru, rv = root(u), root(v)
            if ru == rv:
                continue
            parent[ru] = rv
        edges.add((min(u, v), max(u, v)))
    for i, x in enumerate(S, start=1):
        cap = min(2 * i - 1, rest)
        k = cap if rng.random() < 0.6 else rng.randint(0, cap)
        for w in rng.sample(range(rest), k):
            edges.add((w, x))
    for a in range(t):
        for b in range(a + 1, t):
            if rng.random() < 0.5:
                edges.add((min(S[a], S[b]), max(S[a], S[b])))
    base = TreeColoring(t, {v: colors[v] for v in range(rest)})
    return build_graph(n, edges), S, base
