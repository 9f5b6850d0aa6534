"""Short-cycle enumeration and the two hypothesis classes.

Class A: every cycle of length at most 4 is vertex-disjoint from every other.
Class B: no triangles, and no two distinct 4-cycles share an edge.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .graph import Graph


@dataclass(frozen=True)
class ShortCycle:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def edges(self) -> set[tuple[int, int]]:
        vs = self.vertices
        return {tuple(sorted((vs[i], vs[(i + 1) % len(vs)]))) for i in range(len(vs))}


@dataclass(frozen=True)
class ClassReport:
    member: bool
    certificate: tuple | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.member


def girth(G: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests (BFS from every vertex)."""
    best = math.inf
    for s in range(G.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for w in G.adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def _canonical(cycle: list[int]) -> tuple[int, ...]:
    k = len(cycle)
    i = cycle.index(min(cycle))
    fwd = tuple(cycle[(i + j) % k] for j in range(k))
    bwd = tuple(cycle[(i - j) % k] for j in range(k))
    return min(fwd, bwd)


def short_cycles(G: Graph, max_length: int = 4) -> list[ShortCycle]:
    """All distinct cycles of length 3..max_length, each once, sorted by (length, vertices)."""
    if max_length not in (3, 4):
        raise ValueError("max_length must be 3 or 4")
    found: set[tuple[int, ...]] = set()
    adj = G.adj
    # walk u-a-b(-c) back to u, with u the smallest vertex on the cycle
    for u in range(G.n):
        for a in adj[u]:
            if a < u:
                continue
            for b in adj[a]:
                if b <= u:
                    continue
                if b in adj[u]:
                    found.add(_canonical([u, a, b]))
                if max_length == 4:
                    for c in adj[b]:
                        if c > u and c != a and c in adj[u]:
                            found.add(_canonical([u, a, b, c]))
    return [ShortCycle(c) for c in sorted(found, key=lambda c: (len(c), c))]


def is_class_A(G: Graph) -> ClassReport:
    """All cycles of length at most 4 pairwise vertex-disjoint; certificate is a clashing pair."""
    owner: dict[int, ShortCycle] = {}
    for c in short_cycles(G, 4):
        for v in c.vertices:
            if v in owner:
                return ClassReport(False, (owner[v], c), f"short cycles share vertex {v}")
            owner[v] = c
    return ClassReport(True)


def is_class_B(G: Graph) -> ClassReport:
    """Girth at least 4 and no two 4-cycles sharing an edge; certificate is a triangle or a pair."""
    cycles = short_cycles(G, 4)
    for c in cycles:
        if c.length == 3:
            return ClassReport(False, (c,), "graph contains a triangle")
    owner: dict[tuple[int, int], ShortCycle] = {}
    for c in cycles:
        for e in sorted(c.edges()):
            if e in owner:
                return ClassReport(False, (owner[e], c), f"4-cycles share edge {e}")
            owner[e] = c
    return ClassReport(True)

