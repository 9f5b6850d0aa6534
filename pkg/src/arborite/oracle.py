"""Complete backtracking search for equitable t-tree-colorings.

Vertices are assigned in descending-degree order. Each class is capped at
``ceil(n/t)`` with at most ``n mod t`` classes reaching that cap, which makes
every completed assignment equitable. Acyclicity is maintained with a
union-find over same-colored edges that is rolled back on backtrack, and
color symmetry is broken by opening colors in increasing order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .coloring import TreeColoring, equitable_size_bounds
from .graph import Graph

DEFAULT_BUDGET = 10**8

Status = Literal["yes", "no", "unknown"]


@dataclass
class SearchStats:
    nodes: int = 0
    size_prunes: int = 0
    cycle_prunes: int = 0
    budget: int = DEFAULT_BUDGET

    @property
    def budget_used(self) -> float:
        return self.nodes / self.budget if self.budget else 0.0


@dataclass
class Decision:
    status: Status
    coloring: TreeColoring | None
    stats: SearchStats

    @property
    def yes(self) -> bool:
        return self.status == "yes"

    @property
    def no(self) -> bool:
        return self.status == "no"


class BudgetExhausted(RuntimeError):
    def __init__(self, message: str, stats: SearchStats | None = None):
        super().__init__(message)
        self.stats = stats


class _OutOfBudget(Exception):
    pass


def decide(G: Graph, t: int, budget: int = DEFAULT_BUDGET, symmetry: bool = True) -> Decision:
    if t < 1:
        raise ValueError("t must be at least 1")
    stats = SearchStats(budget=budget)
    n = G.n
    if n <= t:
        return Decision("yes", TreeColoring(t, {v: v + 1 for v in range(n)}), stats)

    _, hi, _ = equitable_size_bounds(n, t)
    wide = n % t  # classes allowed to reach hi; 0 means every class has exactly hi
    order = sorted(range(n), key=lambda v: (-G.degree(v), v))
    adj = [tuple(G.adj[v]) for v in range(n)]

    color = [0] * n
    size = [0] * (t + 1)
    at_cap = 0
    parent = list(range(n))
    rank = [0] * n

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def place(depth: int, opened: int) -> bool:
        nonlocal at_cap
        if depth == n:
            return True
        stats.nodes += 1
        if stats.nodes > budget:
            raise _OutOfBudget
        v = order[depth]
        limit = min(opened + 1, t) if symmetry else t
        candidates = []
        for c in range(1, limit + 1):
            if size[c] == hi or (wide and size[c] == hi - 1 and at_cap == wide):
                stats.size_prunes += 1
                continue
            roots = []
            for w in adj[v]:
                if color[w] == c:
                    roots.append(find(w))
            if len(set(roots)) != len(roots):
                stats.cycle_prunes += 1
                continue
            candidates.append((len(roots), c, roots))
        candidates.sort()
        for _, c, roots in candidates:
            undo = []
            for r in roots:
                a, b = find(v), r
                if rank[a] < rank[b]:
                    a, b = b, a
                parent[b] = a
                bumped = rank[a] == rank[b]
                if bumped:
                    rank[a] += 1
                undo.append((b, a, bumped))
            color[v] = c
            size[c] += 1
            reached = wide and size[c] == hi
            if reached:
                at_cap += 1
            if place(depth + 1, max(opened, c)):
                return True
            if reached:
                at_cap -= 1
            size[c] -= 1
            color[v] = 0
            for b, a, bumped in reversed(undo):
                parent[b] = b
                if bumped:
                    rank[a] -= 1
        return False

    try:
        found = place(0, 0)
    except _OutOfBudget:
        return Decision("unknown", None, stats)
    if found:
        return Decision("yes", TreeColoring(t, {v: color[v] for v in range(n)}), stats)
    return Decision("no", None, stats)


def _require(d: Decision, t: int) -> Decision:
    if d.status == "unknown":
        raise BudgetExhausted(f"search budget exhausted at t={t}", d.stats)
    return d


def a_eq(G: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Least t admitting an equitable t-tree-coloring."""
    for t in range(1, max(G.n, 1) + 1):
        if _require(decide(G, t, budget), t).yes:
            return t
    raise AssertionError("unreachable: t = n always succeeds")  # pragma: no cover


def a_star_eq(G: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Least t such that every t' >= t admits an equitable t'-tree-coloring.

    Scans downward from ``n`` (always yes) and stops at the first no.
    """
    for t in range(G.n, 0, -1):
        if _require(decide(G, t, budget), t).no:
            return t + 1
    return 1
