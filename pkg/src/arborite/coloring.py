"""Equitable tree-colorings: the data model, the verifier and the counting-bound extension."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import Graph, GraphError, find_cycle


class ColoringError(ValueError):
    pass


class PreconditionError(ColoringError):
    """An extension was requested whose hypotheses do not hold.

    ``index`` is the 1-based position in ``S`` that fails, when applicable.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class TreeColoring:
    t: int
    assignment: Mapping[int, int]

    def __post_init__(self):
        if self.t < 1:
            raise ColoringError("a coloring needs at least one color")
        for v, c in self.assignment.items():
            if not 1 <= c <= self.t:
                raise ColoringError(f"vertex {v} has color {c} outside 1..{self.t}")
        object.__setattr__(self, "assignment", dict(self.assignment))

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def classes(self) -> list[list[int]]:
        """Vertex lists per color, index 0 holding color 1."""
        out: list[list[int]] = [[] for _ in range(self.t)]
        for v in sorted(self.assignment):
            out[self.assignment[v] - 1].append(v)
        return out

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes()]

    def relabel(self, labels: Sequence[int]) -> "TreeColoring":
        """Translate a coloring of an induced subgraph back to the parent's labels."""
        return TreeColoring(self.t, {labels[v]: c for v, c in self.assignment.items()})

    def restrict(self, vertices: Iterable[int]) -> "TreeColoring":
        keep = set(vertices)
        return TreeColoring(self.t, {v: c for v, c in self.assignment.items() if v in keep})


@dataclass
class VerificationReport:
    equitable: bool
    forests: bool
    class_sizes: list[int]
    violations: list[tuple[str, tuple]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.equitable and self.forests

    def __bool__(self) -> bool:
        return self.valid


def equitable_size_bounds(n: int, t: int) -> tuple[int, int, list[int]]:
    """``(floor(n/t), ceil(n/t), sizes)`` with the larger classes listed first."""
    if t < 1:
        raise ColoringError("t must be at least 1")
    q, r = divmod(n, t)
    return q, q + (r > 0), [q + 1] * r + [q] * (t - r)


def _check_total(G: Graph, c: TreeColoring) -> None:
    missing = [v for v in range(G.n) if v not in c.assignment]
    if missing:
        raise ColoringError(f"uncolored vertex {missing[0]}")
    extra = [v for v in c.assignment if not 0 <= v < G.n]
    if extra:
        raise ColoringError(f"coloring names vertex {extra[0]} outside the graph")


def verify(G: Graph, c: TreeColoring) -> VerificationReport:
    _check_total(G, c)
    classes = c.classes()
    sizes = [len(k) for k in classes]
    lo, hi, _ = equitable_size_bounds(G.n, c.t)
    violations: list[tuple[str, tuple]] = []
    for color, size in enumerate(sizes, start=1):
        if size > hi:
            violations.append(("oversized", (color, size, hi)))
        elif size < lo:
            violations.append(("undersized", (color, size, lo)))
    forests = True
    for color, members in enumerate(classes, start=1):
        cycle = find_cycle(G, members)
        if cycle is not None:
            forests = False
            violations.append(("cycle", (color, tuple(cycle))))
    equitable = not any(kind != "cycle" for kind, _ in violations)
    return VerificationReport(equitable, forests, sizes, violations)


def distinct_color_base(G: Graph, t: int) -> TreeColoring:
    if G.n > t:
        raise ColoringError(f"{G.n} vertices cannot receive distinct colors from {t}")
    return TreeColoring(t, {v: v + 1 for v in range(G.n)})


def lemma1_bound_failure(adj: Mapping[int, Iterable[int]], S: Sequence[int]) -> int | None:
    """First 1-based index i with |N(x_i) minus S| > 2i - 1, or None when the bound holds."""
    members = set(S)
    for i, x in enumerate(S, start=1):
        outside = sum(1 for w in adj[x] if w not in members)
        if outside > 2 * i - 1:
            return i
    return None


def extend_lemma1(
    adj: Mapping[int, Iterable[int]], S: Sequence[int], base: Mapping[int, int], t: int
) -> dict[int, int]:
    """Color ``S = [x_1..x_t]`` on top of ``base``; labels are those of ``adj``.

    ``x_t`` is colored first. Each ``x_i`` takes the smallest color unused by
    ``x_{i+1}..x_t`` that it sees at most once among its colored neighbours,
    so no class gains a cycle and every class grows by exactly one.
    """
    if len(S) != t or len(set(S)) != t:
        raise PreconditionError(f"S must list {t} distinct vertices")
    bad = lemma1_bound_failure(adj, S)
    if bad is not None:
        raise PreconditionError(f"|N(x_{bad}) \\ S| exceeds {2 * bad - 1}", index=bad)
    colors = dict(base)
    taken: set[int] = set()
    for i in range(t, 0, -1):
        x = S[i - 1]
        seen = Counter(colors[w] for w in adj[x] if w in colors)
        for c in range(1, t + 1):
            if c not in taken and seen[c] <= 1:
                break
        else:  # pragma: no cover - excluded by the counting bound
            raise AssertionError(f"no admissible color for x_{i}; counting bound violated")
        colors[x] = c
        taken.add(c)
    return colors


def lemma1_extend(G: Graph, S: Sequence[int], base: TreeColoring) -> TreeColoring:
    """Extend an equitable ``t``-tree-coloring of ``G - S`` to ``G``.

    ``base`` is keyed by the labels of ``G`` and must cover exactly ``V(G) - S``.
    """
    t = base.t
    members = set(S)
    for x in S:
        if not 0 <= x < G.n:
            raise GraphError(f"vertex {x} outside the graph")
    if set(base.assignment) != set(range(G.n)) - members:
        raise PreconditionError("base must color exactly the vertices outside S")
    H, labels = G.delete(members)
    index = {v: i for i, v in enumerate(labels)}
    report = verify(H, TreeColoring(t, {index[v]: c for v, c in base.assignment.items()}))
    if not report.valid:
        raise PreconditionError(f"base is not an equitable tree-coloring of G - S: {report.violations}")
    return TreeColoring(t, extend_lemma1(G.adj, list(S), base.assignment, t))
