"""Constructive solver built on reducible configurations.

The solver repeatedly finds a local pattern, deletes a vertex set, solves the
smaller graph with the same number of colors and extends the coloring back,
either through the counting-bound extension (``x_1..x_t`` with
``|N(x_i) - S| <= 2i - 1``) or through one of the hand recolorings for
high-degree hubs surrounded by 2-vertices. When no pattern applies, or a
reduced graph turns out to be uncolorable, the exact search takes over.

Internally everything runs on label-preserving adjacency dicts, so trace
steps name vertices of the original graph.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .coloring import (
    ColoringError,
    TreeColoring,
    extend_lemma1,
    lemma1_bound_failure,
    verify,
)
from .graph import Graph, build_graph, find_cycle
from .oracle import DEFAULT_BUDGET, BudgetExhausted, decide

Adjacency = Mapping[int, "set[int] | frozenset[int]"]

P1 = "P1_2vertex_small_nb"
P2 = "P2_3vertex_pattern"
P5 = "P5_7vertex_two2s"
GENERIC = "GenericLowDegree"

# kind -> (hub degrees, 2-neighbors in the pattern, colors handled by recoloring,
#          2-neighbors placed into S when the counting-bound route is used instead)
STARS: dict[str, tuple[tuple[int, ...], int, tuple[int, ...], int]] = {
    "Star_P6": ((8, 9), 5, (3,), 3),
    "Star_P7": ((10,), 8, (3,), 3),
    "Star_P8": ((11,), 8, (3, 4), 4),
    "Star_P9": ((12, 13), 11, (3, 4), 4),
    "Star_P10": ((14, 15), 14, (3, 4, 5), 5),
}

# (kind, t) -> how many of the pattern's 2-neighbors the recoloring removes
_REMOVED_TWOS = {
    ("Star_P6", 3): 5,
    ("Star_P7", 3): 8,
    ("Star_P8", 3): 8,
    ("Star_P8", 4): 7,
    ("Star_P9", 3): 11,
    ("Star_P9", 4): 11,
    ("Star_P10", 3): 14,
    ("Star_P10", 4): 11,
    ("Star_P10", 5): 14,
}


@dataclass(frozen=True)
class Configuration:
    kind: str
    roles: dict = field(hash=False)
    seeds: dict[int, int] = field(default_factory=dict, hash=False)
    removed: tuple[int, ...] = ()
    recipe: str = "lemma1"

    @property
    def uses_lemma1(self) -> bool:
        return self.recipe == "lemma1"


@dataclass
class TraceStep:
    kind: str
    recipe: str
    removed: tuple[int, ...]
    order: tuple[int, ...] = ()  # x_1..x_t for extension steps
    seeds: dict[int, int] = field(default_factory=dict)
    hub: int | None = None
    twos: tuple[int, ...] = ()
    colors: dict[int, int] = field(default_factory=dict)  # base and oracle steps only
    sizes: tuple[int, ...] = ()

    def to_line(self) -> str:
        parts = [f"kind={self.kind}", f"recipe={self.recipe}", f"removed={_ints(self.removed)}"]
        if self.order:
            parts.append(f"S={_ints(self.order)}")
        if self.seeds:
            parts.append("seeds=" + ",".join(f"{i}:{v}" for i, v in sorted(self.seeds.items())))
        if self.hub is not None:
            parts.append(f"hub={self.hub}")
            parts.append(f"twos={_ints(self.twos)}")
        if self.colors:
            parts.append("colors=" + ",".join(f"{v}:{c}" for v, c in sorted(self.colors.items())))
        parts.append(f"sizes={_ints(self.sizes)}")
        return " ".join(parts)

    @classmethod
    def from_line(cls, line: str) -> "TraceStep":
        fields = dict(tok.split("=", 1) for tok in line.split())
        pairs = lambda s: {int(a): int(b) for a, b in (p.split(":") for p in s.split(",") if p)}
        return cls(
            kind=fields["kind"],
            recipe=fields["recipe"],
            removed=_parse_ints(fields["removed"]),
            order=_parse_ints(fields.get("S", "")),
            seeds=pairs(fields.get("seeds", "")),
            hub=int(fields["hub"]) if "hub" in fields else None,
            twos=_parse_ints(fields.get("twos", "")),
            colors=pairs(fields.get("colors", "")),
            sizes=_parse_ints(fields.get("sizes", "")),
        )


def _ints(xs: Sequence[int]) -> str:
    return ",".join(str(x) for x in xs) or "-"


def _parse_ints(s: str) -> tuple[int, ...]:
    if s in ("", "-"):
        return ()
    return tuple(int(x) for x in s.split(","))


@dataclass
class ReductionTrace:
    n: int
    t: int
    steps: list[TraceStep] = field(default_factory=list)

    @property
    def oracle_steps(self) -> int:
        return sum(1 for s in self.steps if s.recipe == "oracle")

    def to_text(self) -> str:
        lines = [f"trace n={self.n} t={self.t} steps={len(self.steps)}"]
        lines += [f"step {i} {s.to_line()}" for i, s in enumerate(self.steps)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ReductionTrace":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = dict(tok.split("=") for tok in lines[0].split()[1:])
        steps = [TraceStep.from_line(ln.split(" ", 2)[2]) for ln in lines[1:]]
        return cls(int(head["n"]), int(head["t"]), steps)

    def replay(self, G: Graph) -> TreeColoring:
        """Rebuild the coloring bottom-up from the recorded steps."""
        alive: list[set[int]] = []
        gone: set[int] = set()
        for s in self.steps:
            alive.append(set(range(G.n)) - gone)
            gone |= set(s.removed)
        colors: dict[int, int] = {}
        for s, live in zip(reversed(self.steps), reversed(alive)):
            adj = {v: G.adj[v] & live for v in live}
            if s.recipe in ("base", "oracle"):
                colors.update(s.colors)
            elif s.recipe == "lemma1":
                colors = extend_lemma1(adj, s.order, colors, self.t)
            else:
                cfg = Configuration(s.kind, {"hub": s.hub, "twos": s.twos}, removed=s.removed, recipe=s.recipe)
                colors = _star_colors(adj, cfg, self.t, colors)
        return TreeColoring(self.t, colors)


@dataclass
class SolveResult:
    coloring: TreeColoring | None
    trace: ReductionTrace
    oracle_nodes: int = 0

    @property
    def solved(self) -> bool:
        return self.coloring is not None


class SolverBudgetExhausted(BudgetExhausted):
    def __init__(self, message: str, trace: ReductionTrace):
        super().__init__(message)
        self.trace = trace


# ---------------------------------------------------------------- patterns


def _deg(adj: Adjacency, v: int) -> int:
    return len(adj[v])


def _star_twos(adj: Adjacency, hub: int) -> list[int]:
    """2-neighbors of ``hub``, skipping any whose other neighbor is an already chosen 2-neighbor."""
    chosen: list[int] = []
    for v in sorted(adj[hub]):
        if _deg(adj, v) != 2:
            continue
        (w,) = adj[v] - {hub}
        if w in chosen:
            continue
        chosen.append(v)
    return chosen


def _outer(adj: Adjacency, hub: int, v: int) -> int:
    (w,) = set(adj[v]) - {hub}
    return w


def iter_configurations(adj: Adjacency, t: int) -> Iterator[Configuration]:
    """All pattern matches in priority order: P1, P2, P5, stars, generic."""
    by_degree = sorted(adj, key=lambda v: (_deg(adj, v), v))
    for u in by_degree if t >= 2 else ():
        if _deg(adj, u) != 2:
            continue
        for v in sorted(adj[u]):
            if _deg(adj, v) <= 6:
                yield Configuration(P1, {"u": u, "v": v}, {1: u, t: v})
    for u in by_degree if t >= 3 else ():
        if _deg(adj, u) != 3:
            continue
        nb = sorted(adj[u])
        for v in nb:
            if _deg(adj, v) > 4:
                continue
            for w in nb:
                if w != v and _deg(adj, w) <= 6:
                    yield Configuration(P2, {"u": u, "v": v, "w": w}, {1: u, t - 1: v, t: w})
    for u in by_degree if t >= 3 else ():
        if _deg(adj, u) != 7:
            continue
        twos = [v for v in sorted(adj[u]) if _deg(adj, v) == 2]
        for i, v in enumerate(twos):
            for w in twos[i + 1 :]:
                yield Configuration(P5, {"u": u, "v": v, "w": w}, {1: v, t - 1: w, t: u})
    if t >= 3:
        for kind in STARS:
            yield from _star_configurations(adj, t, kind)
    for u in by_degree:
        d = _deg(adj, u)
        if d > 3:
            break
        if d <= 1:
            yield Configuration(GENERIC, {"u": u}, {1: u})
            continue
        if t < d:
            continue
        nb = sorted(adj[u], key=lambda w: (-_deg(adj, w), w))
        for skip in nb:
            rest = [w for w in nb if w != skip]
            seeds = {1: u}
            seeds.update({t - i: w for i, w in enumerate(rest)})
            yield Configuration(GENERIC, {"u": u, "outside": skip}, seeds)


def _star_configurations(adj: Adjacency, t: int, kind: str) -> Iterator[Configuration]:
    degrees, need, small_t, lemma_twos = STARS[kind]
    for hub in sorted(adj):
        if _deg(adj, hub) not in degrees:
            continue
        twos = _star_twos(adj, hub)
        if len(twos) < need:
            continue
        twos = twos[:need]
        roles = {"hub": hub, "twos": tuple(twos), "outer": tuple(_outer(adj, hub, v) for v in twos)}
        if t in small_t:
            k = _REMOVED_TWOS[(kind, t)]
            removed = tuple(sorted([hub, *twos[:k]]))
            yield Configuration(kind, roles | {"twos": tuple(twos[:k])}, removed=removed, recipe=f"star_{kind[5:]}_t{t}")
        elif t > max(small_t):
            seeds = {1: twos[0], t: hub}
            seeds.update({t - lemma_twos + i: twos[i] for i in range(1, lemma_twos)})
            yield Configuration(kind, roles, seeds)


def find_configuration(G: Graph, t: int) -> Configuration | None:
    """The first reducible pattern in ``G`` in priority order, or None."""
    return next(iter_configurations(G.adjacency_map(), t), None)


def _build_S(adj: Adjacency, t: int, seeds: Mapping[int, int]) -> list[int] | None:
    if t > len(adj):
        raise ValueError(f"S of size {t} needs at least {t} vertices")
    if len(set(seeds.values())) != len(seeds):
        raise ValueError("seed vertices collide")
    for i in seeds:
        if not 1 <= i <= t:
            raise ValueError(f"seed index {i} outside 1..{t}")
    chosen = set(seeds.values())
    degree = {v: sum(1 for w in adj[v] if w not in chosen) for v in adj if v not in chosen}
    order: dict[int, int] = dict(seeds)
    for i in range(t, 0, -1):
        if i in order:
            continue
        if not degree:
            return None
        x = min(degree, key=lambda v: (degree[v], v))
        order[i] = x
        del degree[x]
        for w in adj[x]:
            if w in degree:
                degree[w] -= 1
    S = [order[i] for i in range(1, t + 1)]
    if lemma1_bound_failure(adj, S) is not None:
        return None
    return S


def build_S(G: Graph, t: int, seeds: Mapping[int, int]) -> list[int] | None:
    """Complete ``seeds`` (index -> vertex) to ``S = [x_1..x_t]``, or None if the bound fails.

    Free positions are filled from ``t`` down to 1, each time with a
    minimum-degree vertex of ``G`` minus the vertices already placed.
    """
    return _build_S(G.adjacency_map(), t, seeds)


# ---------------------------------------------------------------- recolorings


class RecipeError(ColoringError):
    pass


def _blocks(twos: Sequence[int], colors: Sequence[int], size: int) -> dict[int, int]:
    out = {}
    for i, c in enumerate(colors):
        for v in twos[i * size : (i + 1) * size]:
            out[v] = c
    return out


def _star_colors(adj: Adjacency, cfg: Configuration, t: int, base: Mapping[int, int]) -> dict[int, int]:
    hub = cfg.roles["hub"]
    twos = list(cfg.roles["twos"])
    removed = set(cfg.removed)
    if removed != {hub, *twos}:
        raise RecipeError("removed set does not match hub and 2-neighbors")
    if any(_deg(adj, v) != 2 or hub not in adj[v] for v in twos):
        raise RecipeError("pattern mismatch: listed vertex is not a 2-neighbor of the hub")
    outer = {v: _outer(adj, hub, v) for v in twos}
    if any(w in removed for w in outer.values()):
        raise RecipeError("a removed 2-vertex has its other neighbor inside the removed set")
    missing = [v for v in adj if v not in removed and v not in base]
    if missing:
        raise RecipeError(f"base leaves vertex {missing[0]} uncolored")

    rest = [w for w in sorted(adj[hub]) if w not in removed]
    used = Counter(base[w] for w in rest)
    palette = list(range(1, t + 1))
    wcol = {v: base[outer[v]] for v in twos}
    new: dict[int, int] = {}
    key = (cfg.kind, t)

    def others(*skip: int) -> list[int]:
        return [c for c in palette if c not in skip]

    def split(pred) -> tuple[list[int], list[int]]:
        yes = [v for v in twos if pred(v)]
        return yes, [v for v in twos if not pred(v)]

    if key == ("Star_P6", 3):
        absent = [c for c in palette if used[c] == 0]
        if absent:
            a = absent[0]
            new = {hub: a, twos[0]: a} | _blocks(twos[1:], others(a), 2)
        else:
            once = [c for c in palette if used[c] == 1]
            a, b = once[0], once[1]
            (g,) = others(a, b)
            free, stuck = split(lambda v: wcol[v] != a)
            if free:
                order = free[:1] + [v for v in twos if v != free[0]]
                new = {hub: a, order[0]: a} | _blocks(order[1:], [b, g], 2)
            else:
                new = {hub: b, twos[0]: b} | _blocks(twos[1:], [a, g], 2)
    elif key == ("Star_P7", 3):
        g = [c for c in palette if used[c] == 0][0]
        free, _ = split(lambda v: wcol[v] != g)
        a, b = others(g)
        if free:
            order = free[:1] + [v for v in twos if v != free[0]]
            new = {hub: g, order[0]: g, order[1]: g} | _blocks(order[2:], [a, b], 3)
        else:
            a = [c for c in (a, b) if used[c] <= 1][0]
            (b,) = others(g, a)
            new = {hub: a} | _blocks(twos, [a], 2) | _blocks(twos[2:], [b, g], 3)
    elif key == ("Star_P8", 4):
        once = [c for c in palette if used[c] <= 1]
        a, b = once[0], once[1]
        free, stuck = split(lambda v: wcol[v] != a)
        if free:
            order = free[:1] + [v for v in twos if v != free[0]]
            new = {hub: a, order[0]: a} | _blocks(order[1:], others(a), 2)
        else:
            new = {hub: b, twos[0]: b} | _blocks(twos[1:], [a] + others(a, b), 2)
    elif key == ("Star_P8", 3):
        once = [c for c in palette if used[c] <= 1]
        a, b = once[0], once[1]
        free, stuck = split(lambda v: wcol[v] != a)
        if len(free) >= 2:
            order = free[:2] + [v for v in twos if v not in free[:2]]
            new = {hub: a} | _blocks(order, [a], 2) | _blocks(order[2:], others(a), 3)
        else:
            (g,) = others(a, b)
            order = stuck[:2] + [v for v in twos if v not in stuck[:2]]
            new = {hub: b} | _blocks(order, [b], 2) | _blocks(order[2:], [a, g], 3)
    elif key in (("Star_P9", 4), ("Star_P10", 5)):
        for v in twos:
            seen = set(used) | {wcol[v]}
            spare = [c for c in palette if c not in seen]
            if spare:
                a = spare[0]
                break
        else:
            raise RecipeError("no color avoids the hub's remaining neighbors and an outer neighbor")
        order = [v] + [x for x in twos if x != v]
        new = {hub: a} | _blocks(order, [a], 2) | _blocks(order[2:], others(a), 3)
    elif key in (("Star_P9", 3), ("Star_P10", 3), ("Star_P10", 4)):
        cap, need = {("Star_P9", 3): (1, 3), ("Star_P10", 3): (0, 4), ("Star_P10", 4): (1, 2)}[key]
        for a in palette:
            free = [v for v in twos if wcol[v] != a]
            if used[a] <= cap and len(free) >= need:
                break
        else:
            raise RecipeError("no hub color meets the recoloring conditions")
        order = free[:need] + [v for v in twos if v not in free[:need]]
        block = len(order[need:]) // (t - 1)
        new = {hub: a} | _blocks(order, [a], need) | _blocks(order[need:], others(a), block)
    else:
        raise RecipeError(f"no recoloring for {cfg.kind} with t={t}")

    if set(new) != removed:
        raise AssertionError(f"recipe {cfg.recipe} colored {sorted(new)} instead of {sorted(removed)}")
    out = dict(base)
    out.update(new)
    _assert_touched_classes_acyclic(adj, out, set(new.values()))
    return out


def _assert_touched_classes_acyclic(adj: Adjacency, colors: Mapping[int, int], touched: set[int]) -> None:
    labels = sorted(adj)
    index = {v: i for i, v in enumerate(labels)}
    G = build_graph(len(labels), {(index[u], index[w]) for u in adj for w in adj[u] if u < w})
    for c in touched:
        members = [index[v] for v in labels if colors.get(v) == c]
        if find_cycle(G, members) is not None:
            raise AssertionError(f"recoloring closed a cycle in color class {c}")


def extend_star(G: Graph, cfg: Configuration, t: int, base: TreeColoring) -> TreeColoring:
    """Apply the hub recoloring for ``cfg`` to a coloring of ``G`` minus ``cfg.removed``."""
    if cfg.uses_lemma1:
        raise RecipeError(f"{cfg.kind} at t={t} is handled by the counting-bound extension")
    if base.t != t:
        raise RecipeError("base uses a different number of colors")
    H, labels = G.delete(cfg.removed)
    index = {v: i for i, v in enumerate(labels)}
    if set(base.assignment) != set(labels):
        raise RecipeError("base must color exactly the vertices outside the removed set")
    if not verify(H, TreeColoring(t, {index[v]: c for v, c in base.assignment.items()})).valid:
        raise RecipeError("base is not an equitable tree-coloring of the reduced graph")
    return TreeColoring(t, _star_colors(G.adjacency_map(), cfg, t, base.assignment))


# ---------------------------------------------------------------- solver


def _oracle(adj: Adjacency, t: int, budget: int, nodes: list[int]) -> dict[int, int] | None:
    labels = sorted(adj)
    index = {v: i for i, v in enumerate(labels)}
    H = build_graph(len(labels), {(index[u], index[w]) for u in adj for w in adj[u] if u < w})
    d = decide(H, t, budget)
    nodes[0] += d.stats.nodes
    if d.status == "unknown":
        raise BudgetExhausted(f"exact search exhausted its budget on {len(labels)} vertices", d.stats)
    if d.coloring is None:
        return None
    return {labels[i]: c for i, c in d.coloring.assignment.items()}


def _sizes(colors: Mapping[int, int], t: int) -> tuple[int, ...]:
    count = Counter(colors.values())
    return tuple(count[c] for c in range(1, t + 1))


def solve(G: Graph, t: int, budget: int | None = None, oracle_budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Find an equitable ``t``-tree-coloring by reduction, falling back to exact search.

    ``budget`` bounds recursion steps (default ``10 * n``). Returns a result
    whose coloring is None only when exact search proves nonexistence.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    limit = 10 * max(G.n, 1) if budget is None else budget
    trace = ReductionTrace(G.n, t)
    done: list[TraceStep] = []
    counter = [0]
    nodes = [0]

    def run(adj: dict[int, set[int]]) -> dict[int, int] | None:
        counter[0] += 1
        if counter[0] > limit:
            trace.steps = list(reversed(done))
            raise SolverBudgetExhausted(f"recursion budget {limit} exhausted", trace)
        if len(adj) <= t:
            colors = {v: i for i, v in enumerate(sorted(adj), start=1)}
            done.append(TraceStep("base", "base", tuple(sorted(adj)), colors=colors, sizes=_sizes(colors, t)))
            return colors
        mark = len(done)
        for cfg in iter_configurations(adj, t):
            if cfg.uses_lemma1:
                try:
                    S = _build_S(adj, t, cfg.seeds)
                except ValueError:
                    continue
                if S is None:
                    continue
                gone = set(S)
            else:
                S, gone = None, set(cfg.removed)
            sub = {v: adj[v] - gone for v in adj if v not in gone}
            below = run(sub)
            if below is None:
                del done[mark:]
                break
            if S is not None:
                colors = extend_lemma1(adj, S, below, t)
                done.append(TraceStep(cfg.kind, "lemma1", tuple(sorted(gone)), order=tuple(S),
                                      seeds=dict(cfg.seeds), sizes=_sizes(colors, t)))
            else:
                colors = _star_colors(adj, cfg, t, below)
                done.append(TraceStep(cfg.kind, cfg.recipe, cfg.removed, hub=cfg.roles["hub"],
                                      twos=tuple(cfg.roles["twos"]), sizes=_sizes(colors, t)))
            return colors
        colors = _oracle(adj, t, oracle_budget, nodes)
        if colors is None:
            return None
        done.append(TraceStep("oracle", "oracle", tuple(sorted(adj)), colors=colors, sizes=_sizes(colors, t)))
        return colors

    colors = run(G.adjacency_map())
    trace.steps = list(reversed(done))
    if colors is None:
        return SolveResult(None, trace, nodes[0])
    coloring = TreeColoring(t, colors)
    report = verify(G, coloring)
    if not report.valid:
        raise AssertionError(f"solver produced an invalid coloring: {report.violations}")
    return SolveResult(coloring, trace, nodes[0])
