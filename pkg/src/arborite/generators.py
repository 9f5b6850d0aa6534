"""Instance generators: in-class random planar graphs and named fixtures.

Random instances are built with a constructive bias (trees, short cycles
hung off single vertices, subdivided spokes) and then densified by random
edge additions that are kept only when the graph stays planar and in class.
Every result is re-checked before it is returned.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable

import networkx as nx

from .classes import is_class_A, is_class_B
from .formats import embedding_to_dict, write_graph6
from .graph import Graph, PlaneEmbedding, build_graph, derive_faces


class GenerationError(RuntimeError):
    pass


@dataclass
class InstanceBundle:
    graph: Graph
    embedding: PlaneEmbedding | None = None
    provenance: dict = field(default_factory=dict)
    known: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        p = self.provenance
        if "kind" in p:
            return str(p["kind"])
        return f"{p.get('generator', 'graph')}-n{p.get('n', self.graph.n)}-s{p.get('seed', 0)}"

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "graph6": write_graph6(self.graph),
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.sorted_edges()],
            "provenance": self.provenance,
            "known": self.known,
        }
        if self.embedding is not None:
            out["rotation"] = embedding_to_dict(self.embedding)["rotation"]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, obj: dict) -> "InstanceBundle":
        g = build_graph(obj["n"], obj["edges"])
        emb = derive_faces(g, obj["rotation"]) if obj.get("rotation") is not None else None
        return cls(g, emb, obj.get("provenance", {}), obj.get("known", {}))


def planar_embedding(G: Graph) -> PlaneEmbedding | None:
    """A rotation system for a connected planar graph (via networkx), or None."""
    if G.n == 0 or not G.is_connected():
        return None
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.sorted_edges())
    ok, emb = nx.check_planarity(H)
    if not ok:
        return None
    rotation = [list(emb.neighbors_cw_order(v)) if G.degree(v) else [] for v in range(G.n)]
    return derive_faces(G, rotation)


class _Builder:
    """Mutable edge set plus a networkx mirror for planarity checks."""

    def __init__(self, rng: random.Random, member: Callable[[Graph], bool]):
        self.rng = rng
        self.member = member
        self.n = 1
        self.edges: set[tuple[int, int]] = set()
        self.nx = nx.Graph()
        self.nx.add_node(0)

    def graph(self) -> Graph:
        return build_graph(self.n, self.edges)

    def new_vertex(self) -> int:
        self.n += 1
        self.nx.add_node(self.n - 1)
        return self.n - 1

    def add(self, u: int, v: int) -> None:
        self.edges.add((min(u, v), max(u, v)))
        self.nx.add_edge(u, v)

    def try_edges(self, new: list[tuple[int, int]], fresh: int = 0) -> bool:
        """Add ``fresh`` new vertices and the edges; keep them only if still planar and in class."""
        saved_n, saved_edges = self.n, set(self.edges)
        for _ in range(fresh):
            self.new_vertex()
        for u, v in new:
            self.add(u, v)
        if nx.check_planarity(self.nx)[0] and self.member(self.graph()):
            return True
        for v in range(saved_n, self.n):
            self.nx.remove_node(v)
        for u, v in new:
            if self.nx.has_edge(u, v):
                self.nx.remove_edge(u, v)
        self.n, self.edges = saved_n, saved_edges
        return False


def _grow(rng: random.Random, n: int, member: Callable[[Graph], bool], cycle_lengths: tuple[int, ...]) -> Graph:
    b = _Builder(rng, member)
    on_short: set[int] = set()
    while b.n < n:
        room = n - b.n
        op = rng.random()
        anchor = rng.randrange(b.n)
        k = rng.choice(cycle_lengths)
        if op < 0.25 and room >= k - 1 and anchor not in on_short:
            first = b.n
            ring = [anchor] + list(range(first, first + k - 1))
            edges = [(ring[i], ring[(i + 1) % k]) for i in range(k)]
            if b.try_edges(edges, fresh=k - 1):
                on_short.update(ring)
            continue
        if op < 0.45 and b.n >= 4:
            # a new 2-vertex joining two existing vertices
            other = rng.randrange(b.n)
            if other != anchor and b.try_edges([(anchor, b.n), (other, b.n)], fresh=1):
                continue
        b.try_edges([(anchor, b.n)], fresh=1)

    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in b.edges]
    rng.shuffle(pairs)
    # a third of the instances are saturated: every admissible edge is added
    if rng.random() >= 1 / 3:
        pairs = pairs[: int(rng.random() * 2 * n)]
    for e in pairs:
        b.try_edges([e])
    return b.graph()


def _seed_rng(tag: str, n: int, seed: int) -> random.Random:
    return random.Random(f"{tag}:{n}:{seed}")


def _bundle(G: Graph, generator: str, n: int, seed: int, check: Callable[[Graph], bool]) -> InstanceBundle:
    if not check(G) or not G.is_connected():
        raise GenerationError(f"{generator} produced an out-of-class graph for n={n}, seed={seed}")
    emb = planar_embedding(G)
    if emb is None:
        raise GenerationError(f"{generator} produced a non-planar graph for n={n}, seed={seed}")
    return InstanceBundle(G, emb, {"generator": generator, "n": n, "seed": seed})


def gen_class_A(n: int, seed: int) -> InstanceBundle:
    """Connected planar graph whose cycles of length at most 4 are pairwise vertex-disjoint."""
    if n < 3:
        raise GenerationError("class A generation needs n >= 3")
    member = lambda g: is_class_A(g).member
    return _bundle(_grow(_seed_rng("A", n, seed), n, member, (3, 4)), "class_A", n, seed, member)


def gen_class_B(n: int, seed: int) -> InstanceBundle:
    """Connected planar triangle-free graph in which no two 4-cycles share an edge."""
    if n < 3:
        raise GenerationError("class B generation needs n >= 3")
    member = lambda g: is_class_B(g).member
    return _bundle(_grow(_seed_rng("B", n, seed), n, member, (4,)), "class_B", n, seed, member)


# ---------------------------------------------------------------- fixtures


def _complete(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def _knn(n: int) -> Graph:
    return build_graph(2 * n, [(i, n + j) for i in range(n) for j in range(n)])


def _cycle(k: int) -> Graph:
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)])


def _path(k: int) -> Graph:
    return build_graph(k, [(i, i + 1) for i in range(k - 1)])


def _cube() -> Graph:
    return build_graph(8, [(a, a ^ (1 << b)) for a in range(8) for b in range(3) if a < a ^ (1 << b)])


def _subdivide(G: Graph) -> Graph:
    edges = []
    n = G.n
    for u, v in G.sorted_edges():
        edges += [(u, n), (n, v)]
        n += 1
    return build_graph(n, edges)


def _star(k: int) -> Graph:
    return build_graph(k + 1, [(0, i) for i in range(1, k + 1)])


# pattern -> (2-neighbors of the hub, plain spokes)
_STAR_SHAPES = {"star_P6": (5, 3), "star_P7": (8, 2), "star_P8": (8, 3), "star_P9": (11, 1), "star_P10": (14, 0)}


def star_fixture(kind: str, rng: random.Random | None = None, outer_degree: int = 7) -> Graph:
    """A hub with subdivided spokes whose outer ends form a path padded with leaves.

    With the default padding every 2-vertex sees only 7+-vertices, so no
    smaller pattern fires before the hub pattern. With ``rng`` the host is
    randomized (extra tree vertices, fewer leaves), which keeps the hub
    pattern but may also create others.
    """
    twos, plain = _STAR_SHAPES[kind]
    edges: list[tuple[int, int]] = []
    hub, nxt = 0, 1
    spokes = list(range(nxt, nxt + twos))
    nxt += twos
    outers = list(range(nxt, nxt + twos))
    nxt += twos
    for v, w in zip(spokes, outers):
        edges += [(hub, v), (v, w)]
    host = list(outers)
    for a, b in zip(outers, outers[1:]):
        edges.append((a, b))
    if rng is not None:
        for _ in range(rng.randint(0, twos)):
            anchor = rng.choice(host)
            host.append(nxt)
            edges.append((anchor, nxt))
            nxt += 1
    for _ in range(plain):
        edges.append((hub, nxt))
        if rng is not None and rng.random() < 0.5:
            edges.append((nxt, nxt + 1))
            nxt += 1
        nxt += 1
    degree = [0] * nxt
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    for w in outers:
        pad = outer_degree - degree[w] if rng is None else rng.randint(0, max(0, outer_degree - degree[w]))
        for _ in range(max(0, pad)):
            edges.append((w, nxt))
            nxt += 1
    return build_graph(nxt, edges)


def _two_triangles(gap: int = 5) -> Graph:
    # triangles 0-1-2 and t-(t+1)-(t+2) joined by a path of `gap` edges from 2 to t
    t = 3 + gap - 1
    edges = [(0, 1), (1, 2), (2, 0), (t, t + 1), (t + 1, t + 2), (t + 2, t)]
    path = [2] + list(range(3, t)) + [t]
    edges += list(zip(path, path[1:]))
    return build_graph(t + 3, edges)


FIXTURES: dict[str, Callable[..., Graph]] = {
    "K": _complete,
    "Knn": _knn,
    "C": _cycle,
    "P": _path,
    "star": _star,
    "subdivided_star": lambda k: _subdivide(_star(k)),
}

NAMED: dict[str, Callable[[], Graph]] = {
    "Q3": _cube,
    "subdivided_K4": lambda: _subdivide(_complete(4)),
    "subdivided_Q3": lambda: _subdivide(_cube()),
    "two_triangles": _two_triangles,
    "triangle_tail": lambda: build_graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)]),
    "dodecahedron": lambda: build_graph(20, nx.dodecahedral_graph().edges()),
    **{k: (lambda k=k: star_fixture(k)) for k in _STAR_SHAPES},
}


def fixture_kinds() -> list[str]:
    return [f"{k}:<int>" for k in FIXTURES] + list(NAMED)


def gen_fixture(kind: str) -> InstanceBundle:
    """Named fixture, e.g. ``"Knn:3"``, ``"C:5"``, ``"Q3"`` or ``"star_P7"``."""
    if kind in NAMED:
        G = NAMED[kind]()
    else:
        name, _, arg = kind.partition(":")
        if name not in FIXTURES or not arg.isdigit():
            raise ValueError(f"unknown fixture {kind!r}; known: {', '.join(fixture_kinds())}")
        G = FIXTURES[name](int(arg))
    return InstanceBundle(G, planar_embedding(G), {"generator": "fixture", "kind": kind})
