"""Simple undirected graphs, rotation-system embeddings and the forest test."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input."""


class EmbeddingError(ValueError):
    """Raised when a rotation system does not describe a plane embedding."""

    def __init__(self, message: str, genus_defect: int | None = None):
        super().__init__(message)
        self.genus_defect = genus_defect


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Build instances with :func:`build_graph`; the constructor trusts its input.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    adj: tuple[frozenset[int], ...] = field(repr=False, compare=False)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency_map(self) -> dict[int, set[int]]:
        """Mutable label-preserving adjacency copy, used by the search code."""
        return {v: set(self.adj[v]) for v in range(self.n)}

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled densely; ``labels[i]`` is the old label of ``i``."""
        labels = sorted(set(vertices))
        index = {v: i for i, v in enumerate(labels)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return build_graph(len(labels), edges), labels

    def delete(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        gone = set(vertices)
        return self.induced(v for v in range(self.n) if v not in gone)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for w in self.adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    seen: set[tuple[int, int]] = set()
    adj: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphError(f"duplicate edge {key}")
        seen.add(key)
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, frozenset(seen), tuple(frozenset(a) for a in adj))


def _check_subset(G: Graph, s: Iterable[int]) -> set[int]:
    members = set(s)
    for v in members:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} outside 0..{G.n - 1}")
    return members


def induces_forest(G: Graph, s: Iterable[int]) -> bool:
    """True iff the subgraph induced by ``s`` has no cycle (union-find over induced edges)."""
    members = _check_subset(G, s)
    parent = {v: v for v in members}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in members:
        for w in G.adj[v]:
            if w > v and w in members:
                rv, rw = find(v), find(w)
                if rv == rw:
                    return False
                parent[rv] = rw
    return True


def find_cycle(G: Graph, s: Iterable[int]) -> list[int] | None:
    """A cycle (as a vertex sequence) in the subgraph induced by ``s``, or None."""
    members = _check_subset(G, s)
    parent: dict[int, int | None] = {}
    for root in sorted(members):
        if root in parent:
            continue
        parent[root] = None
        depth = {root: 0}
        stack = [root]
        while stack:
            v = stack.pop()
            for w in sorted(G.adj[v]):
                if w not in members or w == parent[v]:
                    continue
                if w in parent:
                    # back edge v-w closes a cycle through their common ancestor
                    a, b = v, w
                    left, right = [a], [b]
                    while a != b:
                        if depth[a] >= depth[b]:
                            a = parent[a]
                            left.append(a)
                        else:
                            b = parent[b]
                            right.append(b)
                    return left + right[-2::-1]
                parent[w] = v
                depth[w] = depth[v] + 1
                stack.append(w)
    return None


@dataclass(frozen=True)
class Face:
    boundary: tuple[tuple[int, int], ...]

    @property
    def degree(self) -> int:
        return len(self.boundary)

    @property
    def vertices(self) -> tuple[int, ...]:
        """Incident vertices along the walk, with multiplicity."""
        return tuple(u for u, _ in self.boundary)


@dataclass(frozen=True)
class PlaneEmbedding:
    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    faces: tuple[Face, ...]

    def face_of(self) -> dict[tuple[int, int], int]:
        """Map each directed edge to the index of the face on its boundary walk."""
        return {d: i for i, f in enumerate(self.faces) for d in f.boundary}

    def euler_characteristic(self) -> int:
        return self.graph.n - self.graph.m + len(self.faces)


def derive_faces(G: Graph, rotation: Sequence[Sequence[int]]) -> PlaneEmbedding:
    """Trace the faces of a rotation system and validate it as a plane embedding.

    ``rotation[v]`` lists the neighbours of ``v`` in cyclic order. The face
    after the dart ``(u, v)`` continues with ``(v, w)`` where ``w`` follows
    ``u`` in the rotation at ``v``.
    """
    if len(rotation) != G.n:
        raise EmbeddingError(f"rotation has {len(rotation)} entries for {G.n} vertices")
    rot = tuple(tuple(int(w) for w in r) for r in rotation)
    for v, r in enumerate(rot):
        if len(set(r)) != len(r) or set(r) != G.adj[v]:
            raise EmbeddingError(f"rotation at vertex {v} does not list its neighbours exactly once")
    if not G.is_connected():
        raise EmbeddingError("embedding validation requires a connected graph")

    position = [{w: i for i, w in enumerate(r)} for r in rot]
    unused = {(u, v) for u in range(G.n) for v in rot[u]}
    faces: list[Face] = []
    for start in sorted(unused):
        if start not in unused:
            continue
        walk = []
        dart = start
        while dart in unused:
            unused.discard(dart)
            walk.append(dart)
            u, v = dart
            r = rot[v]
            dart = (v, r[(position[v][u] + 1) % len(r)])
        if dart != start:
            raise EmbeddingError("face walk did not close; rotation is inconsistent")
        faces.append(Face(tuple(walk)))
    if G.m == 0:
        faces.append(Face(()))

    chi = G.n - G.m + len(faces)
    if chi != 2:
        raise EmbeddingError(
            f"Euler check failed: V - E + F = {chi}, genus defect {(2 - chi) // 2}",
            genus_defect=(2 - chi) // 2,
        )
    return PlaneEmbedding(G, rot, tuple(faces))
