"""Text formats: graph6, embedding JSON, coloring files."""

from __future__ import annotations

import json

from .coloring import ColoringError, TreeColoring
from .graph import Graph, PlaneEmbedding, build_graph, derive_faces


class FormatError(ValueError):
    pass


# ---------------------------------------------------------------- graph6


def write_graph6(G: Graph) -> str:
    n = G.n
    if n < 63:
        head = [n]
    elif n < 258048:
        head = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        head = [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if G.has_edge(i, j) else 0)
    bits += [0] * (-len(bits) % 6)
    body = [int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)]
    return "".join(chr(x + 63) for x in head + body)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise FormatError("empty graph6 string")
    data = [ord(ch) - 63 for ch in s]
    if any(not 0 <= x <= 63 for x in data):
        raise FormatError("graph6 contains characters outside '?'..'~'")
    if data[0] < 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise FormatError("truncated graph6 size header")
        n, pos = _bigword(data[2:8]), 8
    else:
        if len(data) < 4:
            raise FormatError("truncated graph6 size header")
        n, pos = _bigword(data[1:4]), 4
    need = n * (n - 1) // 2
    body = data[pos:]
    if len(body) != (need + 5) // 6:
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {(need + 5) // 6}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def _bigword(chunks: list[int]) -> int:
    n = 0
    for c in chunks:
        n = (n << 6) | c
    return n


# ---------------------------------------------------------------- embeddings


def embedding_to_dict(emb: PlaneEmbedding) -> dict:
    return {
        "n": emb.graph.n,
        "edges": [list(e) for e in emb.graph.sorted_edges()],
        "rotation": [list(r) for r in emb.rotation],
    }


def parse_embedding(text: str | dict) -> PlaneEmbedding:
    """Read ``{"n", "edges", "rotation"}`` and validate it via face tracing."""
    try:
        obj = json.loads(text) if isinstance(text, str) else text
    except json.JSONDecodeError as exc:
        raise FormatError(f"embedding is not valid JSON: {exc}") from None
    if not isinstance(obj, dict) or not {"n", "edges", "rotation"} <= obj.keys():
        raise FormatError('embedding JSON needs keys "n", "edges" and "rotation"')
    n, edges, rotation = obj["n"], obj["edges"], obj["rotation"]
    if not isinstance(n, int) or not isinstance(edges, list) or not isinstance(rotation, list):
        raise FormatError("embedding fields have the wrong types")
    if any(not isinstance(e, list) or len(e) != 2 for e in edges):
        raise FormatError("each edge must be a pair")
    return derive_faces(build_graph(n, edges), rotation)


def write_embedding(emb: PlaneEmbedding) -> str:
    return json.dumps(embedding_to_dict(emb))


# ---------------------------------------------------------------- colorings


def write_coloring(c: TreeColoring) -> str:
    lines = [f"t={c.t}"] + [f"{v} {c.assignment[v]}" for v in sorted(c.assignment)]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> TreeColoring:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("t="):
        raise FormatError('coloring must start with a "t=<colors>" header')
    try:
        t = int(lines[0][2:])
        assignment = {}
        for ln in lines[1:]:
            v, c = ln.split()
            if int(v) in assignment:
                raise FormatError(f"vertex {v} colored twice")
            assignment[int(v)] = int(c)
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed coloring line: {exc}") from None
    try:
        return TreeColoring(t, assignment)
    except ColoringError as exc:
        raise FormatError(str(exc)) from None
