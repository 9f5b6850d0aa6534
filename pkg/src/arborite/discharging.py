"""Exact charge bookkeeping for the three discharging arguments on plane embeddings.

Schemes:

* ``lemma2``: c(x) = d(x) - 4 on vertices and faces; every 5+-face sends 1/3
  across each edge it shares with a 3-face.
* ``thm3``: c(v) = 3d(v) - 10, c(f) = 2d(f) - 10, rules R1-R5.
* ``thm4``: c(x) = d(x) - 4, rules R1-R2.

Vertex-face incidences are counted along boundary walks, with multiplicity.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .graph import Graph, PlaneEmbedding

Element = tuple[str, int]  # ("vertex", v) or ("face", f)


@dataclass(frozen=True)
class ChargeScheme:
    id: str
    vertex_charge: Callable[[int], Fraction]
    face_charge: Callable[[int], Fraction]
    euler_total: Fraction


SCHEMES = {
    "lemma2": ChargeScheme("lemma2", lambda d: Fraction(d - 4), lambda d: Fraction(d - 4), Fraction(-8)),
    "thm3": ChargeScheme("thm3", lambda d: Fraction(3 * d - 10), lambda d: Fraction(2 * d - 10), Fraction(-20)),
    "thm4": ChargeScheme("thm4", lambda d: Fraction(d - 4), lambda d: Fraction(d - 4), Fraction(-8)),
}


def get_scheme(scheme: str | ChargeScheme) -> ChargeScheme:
    if isinstance(scheme, ChargeScheme):
        return scheme
    try:
        return SCHEMES[scheme.lower()]
    except KeyError:
        raise ValueError(f"unknown scheme {scheme!r}; choose from {', '.join(SCHEMES)}") from None


@dataclass(frozen=True)
class Transfer:
    source: Element
    target: Element
    amount: Fraction
    rule: str


@dataclass
class ChargeLedger:
    embedding: PlaneEmbedding
    scheme: ChargeScheme
    initial: dict[Element, Fraction]
    charge: dict[Element, Fraction]
    transfers: list[Transfer] = field(default_factory=list)

    def degree(self, x: Element) -> int:
        kind, i = x
        if kind == "vertex":
            return self.embedding.graph.degree(i)
        return self.embedding.faces[i].degree

    def elements(self) -> list[Element]:
        g = self.embedding.graph
        return [("vertex", v) for v in range(g.n)] + [("face", f) for f in range(len(self.embedding.faces))]

    def rule_totals(self) -> dict[str, tuple[Fraction, Fraction]]:
        """Per rule: (total sent by donors, total received by recipients)."""
        sent: dict[str, Fraction] = defaultdict(Fraction)
        got: dict[str, Fraction] = defaultdict(Fraction)
        for tr in self.transfers:
            sent[tr.rule] += tr.amount
            got[tr.rule] += tr.amount
        return {r: (sent[r], got[r]) for r in sent}

    def to_text(self) -> str:
        lines = [
            f"ledger scheme={self.scheme.id} vertices={self.embedding.graph.n} "
            f"faces={len(self.embedding.faces)} initial_total={_q(sum(self.initial.values(), Fraction()))} "
            f"final_total={_q(total_charge(self))}",
            "kind id degree initial final",
        ]
        for x in self.elements():
            lines.append(f"{x[0]} {x[1]} {self.degree(x)} {_q(self.initial[x])} {_q(self.charge[x])}")
        lines.append(f"transfers {len(self.transfers)}")
        for tr in self.transfers:
            lines.append(f"{tr.rule} {tr.source[0]}:{tr.source[1]} {tr.target[0]}:{tr.target[1]} {_q(tr.amount)}")
        return "\n".join(lines) + "\n"


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def assign_initial(emb: PlaneEmbedding, scheme: str | ChargeScheme) -> ChargeLedger:
    sch = get_scheme(scheme)
    if emb.euler_characteristic() != 2:
        raise ValueError("embedding does not satisfy Euler's formula")
    g = emb.graph
    initial: dict[Element, Fraction] = {}
    for v in range(g.n):
        initial[("vertex", v)] = sch.vertex_charge(g.degree(v))
    for i, f in enumerate(emb.faces):
        initial[("face", i)] = sch.face_charge(f.degree)
    return ChargeLedger(emb, sch, initial, dict(initial))


def total_charge(ledger: ChargeLedger) -> Fraction:
    return sum(ledger.charge.values(), Fraction())


def _incidences(emb: PlaneEmbedding) -> list[Counter]:
    """Per vertex: Counter face index -> number of times the vertex occurs on that walk."""
    out = [Counter() for _ in range(emb.graph.n)]
    for i, f in enumerate(emb.faces):
        for v in f.vertices:
            out[v][i] += 1
    return out


def _lemma2_rules(emb: PlaneEmbedding) -> list[Transfer]:
    out = []
    where = emb.face_of()
    fdeg = [f.degree for f in emb.faces]
    for u, v in sorted(emb.graph.edges):
        a, b = where[(u, v)], where[(v, u)]
        if a == b:
            continue
        for src, dst in ((a, b), (b, a)):
            if fdeg[src] >= 5 and fdeg[dst] == 3:
                out.append(Transfer(("face", src), ("face", dst), Fraction(1, 3), "L"))
    return out


def _thm3_rules(emb: PlaneEmbedding) -> list[Transfer]:
    g = emb.graph
    d = g.degrees()
    out = []
    for v in range(g.n):
        if d[v] == 2:
            for w in sorted(g.adj[v]):
                out.append(Transfer(("vertex", w), ("vertex", v), Fraction(2), "R1"))
    for u in range(g.n):
        if d[u] != 3:
            continue
        for v in sorted(g.adj[u]):
            if 5 <= d[v] <= 6:
                out.append(Transfer(("vertex", v), ("vertex", u), Fraction(1, 3), "R2"))
            elif d[v] >= 7:
                out.append(Transfer(("vertex", v), ("vertex", u), Fraction(1, 2), "R2"))
    for i, f in enumerate(emb.faces):
        if f.degree == 3:
            has_two = any(d[v] == 2 for v in f.vertices)
            for v in f.vertices:
                if not has_two and 4 <= d[v] <= 7:
                    out.append(Transfer(("vertex", v), ("face", i), Fraction(2), "R3"))
                elif not has_two and d[v] >= 8:
                    out.append(Transfer(("vertex", v), ("face", i), Fraction(4), "R3"))
                elif has_two and d[v] >= 7:
                    out.append(Transfer(("vertex", v), ("face", i), Fraction(2), "R4"))
        elif f.degree == 4:
            for v in f.vertices:
                if d[v] >= 4:
                    out.append(Transfer(("vertex", v), ("face", i), Fraction(1), "R5"))
    return out


def _thm4_rules(emb: PlaneEmbedding) -> list[Transfer]:
    g = emb.graph
    d = g.degrees()
    fdeg = [f.degree for f in emb.faces]
    inc = _incidences(emb)
    out = []
    for v in range(g.n):
        if d[v] == 2:
            for w in sorted(g.adj[v]):
                out.append(Transfer(("vertex", w), ("vertex", v), Fraction(3, 4), "R1"))
            for i, k in sorted(inc[v].items()):
                if fdeg[i] >= 5:
                    out += [Transfer(("face", i), ("vertex", v), Fraction(1, 2), "R1")] * k
        elif d[v] == 3:
            for w in sorted(g.adj[v]):
                if 5 <= d[w] <= 6:
                    out.append(Transfer(("vertex", w), ("vertex", v), Fraction(1, 6), "R2"))
                elif d[w] >= 7:
                    out.append(Transfer(("vertex", w), ("vertex", v), Fraction(1, 4), "R2"))
            for i, k in sorted(inc[v].items()):
                if fdeg[i] >= 5:
                    out += [Transfer(("face", i), ("vertex", v), Fraction(1, 4), "R2")] * k
    return out


_RULES = {"lemma2": _lemma2_rules, "thm3": _thm3_rules, "thm4": _thm4_rules}


def apply_rules(emb: PlaneEmbedding, scheme: str | ChargeScheme) -> ChargeLedger:
    """Initial charges followed by one application of every rule instance of the scheme."""
    ledger = assign_initial(emb, scheme)
    for tr in _RULES[ledger.scheme.id](emb):
        ledger.charge[tr.source] -= tr.amount
        ledger.charge[tr.target] += tr.amount
        ledger.transfers.append(tr)
    return ledger


# ---------------------------------------------------------------- structure checks


@dataclass(frozen=True)
class Failure:
    condition: str
    element: Element
    detail: str


@dataclass
class PropositionReport:
    failures: dict[str, list[Failure]]

    def holds(self, condition: str) -> bool:
        return not self.failures.get(condition)

    def failing(self) -> list[str]:
        return [c for c, fs in self.failures.items() if fs]


# Conditions checked by check_propositions. P-labels name the reducible
# configurations; the rest are class-level facts the
# discharging arguments lean on.
CONDITIONS = {
    "no_1_vertex": "minimum degree at least 2",
    "P1": "every 2-vertex is adjacent only to 7+-vertices",
    "P2": "every 3-vertex is adjacent to three 5+-vertices, or to one 4--vertex and two 7+-vertices",
    "P3": "a 3-face at a 3-vertex has two 6+-vertices, or a 5--vertex and an 8+-vertex besides it",
    "P4": "a 4-face at a 3-vertex has three 4+-vertices, two 5+-vertices, or a 4-vertex and a 7+-vertex",
    "P5": "every 7-vertex has at most one 2-neighbor",
    "P6": "every 8- or 9-vertex has at most four 2-neighbors",
    "P7": "every 10-vertex has at most seven 2-neighbors",
    "P8": "every 11-vertex has at most seven 2-neighbors",
    "P9": "every 12- or 13-vertex has at most ten 2-neighbors",
    "P10": "every 14- or 15-vertex has at most thirteen 2-neighbors",
    "min_degree_4": "minimum degree at least 4",
    "short_face_separation": "every 3-face is adjacent only to 5+-faces",
    "one_short_face": "every vertex lies on at most one 4--face",
    "long_face_at_2_vertex": "every 2-vertex lies on a 5+-face",
    "long_faces_at_3_vertex": "every 3-vertex lies on at least two 5+-faces",
}

SCHEME_CONDITIONS = {
    "lemma2": ("min_degree_4", "short_face_separation"),
    "thm3": ("no_1_vertex", "P1", "P2", "P3", "P4", "P5", "P6", "P7", "one_short_face"),
    "thm4": ("no_1_vertex", "P1", "P2", "P5", "P6", "P7", "P8", "P9", "P10",
             "long_face_at_2_vertex", "long_faces_at_3_vertex"),
}

_TWO_LIMITS = {"P5": ((7,), 1), "P6": ((8, 9), 4), "P7": ((10,), 7), "P8": ((11,), 7),
               "P9": ((12, 13), 10), "P10": ((14, 15), 13)}


def check_propositions(G: Graph, emb: PlaneEmbedding | None = None) -> PropositionReport:
    """Evaluate every structural condition; face conditions need an embedding."""
    d = G.degrees()
    fails: dict[str, list[Failure]] = {c: [] for c in CONDITIONS}

    def fail(cond: str, x: Element, detail: str) -> None:
        fails[cond].append(Failure(cond, x, detail))

    for v in range(G.n):
        nd = sorted(d[w] for w in G.adj[v])
        if d[v] <= 1:
            fail("no_1_vertex", ("vertex", v), f"degree {d[v]}")
        if d[v] <= 3:
            fail("min_degree_4", ("vertex", v), f"degree {d[v]}")
        if d[v] == 2 and nd[0] < 7:
            fail("P1", ("vertex", v), f"2-vertex with neighbor degrees {nd}")
        if d[v] == 3:
            ok = nd[0] >= 5 or (nd[0] <= 4 and nd[1] >= 7)
            if not ok:
                fail("P2", ("vertex", v), f"3-vertex with neighbor degrees {nd}")
        twos = nd.count(2)
        for cond, (degs, limit) in _TWO_LIMITS.items():
            if d[v] in degs and twos > limit:
                fail(cond, ("vertex", v), f"{d[v]}-vertex with {twos} 2-neighbors")

    if emb is not None:
        where = emb.face_of()
        fdeg = [f.degree for f in emb.faces]
        for i, f in enumerate(emb.faces):
            ds = [d[v] for v in f.vertices]
            if f.degree == 3 and 3 in ds:
                rest = list(ds)
                rest.remove(3)
                lo, hi = sorted(rest)
                if not (lo >= 6 or (lo <= 5 and hi >= 8)):
                    fail("P3", ("face", i), f"3-face with vertex degrees {sorted(ds)}")
            if f.degree == 4 and 3 in ds:
                ok = (sum(x >= 4 for x in ds) >= 3 or sum(x >= 5 for x in ds) >= 2
                      or (4 in ds and any(x >= 7 for x in ds)))
                if not ok:
                    fail("P4", ("face", i), f"4-face with vertex degrees {sorted(ds)}")
            if f.degree == 3:
                for a, b in f.boundary:
                    other = where[(b, a)]
                    if other != i and fdeg[other] <= 4:
                        fail("short_face_separation", ("face", i), f"adjacent to face {other} of degree {fdeg[other]}")
                        break
        inc = _incidences(emb)
        for v in range(G.n):
            short = sum(k for fi, k in inc[v].items() if fdeg[fi] <= 4)
            long_ = sum(k for fi, k in inc[v].items() if fdeg[fi] >= 5)
            if short >= 2:
                fail("one_short_face", ("vertex", v), f"on {short} incidences of 4--faces")
            if d[v] == 2 and long_ < 1:
                fail("long_face_at_2_vertex", ("vertex", v), "no incident 5+-face")
            if d[v] == 3 and long_ < 2:
                fail("long_faces_at_3_vertex", ("vertex", v), f"{long_} incidences of 5+-faces")
    return PropositionReport(fails)


@dataclass(frozen=True)
class NegativeCharge:
    element: Element
    charge: Fraction
    diagnosis: tuple[Failure, ...]


def _vicinity(emb: PlaneEmbedding, x: Element) -> set[Element]:
    g = emb.graph
    if x[0] == "vertex":
        v = x[1]
        near = {("vertex", v)} | {("vertex", w) for w in g.adj[v]}
        near |= {("face", i) for i, f in enumerate(emb.faces) if v in f.vertices}
        return near
    f = emb.faces[x[1]]
    return {x} | {("vertex", v) for v in f.vertices}


def report_negative(ledger: ChargeLedger) -> list[NegativeCharge]:
    """Elements ending with negative charge, each with the scheme's failing conditions nearby."""
    emb = ledger.embedding
    report = check_propositions(emb.graph, emb)
    relevant = SCHEME_CONDITIONS[ledger.scheme.id]
    out = []
    for x in ledger.elements():
        c = ledger.charge[x]
        if c >= 0:
            continue
        near = _vicinity(emb, x)
        diag = tuple(f for cond in relevant for f in report.failures[cond] if f.element in near)
        out.append(NegativeCharge(x, c, diag))
    return out
