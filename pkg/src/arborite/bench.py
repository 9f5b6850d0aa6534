"""Benchmark sweeps over instance corpora, emitted as CSV rows."""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .coloring import TreeColoring, verify
from .generators import InstanceBundle, gen_class_A, gen_class_B
from .oracle import DEFAULT_BUDGET, decide
from .reduction import solve

COLUMNS = ["instance", "n", "t", "method", "success", "nodes", "steps", "oracle_steps", "seconds"]
METHODS = ("solver", "oracle")


@dataclass
class BenchRow:
    instance: str
    n: int
    t: int
    method: str
    success: bool
    nodes: int
    steps: int
    oracle_steps: int
    seconds: float
    coloring: TreeColoring | None = None

    def as_csv(self) -> list:
        return [self.instance, self.n, self.t, self.method, str(self.success).lower(),
                self.nodes, self.steps, self.oracle_steps, f"{self.seconds:.6f}"]


def corpus(graph_class: str, count: int, nmin: int, nmax: int, seed: int) -> list[InstanceBundle]:
    gen = {"A": gen_class_A, "B": gen_class_B}[graph_class.upper()]
    span = nmax - nmin + 1
    return [gen(nmin + i % span, seed + i) for i in range(count)]


def _run_instance(job: tuple[InstanceBundle, int, int | None, tuple[str, ...], int]) -> list[BenchRow]:
    bundle, tmin, tmax, methods, budget = job
    G = bundle.graph
    rows = []
    top = G.n if tmax is None else min(tmax, G.n)
    for t in range(tmin, max(top, tmin) + 1):
        for method in methods:
            start = time.perf_counter()
            if method == "solver":
                res = solve(G, t, oracle_budget=budget)
                col = res.coloring
                nodes, steps, oracle_steps = res.oracle_nodes, len(res.trace.steps), res.trace.oracle_steps
            else:
                d = decide(G, t, budget)
                col, nodes, steps, oracle_steps = d.coloring, d.stats.nodes, 0, 0
            elapsed = time.perf_counter() - start
            ok = col is not None and verify(G, col).valid
            rows.append(BenchRow(bundle.name, G.n, t, method, ok, nodes, steps, oracle_steps, elapsed, col))
    return rows


def run_bench(
    bundles: list[InstanceBundle],
    tmin: int = 3,
    tmax: int | None = None,
    methods: tuple[str, ...] = METHODS,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> list[BenchRow]:
    """Rows ordered by instance position, then t, then method, whatever ``jobs`` is."""
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}")
    work = [(b, tmin, tmax, tuple(methods), budget) for b in bundles]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_instance, work))
    else:
        chunks = [_run_instance(w) for w in work]
    return [row for chunk in chunks for row in chunk]


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow(r.as_csv())
    return buf.getvalue()
