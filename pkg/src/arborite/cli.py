"""Command-line interface: ``arborite <subcommand> ...``.

Graph sources are a path to a graph6 file, a bundle/embedding JSON file, a
literal graph6 string, or ``fixture:<kind>`` (for example ``fixture:Knn:3``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .bench import corpus, rows_to_csv, run_bench
from .classes import girth, is_class_A, is_class_B
from .coloring import ColoringError, verify
from .discharging import SCHEMES, apply_rules, assign_initial, check_propositions, report_negative, total_charge
from .formats import FormatError, parse_coloring, parse_graph6, write_coloring
from .generators import GenerationError, InstanceBundle, gen_class_A, gen_class_B, gen_fixture, planar_embedding
from .graph import EmbeddingError, Graph, GraphError, PlaneEmbedding, build_graph, derive_faces
from .oracle import DEFAULT_BUDGET, BudgetExhausted, a_eq, a_star_eq, decide
from .reduction import solve


class UsageError(Exception):
    pass


@dataclass
class Source:
    graph: Graph
    embedding: PlaneEmbedding | None
    name: str


def default_seed() -> int:
    return int(os.environ.get("ARBORITE_SEED", "0"))


def load_source(arg: str) -> Source:
    if arg.startswith("fixture:"):
        b = gen_fixture(arg[len("fixture:"):])
        return Source(b.graph, b.embedding, arg)
    path = Path(arg)
    text = path.read_text() if path.is_file() else arg
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError:
            # JSON lines: take the first bundle
            obj = json.loads(stripped.splitlines()[0])
        g = build_graph(obj["n"], obj["edges"])
        emb = derive_faces(g, obj["rotation"]) if obj.get("rotation") is not None else None
        return Source(g, emb, obj.get("name", arg))
    first = next((ln for ln in stripped.splitlines() if ln.strip()), "")
    return Source(parse_graph6(first), None, arg)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _cycles(cert) -> list[list[int]] | None:
    return None if cert is None else [list(c.vertices) for c in cert]


# ---------------------------------------------------------------- subcommands


def cmd_check_class(args) -> int:
    src = load_source(args.graph)
    a, b = is_class_A(src.graph), is_class_B(src.graph)
    g = girth(src.graph)
    payload = {
        "n": src.graph.n,
        "m": src.graph.m,
        "girth": None if g == float("inf") else int(g),
        "min_degree": src.graph.min_degree(),
        "class_A": a.member,
        "class_A_certificate": _cycles(a.certificate),
        "class_B": b.member,
        "class_B_certificate": _cycles(b.certificate),
    }
    lines = [f"n={src.graph.n} m={src.graph.m} girth={payload['girth'] or 'inf'} min_degree={payload['min_degree']}"]
    for label, rep in (("class_A", a), ("class_B", b)):
        line = f"{label}={str(rep.member).lower()}"
        if not rep.member:
            line += f" ({rep.reason}: {_cycles(rep.certificate)})"
        lines.append(line)
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_color(args) -> int:
    src = load_source(args.graph)
    res = solve(src.graph, args.t, budget=args.steps, oracle_budget=args.budget)
    if args.trace:
        Path(args.trace).write_text(res.trace.to_text())
    if res.coloring is None:
        _emit(args, {"solved": False, "t": args.t}, f"no equitable {args.t}-tree-coloring exists")
        return 1
    text = write_coloring(res.coloring)
    if args.out:
        Path(args.out).write_text(text)
    payload = {
        "solved": True,
        "t": args.t,
        "coloring": {str(v): c for v, c in sorted(res.coloring.assignment.items())},
        "sizes": res.coloring.sizes(),
        "steps": len(res.trace.steps),
        "oracle_steps": res.trace.oracle_steps,
    }
    _emit(args, payload, text)
    return 0


def cmd_verify(args) -> int:
    src = load_source(args.graph)
    coloring = parse_coloring(Path(args.coloring).read_text())
    rep = verify(src.graph, coloring)
    payload = {
        "valid": rep.valid,
        "equitable": rep.equitable,
        "forests": rep.forests,
        "class_sizes": rep.class_sizes,
        "violations": [[k, [list(x) if isinstance(x, tuple) else x for x in w]] for k, w in rep.violations],
    }
    lines = [f"valid={str(rep.valid).lower()} equitable={str(rep.equitable).lower()} "
             f"forests={str(rep.forests).lower()} sizes={rep.class_sizes}"]
    lines += [f"violation {k} {w}" for k, w in rep.violations]
    _emit(args, payload, "\n".join(lines))
    return 0 if rep.valid else 1


def cmd_exact(args) -> int:
    src = load_source(args.graph)
    if args.t is None:
        value = a_eq(src.graph, args.budget)
        _emit(args, {"a_eq": value}, f"a_eq={value}")
        return 0
    d = decide(src.graph, args.t, args.budget)
    payload = {
        "status": d.status,
        "t": args.t,
        "nodes": d.stats.nodes,
        "size_prunes": d.stats.size_prunes,
        "cycle_prunes": d.stats.cycle_prunes,
        "coloring": None if d.coloring is None else {str(v): c for v, c in sorted(d.coloring.assignment.items())},
    }
    text = f"{d.status} t={args.t} nodes={d.stats.nodes}"
    if d.coloring is not None:
        text += "\n" + write_coloring(d.coloring)
    _emit(args, payload, text)
    return 0


def cmd_a_star_eq(args) -> int:
    src = load_source(args.graph)
    value = a_star_eq(src.graph, args.budget)
    payload = {"a_star_eq": value}
    if args.with_a_eq:
        payload["a_eq"] = a_eq(src.graph, args.budget)
    _emit(args, payload, str(value) if not args.with_a_eq else f"a_star_eq={value} a_eq={payload['a_eq']}")
    return 0


def cmd_audit(args) -> int:
    src = load_source(args.graph)
    emb = src.embedding or planar_embedding(src.graph)
    if emb is None:
        raise UsageError("audit needs a connected plane embedding; supply a rotation or a planar connected graph")
    ledger = apply_rules(emb, args.scheme) if not args.initial_only else assign_initial(emb, args.scheme)
    negatives = report_negative(ledger)
    props = check_propositions(emb.graph, emb)
    payload = {
        "scheme": args.scheme,
        "total": str(total_charge(ledger)),
        "euler_total": str(SCHEMES[args.scheme].euler_total),
        "charges": [[x[0], x[1], ledger.degree(x), str(ledger.initial[x]), str(ledger.charge[x])] for x in ledger.elements()],
        "transfers": [[tr.rule, list(tr.source), list(tr.target), str(tr.amount)] for tr in ledger.transfers],
        "negative": [[list(nc.element), str(nc.charge), sorted({f.condition for f in nc.diagnosis})] for nc in negatives],
        "failing_conditions": props.failing(),
    }
    text = ledger.to_text()
    text += f"negative {len(negatives)}\n"
    for nc in negatives:
        conds = ",".join(sorted({f.condition for f in nc.diagnosis})) or "-"
        text += f"{nc.element[0]} {nc.element[1]} {nc.charge.numerator}/{nc.charge.denominator} {conds}\n"
    _emit(args, payload, text)
    return 0


def cmd_gen(args) -> int:
    seed = default_seed() if args.seed is None else args.seed
    bundles: list[InstanceBundle] = []
    if args.kind == "fixture":
        if not args.fixture:
            raise UsageError("gen fixture needs --fixture KIND")
        bundles.append(gen_fixture(args.fixture))
    else:
        gen = gen_class_A if args.kind == "A" else gen_class_B
        if args.n is None:
            raise UsageError("gen A/B needs --n")
        bundles = [gen(args.n, seed + i) for i in range(args.count)]
    if args.known:
        for b in bundles:
            b.known = {
                "class_A": is_class_A(b.graph).member,
                "class_B": is_class_B(b.graph).member,
                "a_eq": a_eq(b.graph, args.budget),
                "a_star_eq": a_star_eq(b.graph, args.budget),
            }
    text = "".join(b.to_json() + "\n" for b in bundles)
    if args.out:
        Path(args.out).write_text(text)
    if args.json or not args.out:
        print(text, end="")
    return 0


def cmd_bench(args) -> int:
    seed = default_seed() if args.seed is None else args.seed
    if args.corpus:
        bundles = []
        for path in args.corpus:
            for i, line in enumerate(ln for ln in Path(path).read_text().splitlines() if ln.strip()):
                if line.lstrip().startswith("{"):
                    bundles.append(InstanceBundle.from_dict(json.loads(line)))
                else:
                    bundles.append(InstanceBundle(parse_graph6(line), provenance={"kind": f"{Path(path).stem}-{i}"}))
    else:
        bundles = corpus(args.graph_class, args.count, args.nmin, args.nmax, seed)
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    rows = run_bench(bundles, args.tmin, args.tmax, methods, args.budget, args.jobs)
    csv_text = rows_to_csv(rows)
    if args.csv:
        Path(args.csv).write_text(csv_text)
    figures = []
    if args.figures:
        from .plotting import render_bench_figures

        figures = [str(p) for p in render_bench_figures(rows, args.figures)]
    if args.json:
        print(json.dumps({
            "rows": [dict(zip(["instance", "n", "t", "method", "success", "nodes", "steps", "oracle_steps"],
                              [r.instance, r.n, r.t, r.method, r.success, r.nodes, r.steps, r.oracle_steps]))
                     for r in rows],
            "figures": figures,
        }, sort_keys=True))
    elif not args.csv:
        print(csv_text, end="")
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arborite", description="Equitable tree-colorings of graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str, graph: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, description=help)
        if graph:
            sp.add_argument("graph", help="graph6 file or string, bundle/embedding JSON, or fixture:<kind>")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    add("check-class", cmd_check_class, "report class A/B membership with certificates")

    sp = add("color", cmd_color, "equitable t-tree-coloring by reduction (exact search as fallback)")
    sp.add_argument("--t", type=int, required=True, help="number of colors")
    sp.add_argument("--trace", help="write the reduction trace to this file")
    sp.add_argument("--out", help="write the coloring to this file")
    sp.add_argument("--steps", type=int, default=None, help="recursion step budget (default 10n)")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node budget for exact search")

    sp = add("verify", cmd_verify, "check a coloring file; exit 0 iff valid")
    sp.add_argument("coloring", help='coloring file: "t=<t>" header, then "vertex color" lines')

    sp = add("exact", cmd_exact, "exact decision for one t, or a_eq when --t is omitted")
    sp.add_argument("--t", type=int, default=None)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node budget per decision")

    sp = add("a-star-eq", cmd_a_star_eq, "strong equitable vertex arboricity by exact search")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node budget per decision")
    sp.add_argument("--with-a-eq", action="store_true", help="also report a_eq")

    sp = add("audit", cmd_audit, "discharging ledger for a plane embedding")
    sp.add_argument("--scheme", choices=sorted(SCHEMES), required=True)
    sp.add_argument("--initial-only", action="store_true", help="skip the transfer rules")

    sp = add("gen", cmd_gen, "write instance bundles as JSON lines", graph=False)
    sp.add_argument("kind", choices=["A", "B", "fixture"])
    sp.add_argument("--n", type=int)
    sp.add_argument("--seed", type=int, default=None, help="base seed (default $ARBORITE_SEED or 0)")
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--fixture", help="fixture kind, e.g. Knn:3, C:5, Q3, star_P7")
    sp.add_argument("--known", action="store_true", help="attach class flags, a_eq and a_star_eq")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--out", help="output file (JSON lines)")

    sp = add("bench", cmd_bench, "sweep a corpus and emit CSV, optionally with figures", graph=False)
    sp.add_argument("--class", dest="graph_class", choices=["A", "B"], default="A")
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--nmin", type=int, default=6)
    sp.add_argument("--nmax", type=int, default=18)
    sp.add_argument("--seed", type=int, default=None, help="base seed (default $ARBORITE_SEED or 0)")
    sp.add_argument("--corpus", nargs="*", help="JSON-lines bundle files or graph6 files instead of generation")
    sp.add_argument("--tmin", type=int, default=3)
    sp.add_argument("--tmax", type=int, default=None)
    sp.add_argument("--methods", default="solver,oracle")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.add_argument("--csv", help="write CSV here instead of stdout")
    sp.add_argument("--figures", help="directory for PNG figures")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, GraphError, EmbeddingError, ColoringError, GenerationError,
            json.JSONDecodeError, KeyError, OSError, ValueError) as exc:
        print(f"arborite {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except BudgetExhausted as exc:
        print(f"arborite {args.command}: budget exhausted: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
