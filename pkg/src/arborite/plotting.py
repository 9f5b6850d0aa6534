"""Figures for bench reports, written next to the CSV."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bench import BenchRow  # noqa: E402

STYLE = {
    "figure.figsize": (5.0, 3.4),
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "legend.fontsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def effort_by_size(rows: list[BenchRow], path: Path) -> Path:
    """Oracle nodes and solver steps against instance size, averaged over t."""
    acc: dict[str, dict[int, list[int]]] = {"oracle": defaultdict(list), "solver": defaultdict(list)}
    for r in rows:
        acc[r.method][r.n].append(r.nodes if r.method == "oracle" else r.steps)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for method, marker, label in (("oracle", "o", "exact search nodes"), ("solver", "s", "solver steps")):
            data = acc[method]
            if not data:
                continue
            ns = sorted(data)
            ax.plot(ns, [sum(data[n]) / len(data[n]) for n in ns], marker=marker, ms=3, lw=1, label=label)
        ax.set_xlabel("vertices n")
        ax.set_ylabel("mean work per (instance, t)")
        ax.set_yscale("symlog", linthresh=1)
        ax.legend(frameon=False)
        return _save(fig, path)


def fallback_by_t(rows: list[BenchRow], path: Path) -> Path:
    """Share of solver runs per t that needed no exact-search step."""
    total: dict[int, int] = defaultdict(int)
    pure: dict[int, int] = defaultdict(int)
    for r in rows:
        if r.method == "solver":
            total[r.t] += 1
            pure[r.t] += r.oracle_steps == 0
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ts = sorted(total)
        ax.bar(ts, [pure[t] / total[t] for t in ts], width=0.7, color="0.45")
        ax.set_ylim(0, 1.05)
        ax.set_xlabel("colors t")
        ax.set_ylabel("constructive share")
        return _save(fig, path)


def render_bench_figures(rows: list[BenchRow], outdir: str | Path) -> list[Path]:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [effort_by_size(rows, out / "bench_effort.png")]
    if any(r.method == "solver" for r in rows):
        paths.append(fallback_by_t(rows, out / "bench_fallback.png"))
    return paths
