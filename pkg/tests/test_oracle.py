import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arborite.coloring import verify
from arborite.generators import gen_fixture
from arborite.graph import build_graph
from arborite.oracle import BudgetExhausted, a_eq, a_star_eq, decide
from oracles import atlas_graphs, forest_masks, naive_exists, random_graph

C4 = gen_fixture("C:4").graph


def test_decide_c4():
    assert decide(C4, 1).no
    d = decide(C4, 2)
    assert d.yes and verify(C4, d.coloring).valid


def test_c4_two_colorings_counted_exhaustively():
    forest = forest_masks(C4)
    good = [m for m in range(16) if bin(m).count("1") == 2 and forest[m] and forest[15 ^ m]]
    assert good  # e.g. {0,2}|{1,3} and {0,1}|{2,3}
    assert naive_exists(C4, 2, forest)


def test_a_eq_examples():
    assert a_eq(gen_fixture("P:6").graph) == 1
    assert a_eq(C4) == 2
    K4 = gen_fixture("K:4").graph
    assert a_eq(K4) == 2
    assert decide(K4, 1).no


def test_a_star_eq_examples():
    assert a_star_eq(gen_fixture("star:5").graph) == 1
    assert a_star_eq(C4) == 2
    assert [decide(C4, t).status for t in range(1, 5)] == ["no", "yes", "yes", "yes"]
    K33 = gen_fixture("Knn:3").graph
    assert a_star_eq(K33) <= 2
    assert [decide(K33, t).yes for t in range(1, 7)] == [False] + [True] * 5


def test_every_atlas_graph_matches_naive_enumeration():
    for G in atlas_graphs(6):
        forest = forest_masks(G)
        for t in (1, 2, 3):
            d = decide(G, t)
            assert d.yes == naive_exists(G, t, forest), (G.sorted_edges(), t)
            if d.yes:
                assert verify(G, d.coloring).valid


@settings(max_examples=80, deadline=None)
@given(n=st.integers(1, 9), p=st.floats(0.1, 0.9), seed=st.integers(0, 10**6), t=st.integers(1, 4))
def test_decide_matches_naive_on_random_graphs(n, p, seed, t):
    G = random_graph(random.Random(seed), n, p)
    d = decide(G, t)
    assert d.yes == naive_exists(G, t)
    assert decide(G, t, symmetry=False).yes == d.yes


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 12), seed=st.integers(0, 10**6), extra=st.integers(0, 3))
def test_trivial_when_t_at_least_n(n, seed, extra):
    G = random_graph(random.Random(seed), n, 0.5)
    d = decide(G, n + extra)
    assert d.yes and d.stats.nodes == 0


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 9), seed=st.integers(0, 10**6))
def test_a_star_eq_dominates_a_eq(n, seed):
    G = random_graph(random.Random(seed), n, 0.6)
    lo, hi = a_eq(G), a_star_eq(G)
    assert lo <= hi
    assert all(decide(G, t).yes for t in range(hi, n + 1))
    assert hi == 1 or decide(G, hi - 1).no


def test_budget_reports_unknown():
    K8 = gen_fixture("K:8").graph
    d = decide(K8, 2, budget=3)
    assert d.status == "unknown" and d.stats.nodes > 3
    with pytest.raises(BudgetExhausted):
        a_eq(K8, budget=3)


def test_k_nn_a_eq_is_two():
    for n in (2, 3, 4):
        G = gen_fixture(f"Knn:{n}").graph
        assert a_eq(G) == 2


def test_size_pruning_only_explores_equitable_partitions():
    G = build_graph(5, [])
    d = decide(G, 2)
    assert sorted(d.coloring.sizes()) == [2, 3]
