import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arborite.coloring import (
    ColoringError,
    PreconditionError,
    TreeColoring,
    distinct_color_base,
    equitable_size_bounds,
    lemma1_extend,
    verify,
)
from arborite.generators import gen_fixture
from arborite.graph import build_graph, induces_forest
from instances import lemma1_triple

C4 = gen_fixture("C:4").graph
K4 = gen_fixture("K:4").graph


def test_size_bounds_examples():
    assert equitable_size_bounds(7, 3) == (2, 3, [3, 2, 2])
    assert equitable_size_bounds(6, 3)[2] == [2, 2, 2]
    assert equitable_size_bounds(2, 5)[2] == [1, 1, 0, 0, 0]


@given(n=st.integers(0, 300), t=st.integers(1, 40))
def test_size_bounds_partition_n(n, t):
    lo, hi, sizes = equitable_size_bounds(n, t)
    assert sum(sizes) == n and len(sizes) == t
    assert set(sizes) <= {lo, hi} and hi - lo <= 1


def test_verify_examples():
    assert verify(C4, TreeColoring(2, {0: 1, 2: 1, 1: 2, 3: 2})).valid
    rep = verify(C4, TreeColoring(1, dict.fromkeys(range(4), 1)))
    assert not rep.valid and not rep.forests and rep.equitable
    kind, (color, cycle) = rep.violations[0]
    assert kind == "cycle" and color == 1 and sorted(cycle) == [0, 1, 2, 3]
    P4 = gen_fixture("P:4").graph
    rep = verify(P4, TreeColoring(2, {0: 1, 1: 1, 2: 1, 3: 2}))
    assert not rep.valid and not rep.equitable and rep.forests
    assert rep.class_sizes == [3, 1]


def test_coloring_must_be_total_and_in_range():
    with pytest.raises(ColoringError):
        verify(C4, TreeColoring(2, {0: 1, 1: 2, 2: 1}))
    with pytest.raises(ColoringError):
        TreeColoring(2, {0: 3})
    with pytest.raises(ColoringError):
        TreeColoring(0, {})


def test_distinct_color_base_examples():
    assert verify(K4, distinct_color_base(K4, 4)).class_sizes == [1, 1, 1, 1]
    K1 = build_graph(1, [])
    c = distinct_color_base(K1, 3)
    assert verify(K1, c).valid and c.sizes() == [1, 0, 0]
    with pytest.raises(ColoringError):
        distinct_color_base(K4, 3)


def test_lemma1_all_vertices_in_S():
    c = lemma1_extend(K4, [0, 1, 2, 3], TreeColoring(4, {}))
    assert sorted(c.assignment.values()) == [1, 2, 3, 4] and verify(K4, c).valid


def test_lemma1_bound_violation_names_index():
    # x_1 = 0 has two neighbours outside S
    G = build_graph(5, [(0, 3), (0, 4), (1, 2)])
    base = TreeColoring(3, {3: 1, 4: 2})
    with pytest.raises(PreconditionError) as info:
        lemma1_extend(G, [0, 1, 2], base)
    assert info.value.index == 1


def test_lemma1_rejects_bad_base():
    G, S, base = lemma1_triple(random.Random(5), t=3, rest=6)
    wrong = TreeColoring(3, {v: 1 for v in base.assignment})
    with pytest.raises(PreconditionError):
        lemma1_extend(G, S, wrong)
    partial = TreeColoring(3, dict(list(base.assignment.items())[1:]))
    with pytest.raises(PreconditionError):
        lemma1_extend(G, S, partial)


def test_lemma1_worked_case_n_equals_2t():
    rng = random.Random(11)
    for t in range(1, 8):
        G, S, base = lemma1_triple(rng, t=t, rest=t)
        assert G.n == 2 * t
        assert verify(G, lemma1_extend(G, S, base)).valid


@settings(max_examples=300, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_lemma1_output_verifies(seed):
    G, S, base = lemma1_triple(random.Random(seed))
    c = lemma1_extend(G, S, base)
    assert verify(G, c).valid
    # base colors are untouched and S uses every color once
    assert all(c[v] == base[v] for v in base.assignment)
    assert sorted(c[x] for x in S) == list(range(1, base.t + 1))


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_verify_agrees_with_definition(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 9)
    t = rng.randint(1, 4)
    G = build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4])
    c = TreeColoring(t, {v: rng.randint(1, t) for v in range(n)})
    sizes = [sum(1 for v in range(n) if c[v] == k) for k in range(1, t + 1)]
    expected = max(sizes) - min(sizes) <= 1 and all(
        induces_forest(G, [v for v in range(n) if c[v] == k]) for k in range(1, t + 1)
    )
    assert verify(G, c).valid == expected


def test_relabel_and_restrict():
    c = TreeColoring(2, {0: 1, 1: 2, 2: 1})
    assert c.restrict([0, 2]).assignment == {0: 1, 2: 1}
    assert c.relabel([5, 6, 7]).assignment == {5: 1, 6: 2, 7: 1}
