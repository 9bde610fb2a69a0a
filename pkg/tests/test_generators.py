import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_triangles
from trifree import generators
from trifree.graph import check_triangle_free, degeneracy_order


def test_cycle():
    g = generators.cycle(5)
    assert (g.n, g.m) == (5, 5)
    assert check_triangle_free(g) is None
    with pytest.raises(ValueError):
        generators.cycle(2)


def test_complete_bipartite_degeneracy():
    assert degeneracy_order(generators.complete_bipartite(3, 3))[1] == 3


def test_petersen():
    g = generators.petersen()
    assert g.m == 15
    assert set(g.degrees()) == {3}
    assert brute_triangles(g.n, g.edges()) == []


def test_mycielski_of_k2_is_c5():
    g = generators.mycielski(generators.complete(2))
    assert (g.n, g.m) == (5, 5)
    assert set(g.degrees()) == {2}
    # connected: a walk from 0 reaches everything
    seen, stack = {0}, [0]
    while stack:
        for u in g.adjacency[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    assert len(seen) == 5


def test_grotzsch():
    g = generators.mycielski(generators.cycle(5))
    assert (g.n, g.m) == (11, 20)
    assert brute_triangles(g.n, g.edges()) == []


def test_mycielski_edgeless():
    g = generators.mycielski(generators.empty(3))
    assert (g.n, g.m) == (7, 3)
    assert all(g.degree(v) == 0 for v in range(3))
    assert g.degree(6) == 3


@settings(max_examples=40)
@given(st.integers(1, 12), st.integers(0, 30), st.integers(0, 2**32))
def test_mycielski_counts_and_triangle_freeness(n, m, seed):
    g, _ = generators.random_triangle_free(n, m, seed)
    h = generators.mycielski(g)
    h.validate()
    assert h.n == 2 * g.n + 1
    assert h.m == 3 * g.m + g.n
    assert h.adjacency[: g.n] and all(
        tuple(u for u in h.adjacency[v] if u < g.n) == g.adjacency[v] for v in range(g.n)
    )
    assert check_triangle_free(h) is None


def test_random_bipartite():
    g = generators.random_bipartite(3, 3, 1.0, 7)
    assert g.edges() == generators.complete_bipartite(3, 3).edges()
    assert generators.random_bipartite(5, 4, 0.5, 9) == generators.random_bipartite(5, 4, 0.5, 9)
    with pytest.raises(ValueError):
        generators.random_bipartite(2, 2, 1.5, 0)


@settings(max_examples=100)
@given(st.integers(0, 25), st.integers(0, 120), st.integers(0, 2**32))
def test_random_triangle_free(n, m, seed):
    g, placed = generators.random_triangle_free(n, m, seed)
    g.validate()
    assert placed == g.m <= m
    assert check_triangle_free(g) is None
    assert generators.random_triangle_free(n, m, seed)[0] == g


def test_random_bipartite_with_degeneracy_hits_target():
    for d in (3, 8, 15):
        g, _ = generators.random_bipartite_with_degeneracy(120, d, 4)
        assert degeneracy_order(g)[1] == d
        assert check_triangle_free(g) is None
