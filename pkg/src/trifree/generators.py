"""Deterministic and seeded generators of triangle-free benchmark graphs."""

from __future__ import annotations

import numpy as np

from .graph import Graph, degeneracy_order


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs at least one vertex")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty(n: int) -> Graph:
    return Graph.from_edges(n, [])


def star(leaves: int) -> Graph:
    """Star with centre 0 and leaves ``1..leaves``."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    """Sides ``0..a-1`` and ``a..a+b-1``."""
    if a < 1 or b < 1:
        raise ValueError("both sides must be nonempty")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def mycielski(g: Graph) -> Graph:
    """Mycielskian of ``g``.

    Vertices ``0..n-1`` are the originals (inducing ``g``), ``n..2n-1`` their
    shadows (shadow ``n+i`` is adjacent to the neighbours of ``i``) and
    ``2n`` is the apex joined to every shadow.
    """
    n = g.n
    edges = list(g.edges())
    for u, v in g.edges():
        edges.append((n + u, v))
        edges.append((n + v, u))
    edges.extend((n + i, 2 * n) for i in range(n))
    return Graph.from_edges(2 * n + 1, edges)


def grotzsch() -> Graph:
    return mycielski(cycle(5))


def random_bipartite(a: int, b: int, edge_prob: float, seed: int) -> Graph:
    """Each of the ``a*b`` cross pairs is an edge independently with ``edge_prob``."""
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError(f"edge_prob must lie in [0, 1], got {edge_prob}")
    if a < 0 or b < 0:
        raise ValueError("side sizes must be nonnegative")
    rng = np.random.default_rng(seed)
    mask = rng.random((a, b)) < edge_prob
    us, vs = np.nonzero(mask)
    return Graph.from_edges(a + b, zip(us.tolist(), (vs + a).tolist()))


def random_triangle_free(n: int, target_m: int, seed: int) -> tuple[Graph, int]:
    """Insert random non-edges that do not close a triangle.

    Sampling stops at ``target_m`` edges or after ``100 * n**2`` attempts.
    Returns the graph and its edge count, which can fall short of ``target_m``.
    """
    if n < 0 or target_m < 0:
        raise ValueError("n and target_m must be nonnegative")
    rng = np.random.default_rng(seed)
    nbrs: list[set[int]] = [set() for _ in range(n)]
    m = 0
    max_m = n * (n - 1) // 2
    attempts = 0
    cap = 100 * n * n
    while m < min(target_m, max_m) and attempts < cap:
        attempts += 1
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v or v in nbrs[u] or nbrs[u] & nbrs[v]:
            continue
        nbrs[u].add(v)
        nbrs[v].add(u)
        m += 1
    g = Graph(n, tuple(tuple(sorted(s)) for s in nbrs))
    return g, m


def random_bipartite_with_degeneracy(n: int, d: int, seed: int, iterations: int = 24) -> tuple[Graph, float]:
    """Random bipartite graph on ``n`` vertices whose degeneracy is as close to ``d`` as possible.

    Sides have sizes ``n // 2`` and ``n - n // 2``.  For a fixed seed the edge
    sets are nested in ``edge_prob``, so degeneracy is monotone in it and a
    bisection finds the smallest probability reaching ``d``.
    """
    a, b = n // 2, n - n // 2
    if not 0 <= d <= min(a, b):
        raise ValueError(f"degeneracy {d} unreachable for sides {a} and {b}")

    def degen(p):
        g = random_bipartite(a, b, p, seed)
        return g, degeneracy_order(g)[1]

    lo, hi = 0.0, 1.0
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if degen(mid)[1] >= d:
            hi = mid
        else:
            lo = mid
    g_lo, d_lo = degen(lo)
    g_hi, d_hi = degen(hi)
    if abs(d_lo - d) < abs(d_hi - d):
        return g_lo, lo
    return g_hi, hi
