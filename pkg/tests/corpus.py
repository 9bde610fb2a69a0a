"""Isomorph-free triangle-free graphs for exhaustive checks."""

from functools import lru_cache

import networkx as nx

from trifree import generators
from trifree.graph import Graph


def _extensions(h: nx.Graph):
    """Add one vertex joined to each independent subset of ``h``."""
    n = h.number_of_nodes()
    nodes = list(range(n))
    for mask in range(1 << n):
        sub = [v for v in nodes if mask >> v & 1]
        if any(h.has_edge(a, b) for i, a in enumerate(sub) for b in sub[i + 1:]):
            continue
        g = h.copy()
        g.add_node(n)
        g.add_edges_from((n, v) for v in sub)
        yield g


@lru_cache(maxsize=None)
def triangle_free_graphs(n: int) -> tuple:
    """All triangle-free graphs on ``n`` vertices up to isomorphism (as networkx graphs)."""
    if n == 1:
        g = nx.Graph()
        g.add_node(0)
        return (g,)
    buckets: dict[str, list[nx.Graph]] = {}
    for h in triangle_free_graphs(n - 1):
        for g in _extensions(h):
            key = nx.weisfeiler_lehman_graph_hash(g, iterations=3)
            bucket = buckets.setdefault(key, [])
            if not any(nx.is_isomorphic(g, other) for other in bucket):
                bucket.append(g)
    return tuple(g for b in buckets.values() for g in b)


def to_graph(h: nx.Graph) -> Graph:
    return Graph.from_edges(h.number_of_nodes(), h.edges())


def connected_triangle_free(max_n: int = 8) -> list[Graph]:
    out = []
    for n in range(1, max_n + 1):
        out.extend(to_graph(h) for h in triangle_free_graphs(n) if nx.is_connected(h))
    return out


def acceptance_corpus() -> list[tuple[str, Graph]]:
    named = [(f"tf{i}_n{g.n}_m{g.m}", g) for i, g in enumerate(connected_triangle_free(8))]
    named.append(("petersen", generators.petersen()))
    named.append(("grotzsch", generators.grotzsch()))
    return named
