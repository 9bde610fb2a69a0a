"""Undirected simple graphs, vertex orderings and their left/right neighbourhoods."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    Build with :meth:`from_edges`; the constructor trusts its input.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    _sets: tuple[frozenset, ...] = field(repr=False, compare=False, default=())

    def __post_init__(self):
        if not self._sets:
            object.__setattr__(self, "_sets", tuple(frozenset(a) for a in self.adjacency))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._sets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(not (self._sets[u] & vs) for u in vs)

    def validate(self) -> None:
        """Raise ``ValueError`` if the adjacency structure is not a simple graph."""
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency length differs from n")
        for v, nb in enumerate(self.adjacency):
            if list(nb) != sorted(set(nb)):
                raise ValueError(f"adjacency of {v} not sorted or has duplicates")
            for u in nb:
                if u == v:
                    raise ValueError(f"self-loop at vertex {v}")
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} of {v} out of range")
                if v not in self._sets[u]:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")


@dataclass(frozen=True)
class OrderedGraph:
    """A graph together with a vertex ordering.

    ``order[i]`` is the vertex at position ``i``; ``position[v]`` inverts it.
    ``left[v]`` holds the neighbours placed before ``v`` and ``right[v]`` those
    after it, both sorted by position.
    """

    graph: Graph
    order: tuple[int, ...]
    position: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.graph.n

    def max_left_degree(self) -> int:
        return max((len(nl) for nl in self.left), default=0)


def order_by(g: Graph, order: Sequence[int]) -> OrderedGraph:
    """Order ``g`` so that ``order[i]`` is the vertex at position ``i``."""
    order = tuple(int(v) for v in order)
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    position = [0] * g.n
    for i, v in enumerate(order):
        position[v] = i
    left, right = [], []
    for v in range(g.n):
        nb = sorted(g.adjacency[v], key=position.__getitem__)
        left.append(tuple(u for u in nb if position[u] < position[v]))
        right.append(tuple(u for u in nb if position[u] > position[v]))
    return OrderedGraph(g, order, tuple(position), tuple(left), tuple(right))


def identity_order(g: Graph) -> OrderedGraph:
    return order_by(g, range(g.n))


def removal_sequence(g: Graph) -> list[int]:
    """Repeatedly delete a minimum-degree vertex (smallest id on ties)."""
    deg = g.degrees()
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * g.n
    seq = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        seq.append(v)
        for u in g.adjacency[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return seq


def degeneracy_order(g: Graph) -> tuple[OrderedGraph, int]:
    """Degeneracy ordering and the degeneracy ``d``.

    The ordering is the reverse of the min-degree removal sequence, so every
    vertex has at most ``d`` neighbours to its left.
    """
    og = order_by(g, removal_sequence(g)[::-1])
    return og, og.max_left_degree()


def order_by_decreasing_degree(g: Graph) -> OrderedGraph:
    return order_by(g, sorted(range(g.n), key=lambda v: (-g.degree(v), v)))


def check_triangle_free(g: Graph) -> tuple[int, int, int] | None:
    """Return a triangle ``(u, v, w)`` with ``u < v < w``, or ``None`` if there is none."""
    for u in range(g.n):
        su = g._sets[u]
        for v in g.adjacency[u]:
            if v <= u:
                continue
            common = [w for w in g.adjacency[v] if w > v and w in su]
            if common:
                return (u, v, common[0])
    return None


def is_triangle_free(g: Graph) -> bool:
    return check_triangle_free(g) is None


def local_triangle_bound(og: OrderedGraph) -> int:
    """Largest number of triangles in which a single vertex comes last."""
    g = og.graph
    best = 0
    for v in range(og.n):
        nl = og.left[v]
        count = sum(1 for a, b in combinations(nl, 2) if g.has_edge(a, b))
        best = max(best, count)
    return best
