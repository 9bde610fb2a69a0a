"""Input validation shared by the samplers, oracles and estimators."""

from __future__ import annotations

import math
from numbers import Real

import numpy as np

from .graph import Graph, OrderedGraph, identity_order


def check_graph(g) -> Graph:
    if not isinstance(g, Graph):
        raise TypeError(f"expected a Graph, got {type(g).__name__}")
    return g


def check_ordered(og) -> OrderedGraph:
    """Accept an ``OrderedGraph``, or a bare ``Graph`` in identity order."""
    if isinstance(og, OrderedGraph):
        return og
    if isinstance(og, Graph):
        return identity_order(og)
    raise TypeError(f"expected an OrderedGraph, got {type(og).__name__}")


def check_weights(w0, n: int) -> np.ndarray:
    """Return ``w0`` as a float array of length ``n`` with finite positive entries.

    A scalar is broadcast to every vertex.
    """
    if isinstance(w0, Real):
        arr = np.full(n, float(w0))
    else:
        arr = np.asarray(w0, dtype=float)
        if arr.shape != (n,):
            raise ValueError(f"expected {n} initial weights, got shape {arr.shape}")
    bad = np.flatnonzero(~(np.isfinite(arr) & (arr > 0)))
    if bad.size:
        v = int(bad[0])
        raise ValueError(f"initial weight of vertex {v} must be finite and positive, got {arr[v]!r}")
    return arr


def check_target(og: OrderedGraph, target: int) -> int:
    if not isinstance(target, (int, np.integer)) or not 0 <= target < og.n:
        raise ValueError(f"target must be a vertex in 0..{og.n - 1}, got {target!r}")
    return int(target)


def check_probabilities(p, n: int) -> np.ndarray:
    if isinstance(p, Real):
        arr = np.full(n, float(p))
    else:
        arr = np.asarray(p, dtype=float)
        if arr.shape != (n,):
            raise ValueError(f"expected {n} probabilities, got shape {arr.shape}")
    bad = [v for v, x in enumerate(arr) if math.isnan(x) or not 0.0 <= x <= 1.0]
    if bad:
        raise ValueError(f"p({bad[0]}) = {arr[bad[0]]!r} is outside [0, 1]")
    return arr
