"""Exact fractional chromatic number of small graphs.

The covering LP ``min sum_S x_S  s.t.  sum_{S containing v} x_S >= 1`` is
taken over maximal independent sets only.  This loses nothing: replacing
each independent set in a feasible solution by a maximal superset keeps the
objective and can only raise coverage.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .graph import Graph
from .simplex import maximize

DEFAULT_CAP = 10**6


class EnumerationCapError(RuntimeError):
    def __init__(self, cap: int, found: int):
        super().__init__(f"more than {cap} maximal independent sets (stopped after {found})")
        self.cap = cap
        self.found = found


@dataclass(frozen=True)
class IndependentSetFamily:
    sets: tuple[tuple[int, ...], ...]
    maximal_only: bool = True

    def __len__(self) -> int:
        return len(self.sets)


def _masks(g: Graph) -> list[int]:
    return [sum(1 << u for u in g.adjacency[v]) for v in range(g.n)]


def _bron_kerbosch(n: int, nbr: list[int], cap: int) -> list[int]:
    """Maximal cliques of the graph whose neighbourhood bitmasks are ``nbr``."""
    found: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            if len(found) >= cap:
                raise EnumerationCapError(cap, len(found))
            found.append(r)
            return
        px = p | x
        pivot, best = -1, -1
        while px:
            low = px & -px
            u = low.bit_length() - 1
            c = (p & nbr[u]).bit_count()
            if c > best:
                pivot, best = u, c
            px ^= low
        cand = p & ~nbr[pivot]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            expand(r | low, p & nbr[v], x & nbr[v])
            p &= ~low
            x |= low
            cand ^= low

    expand(0, (1 << n) - 1, 0)
    return found


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def enumerate_maximal_independent_sets(g: Graph, cap: int = DEFAULT_CAP) -> IndependentSetFamily:
    """All maximal independent sets, as maximal cliques of the complement."""
    full = (1 << g.n) - 1
    comp = [full & ~(m | (1 << v)) for v, m in enumerate(_masks(g))]
    found = _bron_kerbosch(g.n, comp, cap)
    return IndependentSetFamily(tuple(sorted(_bits(r) for r in found)))


def maximal_cliques(g: Graph, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    return sorted(_bits(r) for r in _bron_kerbosch(g.n, _masks(g), cap))


def independence_number(g: Graph, cap: int = DEFAULT_CAP) -> int:
    return max((len(s) for s in enumerate_maximal_independent_sets(g, cap).sets), default=0)


def clique_number(g: Graph, cap: int = DEFAULT_CAP) -> int:
    return max((len(c) for c in maximal_cliques(g, cap)), default=0)


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class FractionalColoring:
    """Nonnegative weights on independent sets covering every vertex at least once."""

    weights: Mapping[tuple[int, ...], Fraction]
    value: Fraction

    def coverage(self, n: int) -> list[Fraction]:
        cov = [Fraction(0)] * n
        for s, x in self.weights.items():
            for v in s:
                cov[v] += x
        return cov

    def verify(self, g: Graph) -> None:
        """Re-check the certificate in exact arithmetic; raise ``ValueError`` if it fails."""
        if sum(self.weights.values(), Fraction(0)) != self.value:
            raise ValueError("certificate weights do not sum to its value")
        for s, x in self.weights.items():
            if x < 0:
                raise ValueError(f"negative weight on {s}")
            if not g.is_independent(s):
                raise ValueError(f"{s} is not independent")
        for v, c in enumerate(self.coverage(g.n)):
            if c < 1:
                raise ValueError(f"vertex {v} covered only {c}")

    def to_dict(self) -> dict:
        return {
            "value": _fraction_str(self.value),
            "sets": [
                {"vertices": list(s), "weight": _fraction_str(x)}
                for s, x in sorted(self.weights.items())
            ],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "FractionalColoring":
        weights = {tuple(e["vertices"]): Fraction(e["weight"]) for e in d["sets"]}
        return cls(weights, Fraction(d["value"]))


def fractional_chromatic_number(g: Graph, cap: int = DEFAULT_CAP) -> tuple[Fraction, FractionalColoring]:
    """Exact ``chi_f(g)`` and an optimal fractional colouring.

    Solves the dual packing LP (vertex weights, at most 1 on every maximal
    independent set); its optimal multipliers are the colouring weights.
    """
    family = enumerate_maximal_independent_sets(g, cap)
    rows = []
    for s in family.sets:
        row = [0] * g.n
        for v in s:
            row[v] = 1
        rows.append(row)
    sol = maximize([1] * g.n, rows, [1] * len(rows))
    weights = {s: y for s, y in zip(family.sets, sol.duals) if y != 0}
    cert = FractionalColoring(weights, sum(weights.values(), Fraction(0)))
    cert.verify(g)
    if cert.value != sol.value:
        raise ArithmeticError(f"primal {cert.value} and dual {sol.value} optima disagree")
    return cert.value, cert


def chi_f_upper_bound_from_inclusion(q: Iterable):
    """``1 / min q``: the bound certified by a distribution with inclusion ``>= q(v)``."""
    q = list(q)
    if not q:
        raise ValueError("need at least one inclusion bound")
    for v, x in enumerate(q):
        if not x > 0:
            raise ValueError(f"inclusion bound of vertex {v} must be positive, got {x!r}")
        if x > 1:
            raise ValueError(f"inclusion bound of vertex {v} exceeds 1: {x!r}")
    low = min(q)
    if isinstance(low, Rational):
        return 1 / Fraction(low)
    return 1.0 / float(low)
