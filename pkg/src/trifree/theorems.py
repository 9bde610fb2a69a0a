"""Instantiations of the inclusion guarantees: condition checks, weights and bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exact import PreconditionError
from .graph import Graph, OrderedGraph, check_triangle_free, degeneracy_order, order_by_decreasing_degree
from .validation import check_ordered, check_probabilities, check_target, check_weights

ALPHA = -math.expm1(-0.5) / 2


class ConditionViolation(ValueError):
    def __init__(self, vertex: int, lhs: float, rhs: float):
        super().__init__(f"condition fails at vertex {vertex}: p = {lhs!r} > {rhs!r}")
        self.vertex = vertex
        self.lhs = lhs
        self.rhs = rhs


class InfeasibleError(ValueError):
    pass


def bound_factor(epsilon: float) -> float:
    """``(1 - exp(-eps)) / (2 eps)``."""
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    return -math.expm1(-epsilon) / (2 * epsilon)


def linearization_gap(epsilon: float, num: int = 1001) -> float:
    """Smallest ``(1 - exp(-y)) - (1 - exp(-eps)) / eps * y`` over a grid on ``[0, eps]``.

    Concavity of ``1 - exp(-y)`` makes this nonnegative.
    """
    y = np.linspace(0.0, epsilon, num)
    return float(np.min(-np.expm1(-y) - (-math.expm1(-epsilon) / epsilon) * y))


def _condition_lhs(w0k: float, left_sum: float) -> float:
    try:
        return math.exp(math.log(w0k) + 2.0 * left_sum)
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class MainprocInstance:
    epsilon: float
    target: int
    condition_lhs: float
    bound: float

    @property
    def valid(self) -> bool:
        return self.condition_lhs <= self.epsilon

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "targetVertex": self.target,
            "conditionLHS": self.condition_lhs,
            "bound": self.bound,
            "valid": self.valid,
        }


def mainproc_check_and_bound(og: OrderedGraph, w0, target: int, epsilon: float) -> MainprocInstance:
    """Evaluate ``w0(v) exp(2 sum_{left} w0)`` against ``epsilon`` and the resulting bound.

    Invalid instances are returned with ``valid == False`` rather than rejected.
    """
    og = check_ordered(og)
    w = check_weights(w0, og.n)
    target = check_target(og, target)
    left_sum = math.fsum(w[u] for u in og.left[target])
    lhs = _condition_lhs(float(w[target]), left_sum)
    return MainprocInstance(float(epsilon), target, lhs, bound_factor(epsilon) * float(w[target]))


def main_weight(d: int) -> float:
    """The constant initial weight ``(ln d - 2 ln ln d) / (2d)``."""
    if d < 3:
        raise PreconditionError(f"degeneracy must be at least 3, got {d}")
    ld = math.log(d)
    return (ld - 2 * math.log(ld)) / (2 * d)


def main_epsilon(d: int) -> float:
    if d < 3:
        raise PreconditionError(f"degeneracy must be at least 3, got {d}")
    return 1.0 / (2 * math.log(d))


def main_bound(d: int) -> float:
    return bound_factor(main_epsilon(d)) * main_weight(d)


def _require_triangle_free(g: Graph) -> None:
    tri = check_triangle_free(g)
    if tri is not None:
        raise PreconditionError(f"graph has a triangle {tri}")


@dataclass
class MainDriverResult:
    ordered_graph: OrderedGraph = field(repr=False)
    degeneracy: int
    w0: float
    epsilon: float
    condition_lhs: np.ndarray = field(repr=False)
    bound: float

    @property
    def conditions_hold(self) -> bool:
        return bool(np.all(self.condition_lhs <= self.epsilon))

    @property
    def chi_f_upper_bound(self) -> float:
        return 1.0 / self.bound

    def to_dict(self) -> dict:
        return {
            "degeneracy": self.degeneracy,
            "w0": self.w0,
            "epsilon": self.epsilon,
            "bound": self.bound,
            "chiFUpperBound": self.chi_f_upper_bound,
            "maxConditionLHS": float(self.condition_lhs.max(initial=0.0)),
            "conditionsHold": self.conditions_hold,
        }


def theorem_main_driver(g: Graph) -> MainDriverResult:
    """Constant weights on a degeneracy order of a triangle-free graph.

    Every vertex gets the same lower bound ``(1 - exp(-eps))/(2 eps) * w0``
    with ``eps = 1/(2 ln d)``; its reciprocal bounds ``chi_f``.
    """
    _require_triangle_free(g)
    og, d = degeneracy_order(g)
    w0 = main_weight(d)
    eps = main_epsilon(d)
    lhs = np.array([_condition_lhs(w0, len(og.left[v]) * w0) for v in range(g.n)])
    if np.any(lhs > eps):
        v = int(np.argmax(lhs))
        raise ArithmeticError(f"condition {lhs[v]!r} > {eps!r} at vertex {v}")
    return MainDriverResult(og, d, w0, eps, lhs, bound_factor(eps) * w0)


@dataclass(frozen=True)
class ConditionRow:
    lhs: float
    rhs: float
    ok: bool


def maingen_condition_check(og: OrderedGraph, p, shrink: float = 1.0) -> list[ConditionRow]:
    """Compare ``p(v)`` with ``prod_{u left of v} (1 - p(u))`` at every vertex.

    ``shrink`` scales ``p`` first, for callers who want slack.
    """
    og = check_ordered(og)
    p = check_probabilities(p, og.n) * shrink
    rows = []
    for v in range(og.n):
        rhs = float(math.prod(1.0 - p[u] for u in og.left[v]))
        rows.append(ConditionRow(float(p[v]), rhs, bool(p[v] <= rhs)))
    return rows


@dataclass
class MaingenResult:
    ordered_graph: OrderedGraph = field(repr=False)
    p: np.ndarray
    w0: np.ndarray
    epsilon: float
    alpha: float
    per_vertex_bound: np.ndarray
    condition_lhs: np.ndarray

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "alpha": self.alpha,
            "p": self.p.tolist(),
            "w0": self.w0.tolist(),
            "perVertexBound": self.per_vertex_bound.tolist(),
            "conditionLHS": self.condition_lhs.tolist(),
        }


def maingen_driver(og: OrderedGraph, p, shrink: float = 1.0) -> MaingenResult:
    """Halved weights ``w0 = p/2`` with ``eps = 1/2``; per-vertex bound ``ALPHA * p``.

    Raises ``ConditionViolation`` at the worst vertex if the product
    condition fails.  Vertices with ``p = 0`` are rejected because the
    sampler needs positive weights.
    """
    og = check_ordered(og)
    rows = maingen_condition_check(og, p, shrink)
    bad = [(r.lhs - r.rhs, v) for v, r in enumerate(rows) if not r.ok]
    if bad:
        _, v = max(bad)
        raise ConditionViolation(v, rows[v].lhs, rows[v].rhs)
    pv = np.array([r.lhs for r in rows])
    if np.any(pv <= 0):
        raise ValueError(f"p must be positive to drive the sampler; p({int(np.argmin(pv))}) = 0")
    w0 = pv / 2
    lhs = np.array([_condition_lhs(w0[v], math.fsum(w0[u] for u in og.left[v])) for v in range(og.n)])
    return MaingenResult(og, pv, w0, 0.5, ALPHA, ALPHA * pv, lhs)


def shearer_p(g: Graph, c: float) -> np.ndarray:
    d = np.array(g.degrees(), dtype=float)
    return np.clip(c * np.log(d) / d, 0.0, 1.0)


def local_shearer_weights(g: Graph, c: float = 0.5, floor_divisor: int = 64):
    """``p(v) = c ln d(v) / d(v)`` on the decreasing-degree order, halving ``c`` until feasible.

    Returns ``(ordered_graph, p, c_used)`` for the largest feasible ``c``
    among ``c, c/2, ..., c/floor_divisor``.
    """
    if not c > 0:
        raise ValueError("c must be positive")
    _require_triangle_free(g)
    if g.n and min(g.degrees()) < 3:
        raise PreconditionError("local weights need minimum degree at least 3")
    og = order_by_decreasing_degree(g)
    floor = c / floor_divisor
    trial = c
    while trial >= floor:
        p = shearer_p(g, trial)
        if all(r.ok for r in maingen_condition_check(og, p)):
            return og, p, trial
        trial /= 2
    raise InfeasibleError(f"no feasible constant between {c} and {floor}")
