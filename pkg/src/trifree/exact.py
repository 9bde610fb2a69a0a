"""Exact expectations of the weight process by enumerating every choice path.

Branches of probability zero are pruned, so a vertex whose weight has been
zeroed costs a single branch.  Enumeration is depth-first with the join
branch first, mutating one log-weight vector and undoing on the way back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graph import OrderedGraph, is_triangle_free
from .process import ZERO, boost, final_weight_gap, include_probability, inclusion_integrand, weight_of
from .validation import check_ordered, check_target, check_weights

DEFAULT_VERTEX_LIMIT = 20
DEFAULT_MAX_PATHS = 2**20


class EnumerationBudgetError(RuntimeError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ExactReport:
    per_vertex_inclusion: tuple[float, ...]
    path_count: int
    path_probability_sum: float
    truncation_step: int | None = None

    def to_dict(self) -> dict:
        return {
            "perVertexInclusion": list(self.per_vertex_inclusion),
            "pathCount": self.path_count,
            "pathProbabilitySum": self.path_probability_sum,
            "truncationStep": self.truncation_step,
        }


def _check_budget(random_steps: int, max_paths: int) -> None:
    if 2**random_steps > max_paths:
        raise EnumerationBudgetError(
            f"exact enumeration needs up to 2^{random_steps} = {2**random_steps} paths, "
            f"budget is {max_paths}"
        )


def _start(og, w0):
    og = check_ordered(og)
    return og, np.log(check_weights(w0, og.n)).tolist()


def exact_inclusion(
    og: OrderedGraph,
    w0,
    *,
    through: int | None = None,
    limit: int = DEFAULT_VERTEX_LIMIT,
    max_paths: int = DEFAULT_MAX_PATHS,
) -> ExactReport:
    """Exact ``P(v in I)`` for every vertex.

    With ``through=K`` only the first ``K`` steps are enumerated; the
    probabilities of vertices at positions ``>= K`` are then reported as NaN.
    """
    og, ell = _start(og, w0)
    steps = og.n if through is None else through
    if not 0 <= steps <= og.n:
        raise ValueError(f"through must lie in 0..{og.n}, got {through}")
    if steps > limit:
        raise EnumerationBudgetError(
            f"exact inclusion over {steps} steps exceeds the vertex limit {limit}; "
            f"it would need up to 2^{steps} paths"
        )
    _check_budget(steps, max_paths)

    order, right = og.order, og.right
    incl = [0.0] * og.n
    leaves = [0, 0.0]

    def rec(i: int, prob: float) -> None:
        if i == steps:
            leaves[0] += 1
            leaves[1] += prob
            return
        v = order[i]
        w = weight_of(ell[v])
        p_in = include_probability(w)
        p_out = math.exp(-w)
        nbrs = right[v]
        saved = [ell[j] for j in nbrs]
        if p_in > 0.0:
            incl[v] += prob * p_in
            for j in nbrs:
                ell[j] = ZERO
            rec(i + 1, prob * p_in)
            for j, x in zip(nbrs, saved):
                ell[j] = x
        if p_out > 0.0:
            for j in nbrs:
                ell[j] = boost(ell[j], w)
            rec(i + 1, prob * p_out)
            for j, x in zip(nbrs, saved):
                ell[j] = x

    rec(0, 1.0)
    if steps < og.n:
        for v in og.order[steps:]:
            incl[v] = math.nan
    return ExactReport(tuple(incl), leaves[0], leaves[1], through)


def _walk(og, ell, target, modified, on_leaf, on_node=None, max_paths=DEFAULT_MAX_PATHS):
    """Enumerate the steps before ``target`` and call ``on_leaf(prob, ell)``.

    In the modified walk the steps at left neighbours of ``target`` are
    deterministic multiplies.  ``on_node(t, prob, ell)`` sees every node
    after ``t`` steps.
    """
    k = og.position[target]
    nl = set(og.left[target]) if modified else set()
    _check_budget(k - len(nl), max_paths)
    order, right = og.order, og.right

    def rec(i: int, prob: float) -> None:
        if on_node is not None:
            on_node(i, prob, ell)
        if i == k:
            on_leaf(prob, ell)
            return
        v = order[i]
        w = weight_of(ell[v])
        nbrs = right[v]
        saved = [ell[j] for j in nbrs]
        if v in nl:
            for j in nbrs:
                ell[j] = boost(ell[j], w)
            rec(i + 1, prob)
            for j, x in zip(nbrs, saved):
                ell[j] = x
            return
        p_in = include_probability(w)
        p_out = math.exp(-w)
        if p_in > 0.0:
            for j in nbrs:
                ell[j] = ZERO
            rec(i + 1, prob * p_in)
            for j, x in zip(nbrs, saved):
                ell[j] = x
        if p_out > 0.0:
            for j in nbrs:
                ell[j] = boost(ell[j], w)
            rec(i + 1, prob * p_out)
            for j, x in zip(nbrs, saved):
                ell[j] = x

    rec(0, 1.0)


def exact_expectation_main(
    og: OrderedGraph, w0, target: int, f: Callable[[float], float], *, max_paths: int = DEFAULT_MAX_PATHS
) -> float:
    """``E[f(w_{k-1}(target))]`` under the weight process, for ``f(0) == 0``."""
    if f(0.0) != 0:
        raise ValueError("f must satisfy f(0) == 0")
    og, ell = _start(og, w0)
    target = check_target(og, target)
    terms = []
    _walk(og, ell, target, False, lambda p, e: terms.append(p * f(weight_of(e[target]))), max_paths=max_paths)
    return math.fsum(terms)


def exact_expectation_modified(
    og: OrderedGraph,
    w0,
    target: int,
    g: Callable[[float, float], float],
    *,
    max_paths: int = DEFAULT_MAX_PATHS,
) -> float:
    """``E[g(final comparison weight of target, X)]`` under the comparison process."""
    og, ell = _start(og, w0)
    target = check_target(og, target)
    nl = og.left[target]
    terms = []

    def leaf(p, e):
        X = math.fsum(weight_of(e[v]) for v in nl)
        terms.append(p * g(weight_of(e[target]), X))

    _walk(og, ell, target, True, leaf, max_paths=max_paths)
    return math.fsum(terms)


def _join_probability(x: float) -> float:
    return include_probability(x)


def verify_claim_procrel(og: OrderedGraph, w0, target: int) -> tuple[float, float, float]:
    """Change of measure with ``f(x) = 1 - exp(-x)``: ``(lhs, rhs, |lhs - rhs|)``."""
    lhs = exact_expectation_main(og, w0, target, _join_probability)
    rhs = exact_expectation_modified(og, w0, target, lambda wk, X: _join_probability(wk) * math.exp(-X))
    return lhs, rhs, abs(lhs - rhs)


def _require_triangle_free(og: OrderedGraph) -> None:
    if not is_triangle_free(og.graph):
        raise PreconditionError(
            "the martingale property of the left-neighbour weights requires a triangle-free graph"
        )


def _mass_walk(og, ell, target, on_node, max_paths=DEFAULT_MAX_PATHS):
    """Enumerate the comparison process carrying ``P(path) * w~(u)`` for each left neighbour ``u``.

    The products are propagated directly: on a multiply branch at a left
    neighbour of ``u`` the factors ``exp(-w)`` and ``exp(w)`` cancel exactly.
    Keeping them apart loses these paths once ``w`` overflows, which happens
    for order-one initial weights because weights compound along the order.
    ``on_node(t, masses)`` sees every node after ``t`` steps.
    """
    k = og.position[target]
    nl = og.left[target]
    nl_set = set(nl)
    _check_budget(k - len(nl), max_paths)
    order, right = og.order, og.right

    def rec(i: int, prob: float, masses: list) -> None:
        on_node(i, masses)
        if i == k:
            return
        v = order[i]
        w = weight_of(ell[v])
        nbrs = right[v]
        hit = [u in nbrs for u in nl]
        saved = [ell[j] for j in nbrs]
        if v in nl_set:
            grow = weight_of(w)
            for j in nbrs:
                ell[j] = boost(ell[j], w)
            rec(i + 1, prob, [m * grow if h else m for m, h in zip(masses, hit)])
            for j, x in zip(nbrs, saved):
                ell[j] = x
            return
        p_in = include_probability(w)
        p_out = math.exp(-w)
        in_masses = [0.0 if h else m * p_in for m, h in zip(masses, hit)]
        if prob * p_in > 0.0 or any(in_masses):
            for j in nbrs:
                ell[j] = ZERO
            rec(i + 1, prob * p_in, in_masses)
            for j, x in zip(nbrs, saved):
                ell[j] = x
        out_masses = [m if h else m * p_out for m, h in zip(masses, hit)]
        if prob * p_out > 0.0 or any(out_masses):
            for j in nbrs:
                ell[j] = boost(ell[j], w)
            rec(i + 1, prob * p_out, out_masses)
            for j, x in zip(nbrs, saved):
                ell[j] = x

    rec(0, 1.0, [weight_of(ell[u]) for u in nl])


def martingale_means(og: OrderedGraph, w0, target: int) -> dict[int, list[float]]:
    """``E[w~_t(u)]`` for ``t = 0..k`` and every left neighbour ``u`` of ``target``."""
    og, ell = _start(og, w0)
    target = check_target(og, target)
    _require_triangle_free(og)
    k = og.position[target]
    nl = og.left[target]
    acc = [[[] for _ in range(k + 1)] for _ in nl]

    def node(t, masses):
        for a, m in zip(acc, masses):
            a[t].append(m)

    _mass_walk(og, ell, target, node)
    return {u: [math.fsum(col) for col in cols] for u, cols in zip(nl, acc)}


def verify_claim_martingale(og: OrderedGraph, w0, target: int) -> float:
    """Largest ``|E[w~_t(u)] - w0(u)|`` over steps ``t`` and left neighbours ``u``."""
    og = check_ordered(og)
    w = check_weights(w0, og.n)
    means = martingale_means(og, w, target)
    return max((abs(m - w[u]) for u, ms in means.items() for m in ms), default=0.0)


def expected_x(og: OrderedGraph, w0, target: int) -> float:
    """``E[X]``, summing the final path masses of the left neighbours."""
    og, ell = _start(og, w0)
    target = check_target(og, target)
    k = og.position[target]
    terms = []

    def node(t, masses):
        if t == k:
            terms.extend(masses)

    _mass_walk(og, ell, target, node)
    return math.fsum(terms)


def verify_claim_ex(og: OrderedGraph, w0, target: int) -> tuple[float, float, float]:
    """``(E[X], sum of w0 over left neighbours, |difference|)``."""
    og = check_ordered(og)
    w = check_weights(w0, og.n)
    ex = expected_x(og, w, target)
    expected = math.fsum(w[u] for u in og.left[check_target(og, target)])
    return ex, expected, abs(ex - expected)


def verify_claim_finalweight(og: OrderedGraph, w0, target: int) -> float:
    """Largest relative gap between ``w~(target)`` and ``w0(target) * exp(X)`` over all paths with finite X.

    When both sides overflow they are taken to agree.
    """
    og, ell = _start(og, w0)
    target = check_target(og, target)
    w0k = weight_of(ell[target])
    nl = og.left[target]
    worst = [0.0]

    def leaf(p, e):
        X = math.fsum(weight_of(e[v]) for v in nl)
        if math.isinf(X):
            return
        worst[0] = max(worst[0], final_weight_gap(weight_of(e[target]), w0k, X))

    _walk(og, ell, target, True, leaf)
    return worst[0]


def verify_claim_vkini(og: OrderedGraph, w0, target: int) -> tuple[float, float, float]:
    """Exact ``P(target in I)`` against the expectation of the inclusion integrand."""
    og = check_ordered(og)
    w = check_weights(w0, og.n)
    target = check_target(og, target)
    k = og.position[target]
    direct = exact_inclusion(og, w, through=k + 1).per_vertex_inclusion[target]
    w0k = float(w[target])
    via_x = exact_expectation_modified(og, w, target, lambda wk, X: inclusion_integrand(w0k, X))
    return direct, via_x, abs(direct - via_x)


def draw_verification_weights(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform weights on ``(0, 0.7]``."""
    return 0.7 * (1.0 - rng.random(n))


def verify_all_claims(og: OrderedGraph, w0, target: int) -> dict[str, float]:
    """Deviation of every identity for one target (martingale only on triangle-free graphs)."""
    og = check_ordered(og)
    out = {
        "procrel": verify_claim_procrel(og, w0, target)[2],
        "EX": verify_claim_ex(og, w0, target)[2] if is_triangle_free(og.graph) else math.nan,
        "finalweight": verify_claim_finalweight(og, w0, target),
        "vkinI": verify_claim_vkini(og, w0, target)[2],
    }
    out["martingale"] = verify_claim_martingale(og, w0, target) if is_triangle_free(og.graph) else math.nan
    return out
