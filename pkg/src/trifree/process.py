"""The randomized weight process and its coupled comparison process.

Weights live in the log domain: ``ell = log(weight)``, with ``-inf`` for an
absorbed zero weight and ``+inf`` for a saturated one.  Multiplying a weight
by ``exp(w)`` is then ``ell += w``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import OrderedGraph
from .validation import check_ordered, check_target, check_weights

ZERO = -math.inf


def weight_of(ell: float) -> float:
    """``exp(ell)``, saturating to ``inf`` instead of raising."""
    try:
        return math.exp(ell)
    except OverflowError:
        return math.inf


def include_probability(w: float) -> float:
    """``1 - exp(-w)`` without cancellation for small ``w``."""
    return -math.expm1(-w)


def boost(ell: float, w: float) -> float:
    if ell == ZERO:
        return ZERO
    return ell + w


@dataclass(frozen=True)
class SampleOutcome:
    """One run of the process.

    ``choices[i]`` is 1 when the vertex at position ``i`` joined the set and 2
    otherwise.  ``final_weights`` is indexed by vertex id.
    """

    independent_set: frozenset
    choices: tuple[int, ...]
    final_weights: tuple[float, ...]


@dataclass(frozen=True)
class ModifiedOutcome:
    """One run of the comparison process up to the step before ``target``.

    ``choices`` has one entry per step; steps at left neighbours of the
    target are deterministic and recorded as ``None``.
    """

    target: int
    X: float
    final_weights: tuple[float, ...]
    choices: tuple[int | None, ...]

    def final_weight_gap(self, w0k: float) -> float:
        """Relative gap between the target's final weight and ``w0k * exp(X)``."""
        return final_weight_gap(self.final_weights[self.target], w0k, self.X)


def final_weight_gap(actual: float, w0k: float, X: float) -> float:
    """Relative gap between ``actual`` and ``w0k * exp(X)``; two overflowed values agree."""
    expected = weight_of(math.log(w0k) + X)
    if math.isinf(expected) or math.isinf(actual):
        return 0.0 if actual == expected else math.inf
    return abs(actual - expected) / expected


def _uniform_stream(n: int, rng, uniforms) -> Sequence[float]:
    if uniforms is not None:
        if len(uniforms) < n:
            raise ValueError(f"need {n} uniforms, got {len(uniforms)}")
        return uniforms
    if rng is None or isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(rng)
    return rng.random(n).tolist()


def run_process(og: OrderedGraph, w0, rng=None, *, uniforms=None) -> SampleOutcome:
    """Run the weight process once over all positions of ``og``.

    At each step the current vertex joins the set with probability
    ``1 - exp(-w)``, zeroing the weights of its right neighbours; otherwise
    those weights are multiplied by ``exp(w)``.  Step ``i`` consumes
    ``uniforms[i]`` (or the ``i``-th draw from ``rng``) and joins iff the
    uniform is below the join probability.
    """
    og = check_ordered(og)
    ell = np.log(check_weights(w0, og.n)).tolist()
    u = _uniform_stream(og.n, rng, uniforms)
    chosen = []
    choices = []
    for i, v in enumerate(og.order):
        w = weight_of(ell[v])
        if u[i] < include_probability(w):
            chosen.append(v)
            choices.append(1)
            for j in og.right[v]:
                ell[j] = ZERO
        else:
            choices.append(2)
            if w > 0.0:
                for j in og.right[v]:
                    ell[j] = boost(ell[j], w)
    return SampleOutcome(frozenset(chosen), tuple(choices), tuple(weight_of(x) for x in ell))


def run_modified_process(og: OrderedGraph, w0, target: int, rng=None, *, uniforms=None) -> ModifiedOutcome:
    """Run the comparison process for ``target`` through the step before it.

    Steps at left neighbours of ``target`` always take the multiply branch.
    One uniform is consumed per step, deterministic steps included.
    """
    og = check_ordered(og)
    target = check_target(og, target)
    ell = np.log(check_weights(w0, og.n)).tolist()
    k = og.position[target]
    u = _uniform_stream(k, rng, uniforms)
    nl = set(og.left[target])
    choices: list[int | None] = []
    for i in range(k):
        v = og.order[i]
        w = weight_of(ell[v])
        if v in nl:
            choices.append(None)
            for j in og.right[v]:
                ell[j] = boost(ell[j], w)
        elif u[i] < include_probability(w):
            choices.append(1)
            for j in og.right[v]:
                ell[j] = ZERO
        else:
            choices.append(2)
            if w > 0.0:
                for j in og.right[v]:
                    ell[j] = boost(ell[j], w)
    weights = tuple(weight_of(x) for x in ell)
    X = math.fsum(weights[v] for v in og.left[target])
    return ModifiedOutcome(target, X, weights, tuple(choices))


def inclusion_integrand(w0k: float, X: float) -> float:
    """``(1 - exp(-w0k * exp(X))) * exp(-X)``, accurate for small ``w0k``."""
    if X == math.inf:
        return 0.0
    return include_probability(weight_of(math.log(w0k) + X)) * math.exp(-X)
