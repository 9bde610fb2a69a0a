import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trifree import generators
from trifree.graph import Graph, degeneracy_order, identity_order, order_by
from trifree.process import (
    final_weight_gap,
    include_probability,
    inclusion_integrand,
    run_modified_process,
    run_process,
)


def test_single_vertex_decision_boundary():
    g = identity_order(generators.empty(1))
    p = include_probability(0.3)
    assert p == pytest.approx(1 - math.exp(-0.3), rel=1e-15)
    assert run_process(g, 0.3, uniforms=[np.nextafter(p, 0)]).independent_set == {0}
    assert run_process(g, 0.3, uniforms=[p]).independent_set == frozenset()


def test_replay_edge():
    og = identity_order(generators.path(2))
    a, b = 0.4, 0.2
    out = run_process(og, [a, b], uniforms=[0.99, 0.0])
    assert out.choices == (2, 1)
    assert out.final_weights[1] == pytest.approx(b * math.exp(a), rel=1e-15)
    out = run_process(og, [a, b], uniforms=[0.0, 0.0])
    assert out.choices == (1, 2)
    assert out.final_weights[1] == 0.0
    assert out.independent_set == {0}


def test_single_vertex_frequency():
    og = identity_order(generators.empty(1))
    rng = np.random.default_rng(3)
    hits = sum(0 in run_process(og, math.log(2), rng).independent_set for _ in range(20000))
    se = math.sqrt(0.25 / 20000)
    assert abs(hits / 20000 - 0.5) < 4 * se


@st.composite
def ordered_instances(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    order = draw(st.permutations(range(n)))
    w0 = draw(st.lists(st.floats(1e-3, 2.0), min_size=n, max_size=n))
    return order_by(Graph.from_edges(n, edges), order), w0


@given(ordered_instances(), st.integers(0, 2**32))
def test_output_is_independent_and_choices_consistent(inst, seed):
    og, w0 = inst
    out = run_process(og, w0, seed)
    assert og.graph.is_independent(out.independent_set)
    assert {og.order[i] for i, c in enumerate(out.choices) if c == 1} == out.independent_set
    for v in out.independent_set:
        assert all(out.final_weights[u] == 0.0 for u in og.right[v])


@given(ordered_instances(), st.integers(0, 2**32), st.data())
def test_modified_process_invariants(inst, seed, data):
    og, w0 = inst
    target = data.draw(st.integers(0, og.n - 1))
    out = run_modified_process(og, w0, target, seed)
    k = og.position[target]
    assert len(out.choices) == k
    nl = set(og.left[target])
    for i, c in enumerate(out.choices):
        assert (c is None) == (og.order[i] in nl)
    # no left neighbour of the target joins, so its weight only grows
    assert out.final_weights[target] >= w0[target] or math.isinf(out.final_weights[target])
    assert out.X == pytest.approx(math.fsum(out.final_weights[u] for u in nl))


def test_modified_process_on_path():
    og = identity_order(generators.path(3))
    out = run_modified_process(og, [0.3, 0.2, 0.1], 2, uniforms=[0.0, 0.0])
    # v0 joins (uniform 0), so v1 keeps weight zero; v1 is deterministic
    assert out.choices == (1, None)
    assert out.X == 0.0
    assert out.final_weights[2] == pytest.approx(0.1)
    out = run_modified_process(og, [0.3, 0.2, 0.1], 2, uniforms=[0.99, 0.0])
    assert out.X == pytest.approx(0.2 * math.exp(0.3))
    assert out.final_weight_gap(0.1) < 1e-15


def test_final_weight_gap_saturation():
    assert final_weight_gap(math.inf, 0.5, 1e6) == 0.0
    assert final_weight_gap(1.0, 0.5, 1e6) == math.inf
    assert final_weight_gap(0.5 * math.e, 0.5, 1.0) < 1e-15


def test_integrand_small_and_large():
    w = 1e-9
    assert abs(inclusion_integrand(w, 0.0) - (w - w * w / 2)) / w < 1e-12
    assert 0 < inclusion_integrand(0.1, 50.0) < 2e-22
    assert inclusion_integrand(0.1, math.inf) == 0.0


def test_run_process_rejects_bad_weights():
    og = identity_order(generators.path(2))
    with pytest.raises(ValueError):
        run_process(og, [0.1, 0.0])
    with pytest.raises(ValueError):
        run_process(og, [0.1, math.nan])
    with pytest.raises(ValueError):
        run_process(og, [0.1, 0.1], uniforms=[0.5])


@settings(max_examples=20)
@given(st.integers(0, 2**32))
def test_same_seed_same_outcome(seed):
    og, _ = degeneracy_order(generators.petersen())
    assert run_process(og, 0.3, seed) == run_process(og, 0.3, seed)
