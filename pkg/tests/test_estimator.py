import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from test_process import ordered_instances
from trifree import generators
from trifree.estimator import (
    EstimateReport,
    VertexEstimate,
    empirical_min_inclusion,
    estimate_inclusion,
    replica_uniforms,
    sample_indicators,
    wilson_interval,
)
from trifree.exact import exact_inclusion
from trifree.graph import degeneracy_order, identity_order
from trifree.process import run_process


def test_jobs_do_not_change_counts():
    og, _ = degeneracy_order(generators.petersen())
    a = estimate_inclusion(og, 0.3, 5000, 17, jobs=1)
    b = estimate_inclusion(og, 0.3, 5000, 17, jobs=2)
    assert np.array_equal(a.hits, b.hits)
    c = estimate_inclusion(og, 0.3, 5000, 18, jobs=1)
    assert not np.array_equal(a.hits, c.hits)


def test_single_sample():
    og = identity_order(generators.cycle(5))
    rep = estimate_inclusion(og, 0.5, 1, 0)
    assert set(rep.hits.tolist()) <= {0, 1}
    assert rep.samples == 1


def test_bad_arguments():
    og = identity_order(generators.cycle(5))
    with pytest.raises(ValueError):
        estimate_inclusion(og, 0.5, 0, 0)
    with pytest.raises(ValueError):
        estimate_inclusion(og, 0.5, 10, -1)
    with pytest.raises(ValueError):
        estimate_inclusion(og, -0.5, 10, 0)


@settings(max_examples=30)
@given(ordered_instances(max_n=9), st.integers(0, 2**63), st.integers(0, 50))
def test_kernel_replays_reference_process(inst, seed, replica):
    og, w0 = inst
    row = sample_indicators(og, w0, 1, seed, start=replica)[0]
    ref = run_process(og, w0, uniforms=replica_uniforms(seed, replica, og.n).tolist())
    assert set(np.flatnonzero(row).tolist()) == set(ref.independent_set)


def test_indicators_match_counts():
    og, _ = degeneracy_order(generators.grotzsch())
    rows = sample_indicators(og, 0.2, 3000, 5)
    rep = estimate_inclusion(og, 0.2, 3000, 5)
    assert np.array_equal(rows.sum(axis=0), rep.hits)
    assert np.array_equal(sample_indicators(og, 0.2, 10, 5, start=100), rows[100:110])


def test_uniforms_in_unit_interval():
    u = replica_uniforms(3, 7, 10000)
    assert u.min() >= 0.0 and u.max() < 1.0
    assert abs(u.mean() - 0.5) < 0.02


def test_wilson_interval_properties():
    assert wilson_interval(0, 10)[0] == 0.0
    assert wilson_interval(10, 10)[1] == 1.0
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi
    z = 1.959964
    assert hi - lo == pytest.approx(2 * z * math.sqrt(0.25 / 100 + z * z / 40000) / (1 + z * z / 100), rel=1e-5)
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


def test_wilson_coverage():
    og = identity_order(generators.path(2))
    w0 = [0.4, 0.3]
    truth = exact_inclusion(og, w0).per_vertex_inclusion
    covered = 0
    for seed in range(200):
        rep = estimate_inclusion(og, w0, 2000, seed)
        e = rep.per_vertex[1]
        covered += e.ci_low <= truth[1] <= e.ci_high
    assert covered >= 180


def test_empirical_min_ties_lowest_vertex():
    rows = tuple(VertexEstimate(x, x - 0.1, x + 0.1, 0) for x in (0.3, 0.2, 0.2, 0.4))
    assert empirical_min_inclusion(EstimateReport(rows, 10, 0, 0.0)) == (1, 0.2, pytest.approx(0.1))


def test_csv_and_dict():
    og = identity_order(generators.path(3))
    rep = estimate_inclusion(og, 0.3, 100, 2)
    lines = rep.to_csv().splitlines()
    assert lines[0] == "vertex,estimate,ciLow,ciHigh,hits"
    assert len(lines) == 4
    assert rep.to_dict()["perVertex"][2]["hits"] == rep.hits[2]
