import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trifree import generators
from trifree.exact import PreconditionError, exact_inclusion
from trifree.graph import identity_order
from trifree.theorems import (
    ALPHA,
    ConditionViolation,
    InfeasibleError,
    bound_factor,
    linearization_gap,
    local_shearer_weights,
    main_bound,
    main_epsilon,
    main_weight,
    maingen_condition_check,
    maingen_driver,
    mainproc_check_and_bound,
    theorem_main_driver,
)


def test_alpha():
    assert 0.1967 < ALPHA < 0.1968


def test_d32_values():
    ld = math.log(32)
    assert main_weight(32) == pytest.approx((ld - 2 * math.log(ld)) / 64, rel=1e-15)
    assert main_weight(32) == pytest.approx(0.015311, abs=1e-6)
    assert main_epsilon(32) == pytest.approx(0.144270, abs=1e-6)
    assert main_bound(32) == pytest.approx(bound_factor(1 / (2 * ld)) * main_weight(32))


@pytest.mark.parametrize("d", [0, 1, 2])
def test_small_degeneracy_rejected(d):
    with pytest.raises(PreconditionError):
        main_weight(d)


@pytest.mark.parametrize("d", [3, 4, 10, 32, 100, 10**4, 10**8])
def test_condition_at_full_left_degree(d):
    w = main_weight(d)
    lhs = w * math.exp(2 * d * w)
    ld = math.log(d)
    assert lhs == pytest.approx(1 / (2 * ld) - math.log(ld) / ld**2, rel=1e-12)
    assert lhs <= main_epsilon(d)
    assert w * math.exp(2 * (d - 1) * w) < lhs


@settings(max_examples=50)
@given(st.floats(1e-6, 1.0))
def test_linearization_nonnegative(eps):
    assert linearization_gap(eps) >= -1e-15
    assert 0 < bound_factor(eps) <= 0.5


def test_bound_factor_rejects_nonpositive():
    with pytest.raises(ValueError):
        bound_factor(0.0)


def test_mainproc_instance():
    og = identity_order(generators.path(3))
    inst = mainproc_check_and_bound(og, [0.1, 0.1, 0.1], 2, 0.5)
    assert inst.condition_lhs == pytest.approx(0.1 * math.exp(0.2))
    assert inst.valid
    assert inst.bound == pytest.approx(0.1 * bound_factor(0.5))
    assert not mainproc_check_and_bound(og, [0.1, 3.0, 0.1], 2, 0.5).valid


def test_main_driver_petersen():
    res = theorem_main_driver(generators.petersen())
    assert res.degeneracy == 3
    assert res.conditions_hold
    exact = exact_inclusion(res.ordered_graph, res.w0).per_vertex_inclusion
    assert min(exact) >= res.bound
    assert res.chi_f_upper_bound == pytest.approx(1 / res.bound)


def test_main_driver_rejects_triangles_and_low_degeneracy():
    with pytest.raises(PreconditionError):
        theorem_main_driver(generators.complete(4))
    with pytest.raises(PreconditionError):
        theorem_main_driver(generators.cycle(5))


def test_maingen_c5():
    og = identity_order(generators.cycle(5))
    res = maingen_driver(og, [0.1] * 5)
    assert np.allclose(res.per_vertex_bound, ALPHA * 0.1)
    exact = exact_inclusion(og, res.w0).per_vertex_inclusion
    assert min(exact) >= 0.0196


def test_maingen_violation_reports_worst_vertex():
    og = identity_order(generators.path(3))
    rows = maingen_condition_check(og, [0.5, 0.8, 0.3])
    assert [r.ok for r in rows] == [True, False, False]
    with pytest.raises(ConditionViolation) as info:
        maingen_driver(og, [0.5, 0.8, 0.3])
    assert info.value.vertex == 1
    with pytest.raises(ValueError):
        maingen_driver(og, [0.0, 0.1, 0.1])


def test_maingen_shrink():
    og = identity_order(generators.path(3))
    assert all(r.ok for r in maingen_condition_check(og, [0.5, 0.6, 0.5], shrink=0.5))


def test_maingen_bound_holds_exactly_on_small_graphs():
    for g in (generators.petersen(), generators.grotzsch(), generators.complete_bipartite(3, 4)):
        og, p, c = local_shearer_weights(g)
        res = maingen_driver(og, p)
        exact = np.array(exact_inclusion(og, res.w0).per_vertex_inclusion)
        assert np.all(exact >= res.per_vertex_bound)


def test_shearer_halving_and_failure():
    g = generators.petersen()
    og, p, c = local_shearer_weights(g, c=4.0)
    assert c < 4.0
    assert all(r.ok for r in maingen_condition_check(og, p))
    with pytest.raises(InfeasibleError):
        local_shearer_weights(g, c=1e6, floor_divisor=2)
    with pytest.raises(PreconditionError):
        local_shearer_weights(generators.cycle(5))


def test_isolated_target_condition_is_its_weight():
    og = identity_order(generators.empty(3))
    inst = mainproc_check_and_bound(og, [0.5, 0.5, 0.3], 2, 0.3)
    assert inst.condition_lhs == pytest.approx(0.3)
    assert inst.bound == pytest.approx(-math.expm1(-0.3) / 2)


def test_product_condition_boundaries():
    assert all(r.ok for r in maingen_condition_check(identity_order(generators.empty(4)), 1.0))
    assert all(r.ok for r in maingen_condition_check(identity_order(generators.path(2)), [0.5, 0.5]))
    for leaves in (2, 3, 5):
        from trifree.graph import order_by

        og = order_by(generators.star(leaves), list(range(1, leaves + 1)) + [0])
        limit = 0.75**leaves
        rows = maingen_condition_check(og, [limit] + [0.25] * leaves)
        assert rows[0].ok and rows[0].rhs == pytest.approx(limit)
        assert not maingen_condition_check(og, [limit * 1.01] + [0.25] * leaves)[0].ok
