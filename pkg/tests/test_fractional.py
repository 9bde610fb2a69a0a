import json
from fractions import Fraction

import pytest
from hypothesis import given, settings

from oracles import brute_maximal_independent_sets
from test_graph import graphs
from trifree import generators
from trifree.fractional import (
    EnumerationCapError,
    FractionalColoring,
    chi_f_upper_bound_from_inclusion,
    clique_number,
    enumerate_maximal_independent_sets,
    fractional_chromatic_number,
    independence_number,
)
from trifree.graph import Graph


@pytest.mark.parametrize(
    "g,count",
    [(generators.cycle(5), 5), (generators.complete_bipartite(3, 3), 2), (generators.empty(4), 1), (generators.complete(4), 4)],
)
def test_mis_counts(g, count):
    assert len(enumerate_maximal_independent_sets(g).sets) == count


@settings(max_examples=80)
@given(graphs(max_n=9))
def test_mis_brute_force(g):
    fam = enumerate_maximal_independent_sets(g)
    assert {frozenset(s) for s in fam.sets} == brute_maximal_independent_sets(g.n, g.edges())


def test_cap():
    with pytest.raises(EnumerationCapError):
        enumerate_maximal_independent_sets(generators.complete(10), cap=5)


@pytest.mark.parametrize(
    "g,value",
    [
        (generators.complete(1), 1),
        (generators.complete(5), 5),
        (generators.cycle(5), Fraction(5, 2)),
        (generators.cycle(7), Fraction(7, 3)),
        (generators.petersen(), Fraction(5, 2)),
        (generators.complete_bipartite(3, 3), 2),
        (generators.grotzsch(), Fraction(29, 10)),
    ],
)
def test_golden(g, value):
    assert fractional_chromatic_number(g)[0] == value


@settings(max_examples=40)
@given(graphs(max_n=8))
def test_lower_bounds_and_certificate(g):
    if g.n == 0:
        return
    value, cert = fractional_chromatic_number(g)
    cert.verify(g)
    assert value >= Fraction(g.n, independence_number(g))
    assert value >= clique_number(g)
    again = FractionalColoring.from_dict(json.loads(cert.to_json()))
    assert again == cert


def test_mycielski_recurrence():
    g = generators.complete(2)
    value = fractional_chromatic_number(g)[0]
    for _ in range(2):
        g = generators.mycielski(g)
        nxt = fractional_chromatic_number(g)[0]
        assert nxt == value + 1 / value
        value = nxt


def test_broken_certificate_rejected():
    g = generators.path(2)
    with pytest.raises(ValueError):
        FractionalColoring({(0, 1): Fraction(1)}, Fraction(1)).verify(g)
    with pytest.raises(ValueError):
        FractionalColoring({(0,): Fraction(1)}, Fraction(1)).verify(g)


def test_upper_bound_from_inclusion():
    assert chi_f_upper_bound_from_inclusion([Fraction(2, 5)] * 5) == Fraction(5, 2)
    assert chi_f_upper_bound_from_inclusion([0.5, 0.25]) == 4.0
    for bad in ([], [0.0], [1.5]):
        with pytest.raises(ValueError):
            chi_f_upper_bound_from_inclusion(bad)
