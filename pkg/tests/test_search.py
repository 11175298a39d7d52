from __future__ import annotations

import random

import pytest

from satkit.bigraph import BipartiteGraph, PatternSpec
from satkit.constructions import ParameterError, construct_ordered_extremal
from satkit.saturation import check_weakly_saturated, is_saturated
from satkit.search import (
    MODE_ORDERED,
    MODE_WEAK,
    SearchBudget,
    canonical_form,
    census_extremal,
    min_sat_edges,
    min_wsat_edges,
)

import oracles
from conftest import random_graph


def permuted(g: BipartiteGraph, rng: random.Random) -> BipartiteGraph:
    pl = list(range(g.n_left))
    pr = list(range(g.n_right))
    rng.shuffle(pl)
    rng.shuffle(pr)
    rows = [0] * g.n_left
    for u, v in g.edges():
        rows[pl[u]] |= 1 << pr[v]
    return BipartiteGraph.from_rows(rows, g.n_right)


def test_canonical_form_invariant(rng):
    for _ in range(200):
        g = random_graph(rng, 4, 4, rng.random())
        cf = canonical_form(g)
        assert canonical_form(permuted(g, rng)) == cf
        assert canonical_form(g.transpose(), allow_side_swap=True) == canonical_form(g, allow_side_swap=True)
        h = cf.graph()
        assert h.edge_count == g.edge_count
        assert oracles.canonical(oracles.to_edges(h), 4, False) == oracles.canonical(oracles.to_edges(g), 4, False)


def test_canonical_form_separates_classes(rng):
    seen = {}
    for _ in range(300):
        g = random_graph(rng, 3, 3, rng.random())
        key = oracles.canonical(oracles.to_edges(g), 3, False)
        cf = canonical_form(g)
        if key in seen:
            assert seen[key] == cf
        else:
            assert cf not in seen.values()
            seen[key] = cf


@pytest.mark.parametrize(
    "s,t,n,expected",
    [(1, 2, 3, 3), (1, 2, 4, 4), (2, 2, 3, 5), (2, 2, 4, 7), (1, 3, 4, 7), (2, 3, 4, 10), (1, 1, 3, 0)],
)
def test_min_sat_small(s, t, n, expected):
    r = min_sat_edges(s, t, n)
    assert r.complete and r.min_edges == expected
    g = r.graphs()[0]
    assert is_saturated(g, PatternSpec.unordered(s, t))


@pytest.mark.parametrize("s,t,n", [(2, 2, 3), (1, 2, 3), (1, 3, 4), (2, 3, 4), (2, 2, 4)])
def test_census_matches_oracle(s, t, n):
    r = census_extremal(s, t, n)
    m, classes = oracles.census(s, t, n)
    assert r.min_edges == m
    got = {oracles.canonical(oracles.to_edges(g), n) for g in r.graphs()}
    assert got == classes
    assert len(r.extremal_graphs) == len(classes)


def test_two_two_three_census_holds_ordered_construction():
    r = census_extremal(2, 2, 3)
    ordered = canonical_form(construct_ordered_extremal(2, 2, 3), allow_side_swap=True)
    assert ordered in r.extremal_graphs
    assert len(r.extremal_graphs) == 2


@pytest.mark.parametrize("s,t,n", [(2, 2, 3), (2, 3, 3), (1, 3, 4), (2, 3, 4)])
def test_ordered_mode(s, t, n):
    r = min_sat_edges(s, t, n, mode=MODE_ORDERED)
    assert r.min_edges == n * n - (n - s + 1) * (n - t + 1)
    assert r.min_edges == oracles.min_sat(s, t, n, ordered=True)
    for g in census_extremal(s, t, n, mode=MODE_ORDERED).graphs():
        assert is_saturated(g, PatternSpec.ordered(s, t))


@pytest.mark.parametrize("s,t,n", [(1, 2, 3), (2, 2, 3), (1, 3, 4), (2, 3, 4)])
def test_weak_mode_matches_oracle(s, t, n):
    r = min_wsat_edges(s, t, n)
    assert r.min_edges == oracles.min_sat(s, t, n, weak=True)
    assert check_weakly_saturated(r.graphs()[0], PatternSpec.unordered(s, t))[0]


def test_node_budget_marks_incomplete():
    r = min_sat_edges(2, 3, 5, budget=SearchBudget(max_nodes=50))
    assert not r.complete
    assert r.min_edges is None or r.exhausted_through is None or r.exhausted_through < 13


def test_time_budget_marks_incomplete():
    r = min_sat_edges(2, 4, 6, budget=SearchBudget(max_seconds=0.2))
    assert not r.complete and r.min_edges is None


def test_parameter_errors():
    with pytest.raises(ParameterError):
        min_sat_edges(3, 2, 4)
    with pytest.raises(ParameterError):
        min_sat_edges(2, 3, 7)
    with pytest.raises(ParameterError):
        min_sat_edges(2, 3, 4, mode="bogus")


def test_reports_are_plain_data():
    d = census_extremal(2, 3, 4).as_dict()
    assert d["min_edges"] == 10 and d["extremal_count"] == 3
    assert d["reference_bounds"]["conjecture_value"] == 10


def test_split_depth_does_not_change_answer():
    a = census_extremal(2, 3, 4, budget=SearchBudget(split_depth=1))
    b = census_extremal(2, 3, 4, budget=SearchBudget(split_depth=2))
    assert a.extremal_graphs == b.extremal_graphs and a.min_edges == b.min_edges
    assert census_extremal(2, 3, 4, mode=MODE_WEAK).min_edges == 8
