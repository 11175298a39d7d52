from __future__ import annotations

from satkit.bigraph import PatternSpec, build, complete, empty
from satkit.constructions import construct_f_family, construct_ordered_extremal
from satkit.saturation import (
    check_free,
    check_saturated,
    check_strongly_saturated,
    check_weakly_saturated,
    first_dead_nonedge,
    is_saturated,
    weak_closure,
    weak_closure_size,
)

import oracles
from conftest import random_graph


def matching(n):
    return build(n, n, [(i, i) for i in range(n)])


def test_matching_is_star_saturated():
    p = PatternSpec.unordered(1, 2)
    assert is_saturated(matching(3), p)
    r = check_saturated(matching(3), p)
    assert r.is_free and r.is_saturated and r.is_weakly_saturated
    assert len(r.nonedge_witnesses) == 6


def test_complete_graph_not_free():
    free, w = check_free(complete(3), PatternSpec.unordered(2, 2))
    assert not free and w.is_valid_in(complete(3))
    r = check_saturated(complete(3), PatternSpec.unordered(2, 2))
    assert not r.is_saturated and r.is_strongly_saturated and r.offending_copy


def test_empty_graph_dead_nonedge():
    p = PatternSpec.unordered(2, 2)
    assert first_dead_nonedge(empty(3), p) == (0, 0)
    r = check_saturated(empty(3), p)
    assert r.dead_nonedge == (0, 0) and not r.is_weakly_saturated and r.wsat_order is None


def test_f_family_saturated():
    g = construct_f_family(2, 3, 5)
    r = check_saturated(g, PatternSpec.unordered(2, 3))
    assert r.is_saturated and r.min_degree == 2


def test_ordered_extremal_is_ordered_saturated():
    g = construct_ordered_extremal(2, 2, 3)
    r = check_saturated(g, PatternSpec.unordered(2, 2))
    assert r.is_ordered_saturated and r.is_saturated


def test_weak_order_replays():
    g = build(3, 3, [(0, 0)])
    p = PatternSpec.unordered(1, 2)
    ok, order = check_weakly_saturated(g, p)
    assert ok and len(order) == 8
    closure, order2 = weak_closure(g, p)
    assert closure.is_complete() and order2 == order


def test_weak_closure_size_agrees(rng):
    for s, t in [(1, 2), (2, 2), (2, 3)]:
        p = PatternSpec.unordered(s, t)
        for _ in range(100):
            g = random_graph(rng, 4, 4, rng.random() * 0.7)
            assert weak_closure_size(g, p) == weak_closure(g, p)[0].edge_count


def test_predicates_match_oracle(rng):
    for s, t in [(1, 2), (2, 2), (2, 3), (1, 3)]:
        p = PatternSpec.unordered(s, t)
        for _ in range(150):
            g = random_graph(rng, 4, 4, rng.random())
            e = oracles.to_edges(g)
            assert is_saturated(g, p) == oracles.saturated(e, 4, 4, s, t)
            assert check_strongly_saturated(g, p) == oracles.strongly_saturated(e, 4, 4, s, t)
            assert check_weakly_saturated(g, p)[0] == oracles.weakly_saturated(e, 4, 4, s, t)
