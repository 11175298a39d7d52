from __future__ import annotations

import random

import pytest

from satkit.analysis import (
    AnalysisError,
    NiceCore,
    NotSaturatedError,
    check_core_observations,
    core_bound_certificate,
    degree_classes,
    find_cores,
    find_nice_cores,
    fourth_root_ceil,
    min_degree_certificate,
    partition_around_core,
)
from satkit.bigraph import (
    BipartiteGraph,
    PatternSpec,
    build,
    complete,
    contains_pattern,
    empty,
    with_edge,
    without_edge,
)
from satkit.constructions import construct_f_family, construct_ms
from satkit.saturation import is_saturated
from satkit.search import census_extremal

import oracles


def block_padded(k, n):
    return build(n, n, [(u, v) for u in range(k) for v in range(k)])


def test_find_cores_examples():
    assert len(find_cores(complete(2))) == 4
    m = build(3, 3, [(i, i) for i in range(3)])
    cores = find_cores(m)
    assert [(c.a0, c.a0_prime, c.A, c.A_prime) for c in cores] == [(i, i, (i,), (i,)) for i in range(3)]
    assert find_cores(empty(3)) == []


def test_nice_cores_block():
    g = block_padded(2, 5)
    assert len(find_nice_cores(g, 2, 3)) == 4
    assert find_nice_cores(empty(4), 2, 3) == []
    with pytest.raises(AnalysisError):
        find_nice_cores(g, 3, 3)


def _naive_nice(g, s, t):
    e = oracles.to_edges(g)
    out = []
    for a0, a0p in sorted(e):
        A = sorted(u for u, v in e if v == a0p)
        Ap = sorted(v for u, v in e if u == a0)
        if len(A) != t - 1 or len(Ap) != t - 1:
            continue
        sub = frozenset((A.index(u), Ap.index(v)) for u, v in e if u in A and v in Ap)
        if oracles.contains(sub, t - 1, t - 1, s, t - 1):
            out.append((a0, a0p))
    return out


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_nice_cores_vs_scan(n):
    for g in [construct_f_family(2, 3, n), construct_f_family(2, 3, n, 2), block_padded(2, n)]:
        assert [(c.a0, c.a0_prime) for c in find_nice_cores(g, 2, 3)] == _naive_nice(g, 2, 3)


def _naive_labels(g, core, s, t):
    e = oracles.to_edges(g)
    n_l, n_r = g.n_left, g.n_right
    A, Ap = set(core.A), set(core.A_prime)
    nb_l = {u: {v for (x, v) in e if x == u} for u in range(n_l)}
    nb_r = {v: {u for (u, y) in e if y == v} for v in range(n_r)}
    B = {u for u in range(n_l) if u not in A and len(nb_l[u] & Ap) >= s - 1}
    Bp = {v for v in range(n_r) if v not in Ap and len(nb_r[v] & A) >= s - 1}
    C = set(range(n_l)) - A - B
    Cp = set(range(n_r)) - Ap - Bp
    B1 = {u for u in B if len(nb_l[u] & (Ap | Bp)) >= t - 1}
    B1p = {v for v in Bp if len(nb_r[v] & (A | B)) >= t - 1}
    B2, B2p = B - B1, Bp - B1p
    C1 = {u for u in C if len(nb_l[u] - B2p) >= s - 1}
    C1p = {v for v in Cp if len(nb_r[v] - B2) >= s - 1}
    return {
        "B1": B1, "B2": B2, "C1": C1, "C2": C - C1,
        "B1_prime": B1p, "B2_prime": B2p, "C1_prime": C1p, "C2_prime": Cp - C1p,
    }


def test_partition_matches_definitions_on_census():
    res = census_extremal(2, 3, 5)
    seen = 0
    for g in res.graphs():
        for core in find_nice_cores(g, 2, 3):
            labels = partition_around_core(g, core, 2, 3)
            want = _naive_labels(g, core, 2, 3)
            for k, v in want.items():
                assert set(getattr(labels, k)) == v, k
            left = set(labels.A) | set(labels.B1) | set(labels.B2) | set(labels.C1) | set(labels.C2)
            assert left == set(range(5))
            assert sum(map(len, (labels.A, labels.B1, labels.B2, labels.C1, labels.C2))) == 5
            seen += 1
    assert seen > 0


def test_partition_padding_goes_to_c2():
    g = block_padded(2, 5)
    core = find_nice_cores(g, 2, 3)[0]
    labels = partition_around_core(g, core, 2, 3)
    assert labels.C2 == (2, 3, 4) and labels.C2_prime == (2, 3, 4)
    assert labels.y == labels.y_prime == 3


def test_partition_all_complete_to_core():
    # core on {0,1} x {0,1}; vertex 0 and right vertex 0 see only the core,
    # every other vertex is adjacent to core vertex 1 on the opposite side
    h = build(5, 5, [(0, 0), (0, 1), (1, 0), (1, 1)] + [(u, 1) for u in range(2, 5)] + [(1, v) for v in range(2, 5)])
    core = NiceCore((0, 1), (0, 1), 0, 0)
    labels = partition_around_core(h, core, 2, 3)
    assert labels.B == (2, 3, 4) and labels.C == ()
    assert labels.B_prime == (2, 3, 4) and labels.C_prime == ()


def test_partition_rejects_invalid_core():
    g = BipartiteGraph.from_rows([0b00011] * 5, 5)
    with pytest.raises(AnalysisError):
        partition_around_core(g, NiceCore((0, 1), (0, 1), 0, 0), 2, 3)


def test_observations_and_planted_violation():
    g = block_padded(2, 5)
    core = find_nice_cores(g, 2, 3)[0]
    labels = partition_around_core(g, core, 2, 3)
    rep = check_core_observations(g, labels, 2, 3)
    assert not rep.graph_saturated
    assert rep.c2_complete_holds is False and rep.c2_missing_pair == (2, 2)
    assert rep.c_degree_counterexample == ("left", 2)

    for h in census_extremal(2, 3, 5).graphs():
        for core in find_nice_cores(h, 2, 3):
            labels = partition_around_core(h, core, 2, 3)
            rep = check_core_observations(h, labels, 2, 3)
            assert rep.graph_saturated and rep.holds
            if labels.C2 and labels.C2_prime:
                u, v = labels.C2[0], labels.C2_prime[0]
                broken = check_core_observations(without_edge(h, u, v), labels, 2, 3)
                assert broken.c2_missing_pair == (u, v)


def test_observation_vacuous_when_c2_empty():
    g = construct_f_family(2, 3, 6)
    for core in find_nice_cores(g, 2, 3):
        labels = partition_around_core(g, core, 2, 3)
        if not labels.C2 or not labels.C2_prime:
            assert check_core_observations(g, labels, 2, 3).c2_complete_holds


def _greedy_saturated(rng, n, s, t):
    p = PatternSpec.unordered(s, t)
    cells = [(u, v) for u in range(n) for v in range(n)]
    rng.shuffle(cells)
    g = empty(n)
    for u, v in cells:
        h = with_edge(g, u, v)
        if contains_pattern(h, p) is None:
            g = h
    return g


def test_core_bound_examples():
    rng = random.Random(1)
    found = False
    for _ in range(40):
        g = _greedy_saturated(rng, 5, 2, 4)
        assert is_saturated(g, PatternSpec.unordered(2, 4))
        if g.min_degree() < 3:
            continue
        for core in find_nice_cores(g, 2, 4):
            cb = core_bound_certificate(g, core, 2, 4)
            assert cb.lower_bound == 8 + cb.e_core
            assert cb.e_core >= 7 and cb.nice_core_floor == 7
            assert cb.holds
            found = True
    assert found
    g = build(3, 3, [(i, i) for i in range(3)])
    core = find_nice_cores(g, 1, 2)[0]
    cb = core_bound_certificate(g, core, 1, 2)
    assert cb.nice_core_floor == 1 and cb.e_core >= 1


def test_core_bound_requires_min_degree():
    g = construct_f_family(2, 3, 5)
    core = find_nice_cores(g, 2, 3)[0]
    h = build(5, 5, list(g.edges())[:-1])
    with pytest.raises(AnalysisError, match="vertex"):
        core_bound_certificate(h, core, 2, 3)


def test_min_degree_certificate():
    assert min_degree_certificate(build(3, 3, [(i, i) for i in range(3)]), 1, 2) is None
    assert min_degree_certificate(complete(3), 2, 2) is None
    count = 0
    for g in census_extremal(2, 3, 5).graphs():
        c = min_degree_certificate(g, 2, 3)
        if c is None:
            continue
        count += 1
        assert c.delta == 1 and c.holds
        assert c.edge_count >= c.bound >= c.final_bound == 13
        for up, S in c.S_sets.items():
            assert len(S) == 2
    assert count > 0
    with pytest.raises(NotSaturatedError) as exc:
        min_degree_certificate(empty(3), 2, 3)
    assert exc.value.dead_nonedge == (0, 0)


def test_min_degree_certificate_right_side():
    g = construct_ms(1, 3, 6).transpose()
    for h in (g, g.transpose()):
        c = min_degree_certificate(h, 1, 3)
        if c is not None:
            assert c.holds


def test_degree_classes():
    assert [fourth_root_ceil(n) for n in (1, 2, 15, 16, 17, 81, 82)] == [1, 2, 2, 2, 3, 3, 4]
    g = construct_f_family(2, 3, 5)
    dc = degree_classes(g)
    assert dc.threshold == 2
    assert dc.V0 == (0, 1, 2, 3, 4)
    assert degree_classes(g, threshold=3).V0 == (0,)
