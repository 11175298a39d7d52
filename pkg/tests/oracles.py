"""Slow, obviously-correct reference implementations used to check the package.

Graphs here are frozensets of (left, right) pairs; nothing is shared with the
bitset code under test.
"""

from __future__ import annotations

from itertools import combinations, permutations, product


def orientations(s, t, ordered):
    if ordered or s == t:
        return [(s, t)]
    return [(s, t), (t, s)]


def contains(edges, nl, nr, s, t, ordered=False):
    for a, b in orientations(s, t, ordered):
        if a > nl or b > nr:
            continue
        for L in combinations(range(nl), a):
            for R in combinations(range(nr), b):
                if all((u, v) in edges for u in L for v in R):
                    return True
    return False


def creates(edges, nl, nr, u, v, s, t, ordered=False):
    """Adding (u, v) gives a copy that uses the new edge."""
    new = edges | {(u, v)}
    for a, b in orientations(s, t, ordered):
        if a > nl or b > nr:
            continue
        for L in combinations(range(nl), a):
            if u not in L:
                continue
            for R in combinations(range(nr), b):
                if v in R and all((x, y) in new for x in L for y in R):
                    return True
    return False


def non_edges(edges, nl, nr):
    return [(u, v) for u in range(nl) for v in range(nr) if (u, v) not in edges]


def strongly_saturated(edges, nl, nr, s, t, ordered=False):
    return all(creates(edges, nl, nr, u, v, s, t, ordered) for u, v in non_edges(edges, nl, nr))


def saturated(edges, nl, nr, s, t, ordered=False):
    return not contains(edges, nl, nr, s, t, ordered) and strongly_saturated(
        edges, nl, nr, s, t, ordered
    )


def weakly_saturated(edges, nl, nr, s, t, ordered=False):
    cur = set(edges)
    changed = True
    while changed:
        changed = False
        for u, v in non_edges(cur, nl, nr):
            if creates(frozenset(cur), nl, nr, u, v, s, t, ordered):
                cur.add((u, v))
                changed = True
    return len(cur) == nl * nr


def all_graphs(nl, nr):
    cells = [(u, v) for u in range(nl) for v in range(nr)]
    for bits in product((0, 1), repeat=len(cells)):
        yield frozenset(c for c, b in zip(cells, bits) if b)


def graphs_with_edges(nl, nr, m):
    cells = [(u, v) for u in range(nl) for v in range(nr)]
    for chosen in combinations(cells, m):
        yield frozenset(chosen)


def canonical(edges, n, side_swap=True):
    """Smallest sorted edge tuple over all relabellings (and transposition)."""
    best = None
    variants = [edges]
    if side_swap:
        variants.append(frozenset((v, u) for u, v in edges))
    for e in variants:
        for pl in permutations(range(n)):
            for pr in permutations(range(n)):
                key = tuple(sorted((pl[u], pr[v]) for u, v in e))
                if best is None or key < best:
                    best = key
    return best


def min_sat(s, t, n, ordered=False, weak=False):
    """Smallest edge count of a saturated (or weakly saturated) n x n graph."""
    pred = weakly_saturated if weak else saturated
    for m in range(n * n + 1):
        for e in graphs_with_edges(n, n, m):
            if pred(e, n, n, s, t, ordered):
                return m
    return None


def census(s, t, n, ordered=False):
    m = min_sat(s, t, n, ordered)
    classes = set()
    for e in graphs_with_edges(n, n, m):
        if saturated(e, n, n, s, t, ordered):
            classes.add(canonical(e, n, side_swap=not ordered or s == t))
    return m, classes


def to_edges(g):
    return frozenset(g.edges())
