"""Free / saturated / strongly / weakly saturated predicates for K_{s,t} patterns.

A "new copy" created by adding a missing edge ``uv`` always means a copy that
uses ``uv`` itself, which is exactly what :func:`creates_copy` decides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .bigraph import (
    ORDERED_LEFT_S,
    UNORDERED,
    BipartiteGraph,
    CopyWitness,
    PatternSpec,
    contains_pattern,
    creates_copy,
    creates_copy_fast,
    with_edge,
)


@dataclass
class SaturationReport:
    pattern: PatternSpec
    is_free: bool
    is_saturated: bool
    is_ordered_saturated: bool
    is_strongly_saturated: bool
    is_weakly_saturated: bool
    min_degree: int
    offending_copy: Optional[CopyWitness] = None
    dead_nonedge: Optional[tuple[int, int]] = None
    ordered_dead_nonedge: Optional[tuple[int, int]] = None
    wsat_order: Optional[list[tuple[int, int]]] = None
    weak_closure_edges: int = 0
    nonedge_witnesses: list[tuple[tuple[int, int], CopyWitness]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "pattern": {"s": self.pattern.s, "t": self.pattern.t, "mode": self.pattern.mode},
            "is_free": self.is_free,
            "is_saturated": self.is_saturated,
            "is_ordered_saturated": self.is_ordered_saturated,
            "is_strongly_saturated": self.is_strongly_saturated,
            "is_weakly_saturated": self.is_weakly_saturated,
            "min_degree": self.min_degree,
            "offending_copy": self.offending_copy.as_dict() if self.offending_copy else None,
            "dead_nonedge": list(self.dead_nonedge) if self.dead_nonedge else None,
            "ordered_dead_nonedge": (
                list(self.ordered_dead_nonedge) if self.ordered_dead_nonedge else None
            ),
            "wsat_order": [list(e) for e in self.wsat_order] if self.wsat_order is not None else None,
            "weak_closure_edges": self.weak_closure_edges,
            "nonedge_witnesses": [
                {"edge": list(e), **w.as_dict()} for e, w in self.nonedge_witnesses
            ],
        }


def check_free(g: BipartiteGraph, p: PatternSpec) -> tuple[bool, Optional[CopyWitness]]:
    w = contains_pattern(g, p)
    return w is None, w


def first_dead_nonedge(g: BipartiteGraph, p: PatternSpec) -> Optional[tuple[int, int]]:
    """Smallest row-major non-edge whose addition creates no copy of ``p``."""
    orients = p.orientations()
    for u, v in g.non_edges():
        if not creates_copy_fast(g, u, v, orients):
            return u, v
    return None


def is_saturated(g: BipartiteGraph, p: PatternSpec) -> bool:
    return contains_pattern(g, p) is None and first_dead_nonedge(g, p) is None


def check_strongly_saturated(g: BipartiteGraph, p: PatternSpec) -> bool:
    return first_dead_nonedge(g, p) is None


def weak_closure(g: BipartiteGraph, p: PatternSpec) -> tuple[BipartiteGraph, list[tuple[int, int]]]:
    """Greedy weak-saturation closure: add the first addable non-edge, rescan, repeat.

    Addable edges stay addable in supergraphs, so the closure does not depend
    on the scan order and no backtracking is needed.
    """
    orients = p.orientations()
    order: list[tuple[int, int]] = []
    progress = True
    while progress:
        progress = False
        for u, v in g.non_edges():
            if creates_copy_fast(g, u, v, orients):
                g = with_edge(g, u, v)
                order.append((u, v))
                progress = True
                break
    return g, order


def weak_closure_size(g: BipartiteGraph, p: PatternSpec) -> int:
    """Edge count of the weak closure, using whole sweeps instead of restarts."""
    orients = p.orientations()
    n_right = g.n_right
    rows = list(g.left_adj)
    cols = list(g.right_adj)
    full = (1 << n_right) - 1
    progress = True
    while progress:
        progress = False
        cur = BipartiteGraph(g.n_left, n_right, tuple(rows), tuple(cols), 0)
        for u in range(g.n_left):
            missing = full & ~rows[u]
            while missing:
                low = missing & -missing
                v = low.bit_length() - 1
                missing ^= low
                if creates_copy_fast(cur, u, v, orients):
                    rows[u] |= low
                    cols[v] |= 1 << u
                    cur = BipartiteGraph(g.n_left, n_right, tuple(rows), tuple(cols), 0)
                    progress = True
    return sum(r.bit_count() for r in rows)


def check_weakly_saturated(
    g: BipartiteGraph, p: PatternSpec
) -> tuple[bool, Optional[list[tuple[int, int]]]]:
    closure, order = weak_closure(g, p)
    if closure.is_complete():
        return True, order
    return False, None


def check_saturated(g: BipartiteGraph, p: PatternSpec) -> SaturationReport:
    free, offending = check_free(g, p)
    dead = first_dead_nonedge(g, p)
    witnesses: list[tuple[tuple[int, int], CopyWitness]] = []
    if dead is None:
        for u, v in g.non_edges():
            w = creates_copy(g, u, v, p)
            assert w is not None
            witnesses.append(((u, v), w))

    ordered = PatternSpec(p.s, p.t, ORDERED_LEFT_S) if p.mode == UNORDERED else p
    ordered_free = contains_pattern(g, ordered) is None
    ordered_dead = first_dead_nonedge(g, ordered)

    closure, order = weak_closure(g, p)
    weak = closure.is_complete()
    return SaturationReport(
        pattern=p,
        is_free=free,
        is_saturated=free and dead is None,
        is_ordered_saturated=ordered_free and ordered_dead is None,
        is_strongly_saturated=dead is None,
        is_weakly_saturated=weak,
        min_degree=g.min_degree(),
        offending_copy=offending,
        dead_nonedge=dead,
        ordered_dead_nonedge=ordered_dead,
        wsat_order=order if weak else None,
        weak_closure_edges=closure.edge_count,
        nonedge_witnesses=witnesses,
    )
