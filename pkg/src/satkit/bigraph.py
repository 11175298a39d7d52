"""Immutable bipartite graphs with bitset adjacency and K_{a,b} containment.

Left vertices are ``0..n_left-1`` and right vertices ``0..n_right-1``.  Each
neighborhood is stored as a Python ``int`` bitmask over the opposite side, so
common neighborhoods are plain ``&`` chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Literal, Optional, Sequence

Side = Literal["left", "right"]

ORDERED_LEFT_S = "ordered-left-s"
ORDERED_LEFT_T = "ordered-left-t"
UNORDERED = "unordered"
PATTERN_MODES = (ORDERED_LEFT_S, ORDERED_LEFT_T, UNORDERED)


class GraphConstructionError(ValueError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_set(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def set_to_bits(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _transpose(rows: Sequence[int], n_cols: int) -> tuple[int, ...]:
    cols = [0] * n_cols
    for i, row in enumerate(rows):
        bit = 1 << i
        for j in iter_bits(row):
            cols[j] |= bit
    return tuple(cols)


@dataclass(frozen=True)
class BipartiteGraph:
    n_left: int
    n_right: int
    left_adj: tuple[int, ...]
    right_adj: tuple[int, ...]
    edge_count: int

    @classmethod
    def from_rows(cls, rows: Sequence[int], n_right: int) -> "BipartiteGraph":
        """Build from left-vertex bitmasks (bit ``j`` set means edge to right ``j``)."""
        full = (1 << n_right) - 1
        rows = tuple(rows)
        for i, row in enumerate(rows):
            if row < 0 or row & ~full:
                raise GraphConstructionError(f"row {i} has bits outside [0, {n_right})")
        return cls(
            n_left=len(rows),
            n_right=n_right,
            left_adj=rows,
            right_adj=_transpose(rows, n_right),
            edge_count=sum(r.bit_count() for r in rows),
        )

    def adj(self, side: Side) -> tuple[int, ...]:
        return self.left_adj if side == "left" else self.right_adj

    def side_size(self, side: Side) -> int:
        return self.n_left if side == "left" else self.n_right

    def neighbors(self, side: Side, vertex: int) -> frozenset[int]:
        return bits_to_set(self.adj(side)[vertex])

    def degree(self, side: Side, vertex: int) -> int:
        return self.adj(side)[vertex].bit_count()

    def degrees(self, side: Side) -> list[int]:
        return [m.bit_count() for m in self.adj(side)]

    def min_degree(self) -> int:
        degs = self.degrees("left") + self.degrees("right")
        return min(degs) if degs else 0

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.left_adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, row in enumerate(self.left_adj) for v in iter_bits(row)]

    def non_edges(self) -> Iterator[tuple[int, int]]:
        """Missing (left, right) pairs in row-major order."""
        full = (1 << self.n_right) - 1
        for u, row in enumerate(self.left_adj):
            for v in iter_bits(full & ~row):
                yield u, v

    def is_complete(self) -> bool:
        return self.edge_count == self.n_left * self.n_right

    def transpose(self) -> "BipartiteGraph":
        return BipartiteGraph(
            n_left=self.n_right,
            n_right=self.n_left,
            left_adj=self.right_adj,
            right_adj=self.left_adj,
            edge_count=self.edge_count,
        )

    def check_consistency(self) -> None:
        """Raise if the two adjacency orientations or the edge count disagree."""
        if len(self.left_adj) != self.n_left or len(self.right_adj) != self.n_right:
            raise GraphConstructionError("adjacency length mismatch")
        if _transpose(self.left_adj, self.n_right) != self.right_adj:
            raise GraphConstructionError("left_adj and right_adj are not transposes")
        total = sum(r.bit_count() for r in self.left_adj)
        if total != self.edge_count or total != sum(c.bit_count() for c in self.right_adj):
            raise GraphConstructionError("edge_count does not match adjacency")

    def __repr__(self) -> str:
        rows = "/".join(
            "".join("1" if r >> j & 1 else "0" for j in range(self.n_right)) for r in self.left_adj
        )
        return f"BipartiteGraph({self.n_left}x{self.n_right}, m={self.edge_count}, {rows or '-'})"


def build(n_left: int, n_right: int, edges: Iterable[tuple[int, int]]) -> BipartiteGraph:
    if n_left < 0 or n_right < 0:
        raise GraphConstructionError(f"negative side size ({n_left}, {n_right})")
    rows = [0] * n_left
    for u, v in edges:
        if not (0 <= u < n_left and 0 <= v < n_right):
            raise GraphConstructionError(
                f"edge ({u}, {v}) out of range for a {n_left}x{n_right} graph"
            )
        rows[u] |= 1 << v
    return BipartiteGraph.from_rows(rows, n_right)


def empty(n_left: int, n_right: Optional[int] = None) -> BipartiteGraph:
    n_right = n_left if n_right is None else n_right
    return BipartiteGraph.from_rows([0] * n_left, n_right)


def complete(n_left: int, n_right: Optional[int] = None) -> BipartiteGraph:
    n_right = n_left if n_right is None else n_right
    return BipartiteGraph.from_rows([(1 << n_right) - 1] * n_left, n_right)


def _check_pair(g: BipartiteGraph, u: int, v: int) -> None:
    if not (0 <= u < g.n_left and 0 <= v < g.n_right):
        raise GraphConstructionError(f"pair ({u}, {v}) out of range for {g.n_left}x{g.n_right}")


def with_edge(g: BipartiteGraph, u: int, v: int) -> BipartiteGraph:
    _check_pair(g, u, v)
    if g.has_edge(u, v):
        return g
    left = list(g.left_adj)
    right = list(g.right_adj)
    left[u] |= 1 << v
    right[v] |= 1 << u
    return BipartiteGraph(g.n_left, g.n_right, tuple(left), tuple(right), g.edge_count + 1)


def without_edge(g: BipartiteGraph, u: int, v: int) -> BipartiteGraph:
    _check_pair(g, u, v)
    if not g.has_edge(u, v):
        return g
    left = list(g.left_adj)
    right = list(g.right_adj)
    left[u] &= ~(1 << v)
    right[v] &= ~(1 << u)
    return BipartiteGraph(g.n_left, g.n_right, tuple(left), tuple(right), g.edge_count - 1)


def common_neighborhood(g: BipartiteGraph, side: Side, vertices: Iterable[int]) -> frozenset[int]:
    vertices = list(vertices)
    if not vertices:
        raise ValueError("common_neighborhood of an empty vertex set is not defined")
    adj = g.adj(side)
    size = g.side_size(side)
    mask = -1
    for x in vertices:
        if not 0 <= x < size:
            raise ValueError(f"{side} vertex {x} out of range")
        mask &= adj[x]
    return bits_to_set(mask)


@dataclass(frozen=True)
class PatternSpec:
    """Target pattern K_{s,t}.

    ``ordered-left-s`` is K_{(s,t)} with the s-class on the left side,
    ``ordered-left-t`` is K_{(t,s)}, and ``unordered`` accepts either.
    """

    s: int
    t: int
    mode: str = UNORDERED

    def __post_init__(self) -> None:
        if self.s < 1 or self.t < 1:
            raise ValueError(f"pattern sizes must be >= 1, got ({self.s}, {self.t})")
        if self.mode not in PATTERN_MODES:
            raise ValueError(f"unknown pattern mode {self.mode!r}")
        if self.mode == UNORDERED and self.s > self.t:
            s, t = self.t, self.s
            object.__setattr__(self, "s", s)
            object.__setattr__(self, "t", t)

    @classmethod
    def unordered(cls, s: int, t: int) -> "PatternSpec":
        return cls(s, t, UNORDERED)

    @classmethod
    def ordered(cls, s: int, t: int) -> "PatternSpec":
        return cls(s, t, ORDERED_LEFT_S)

    def orientations(self) -> list[tuple[int, int]]:
        """(left count, right count) pairs that realize the pattern."""
        if self.mode == ORDERED_LEFT_S:
            return [(self.s, self.t)]
        if self.mode == ORDERED_LEFT_T:
            return [(self.t, self.s)]
        if self.s == self.t:
            return [(self.s, self.t)]
        return [(self.s, self.t), (self.t, self.s)]

    def side_symmetric(self) -> bool:
        return self.mode == UNORDERED or self.s == self.t

    def label(self) -> str:
        if self.mode == UNORDERED:
            return f"K_{{{self.s},{self.t}}}"
        a, b = self.orientations()[0]
        return f"K_{{({a},{b})}}"


@dataclass(frozen=True)
class CopyWitness:
    left_set: tuple[int, ...]
    right_set: tuple[int, ...]
    s_side: Side

    def pairs(self) -> Iterator[tuple[int, int]]:
        for u in self.left_set:
            for v in self.right_set:
                yield u, v

    def is_valid_in(self, g: BipartiteGraph) -> bool:
        return all(g.has_edge(u, v) for u, v in self.pairs())

    def as_dict(self) -> dict:
        return {"left": list(self.left_set), "right": list(self.right_set), "s_side": self.s_side}


def _s_side(p: Optional[PatternSpec], left_count: int) -> Side:
    if p is None or p.s == p.t:
        return "left"
    if p.mode == UNORDERED:
        return "left" if left_count == p.s else "right"
    return "left" if p.mode == ORDERED_LEFT_S else "right"


def _lowest_bits(mask: int, k: int) -> tuple[int, ...]:
    out = []
    for j in iter_bits(mask):
        if len(out) == k:
            break
        out.append(j)
    return tuple(out)


def find_subset(
    adj: Sequence[int], candidates: Sequence[int], k: int, running: int, need: int
) -> Optional[tuple[int, ...]]:
    """First ``k``-subset of ``candidates`` (in the given order) keeping ``need`` common bits.

    ``running`` is the starting intersection; each chosen vertex ANDs its
    neighborhood into it.  Returns the chosen vertices in traversal order.
    """
    if running.bit_count() < need:
        return None
    if k == 0:
        return ()
    ncand = len(candidates)
    chosen: list[int] = []

    def rec(start: int, cur: int) -> bool:
        left_to_pick = k - len(chosen)
        for i in range(start, ncand - left_to_pick + 1):
            nxt = cur & adj[candidates[i]]
            if nxt.bit_count() < need:
                continue
            chosen.append(candidates[i])
            if left_to_pick == 1 or rec(i + 1, nxt):
                return True
            chosen.pop()
        return False

    return tuple(chosen) if rec(0, running) else None


def _degree_order(adj: Sequence[int], mask: int, min_deg: int = 0) -> list[int]:
    verts = [x for x in iter_bits(mask) if adj[x].bit_count() >= min_deg]
    verts.sort(key=lambda x: (-adj[x].bit_count(), x))
    return verts


def _contains_ordered_raw(g: BipartiteGraph, a: int, b: int) -> Optional[tuple[tuple[int, ...], int]]:
    if a > g.n_left or b > g.n_right:
        return None
    cands = _degree_order(g.left_adj, (1 << g.n_left) - 1, b)
    found = find_subset(g.left_adj, cands, a, (1 << g.n_right) - 1, b)
    if found is None:
        return None
    common = -1
    for x in found:
        common &= g.left_adj[x]
    return found, common


def contains_ordered(g: BipartiteGraph, a: int, b: int) -> Optional[CopyWitness]:
    """Witness for K_{(a,b)}: ``a`` left vertices with ``b`` common right neighbors."""
    if a < 1 or b < 1:
        raise ValueError("pattern sizes must be >= 1")
    raw = _contains_ordered_raw(g, a, b)
    if raw is None:
        return None
    left, common = raw
    return CopyWitness(tuple(sorted(left)), _lowest_bits(common, b), "left")


def _orientation_cost(g: BipartiteGraph, a: int, b: int) -> int:
    eligible = sum(1 for r in g.left_adj if r.bit_count() >= b)
    return comb(eligible, a)


def contains_pattern(g: BipartiteGraph, p: PatternSpec) -> Optional[CopyWitness]:
    orients = p.orientations()
    if len(orients) > 1:
        orients = sorted(orients, key=lambda ab: _orientation_cost(g, *ab))
    for a, b in orients:
        raw = _contains_ordered_raw(g, a, b)
        if raw is not None:
            left, common = raw
            return CopyWitness(tuple(sorted(left)), _lowest_bits(common, b), _s_side(p, a))
    return None


def _creates_raw(g: BipartiteGraph, u: int, v: int, a: int, b: int) -> Optional[tuple[int, ...]]:
    nu = g.left_adj[u] | (1 << v)
    if nu.bit_count() < b:
        return None
    nv = g.right_adj[v] & ~(1 << u)
    if nv.bit_count() < a - 1:
        return None
    cands = _degree_order(g.left_adj, nv, b)
    return find_subset(g.left_adj, cands, a - 1, nu, b)


def creates_copy(g: BipartiteGraph, u: int, v: int, p: PatternSpec) -> Optional[CopyWitness]:
    """Witness for a copy of ``p`` in ``g + uv`` that uses the new edge ``uv``."""
    _check_pair(g, u, v)
    if g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is already an edge; creates_copy probes non-edges only")
    orients = p.orientations()
    if len(orients) > 1:
        nv = (g.right_adj[v] & ~(1 << u)).bit_count()
        orients = sorted(orients, key=lambda ab: comb(nv, ab[0] - 1))
    for a, b in orients:
        w = _creates_raw(g, u, v, a, b)
        if w is None:
            continue
        common = g.left_adj[u] | (1 << v)
        for x in w:
            common &= g.left_adj[x]
        others = _lowest_bits(common & ~(1 << v), b - 1)
        return CopyWitness(
            tuple(sorted((u,) + w)), tuple(sorted((v,) + others)), _s_side(p, a)
        )
    return None


def creates_copy_fast(g: BipartiteGraph, u: int, v: int, orients: Sequence[tuple[int, int]]) -> bool:
    """Boolean form of :func:`creates_copy` without witness assembly or validation."""
    for a, b in orients:
        if _creates_raw(g, u, v, a, b) is not None:
            return True
    return False
