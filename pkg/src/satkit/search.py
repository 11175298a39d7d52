"""Exact minimum-edge search for K_{s,t}-saturated n x n bipartite graphs.

The search scans target edge counts ``m`` upward from the universally valid
minimum-degree bound.  For each ``m`` it enumerates left-row bitmask
multisets in a normal form (rows non-increasing by ``(degree, mask)``,
column degrees non-increasing), which meets every isomorphism class at least
once.  Survivors of the predicate are deduplicated by :func:`canonical_form`.

The tree below a configurable split depth is farmed out as independent tasks;
task results merge by set union and summed counters, so the outcome does not
depend on the number of workers.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Optional, Sequence

from .bigraph import (
    ORDERED_LEFT_S,
    BipartiteGraph,
    PatternSpec,
    find_subset,
)
from .constructions import ParameterError, formula_table
from .saturation import check_saturated, check_weakly_saturated, first_dead_nonedge, weak_closure_size

MODE_SAT = "unordered-sat"
MODE_ORDERED = "ordered-sat"
MODE_WEAK = "weak-sat"
SEARCH_MODES = (MODE_SAT, MODE_ORDERED, MODE_WEAK)
MODE_ALIASES = {"sat": MODE_SAT, "ordered": MODE_ORDERED, "weak": MODE_WEAK}

DEFAULT_N_CAP = 6


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class CanonicalForm:
    encoding: bytes

    def graph(self) -> BipartiteGraph:
        n_left, n_right = self.encoding[0], self.encoding[1]
        width = max(1, (n_right + 7) // 8)
        rows = []
        for i in range(n_left):
            chunk = self.encoding[2 + i * width : 2 + (i + 1) * width]
            key = int.from_bytes(chunk, "big")
            row = 0
            for p in range(n_right):
                if key >> (n_right - 1 - p) & 1:
                    row |= 1 << p
            rows.append(row)
        return BipartiteGraph.from_rows(rows, n_right)

    def hex(self) -> str:
        return self.encoding.hex()


def _column_orders(rows: Sequence[int], cols: Sequence[int]) -> list[list[int]]:
    """All column orders compatible with a sort by an isomorphism-invariant key."""
    row_deg = [r.bit_count() for r in rows]
    inv = {}
    for j, c in enumerate(cols):
        nb = []
        x = c
        while x:
            low = x & -x
            nb.append(row_deg[low.bit_length() - 1])
            x ^= low
        inv[j] = (c.bit_count(), tuple(sorted(nb, reverse=True)))
    order = sorted(range(len(cols)), key=lambda j: inv[j], reverse=True)
    blocks: list[list[int]] = []
    for j in order:
        if blocks and inv[blocks[-1][0]] == inv[j]:
            blocks[-1].append(j)
        else:
            blocks.append([j])
    out = []
    for choice in product(*(permutations(b) for b in blocks)):
        out.append([j for block in choice for j in block])
    return out


def _encode_min(rows: Sequence[int], cols: Sequence[int], n_left: int, n_right: int) -> bytes:
    best = None
    for order in _column_orders(rows, cols):
        keys = []
        for r in rows:
            k = 0
            for j in order:
                k = (k << 1) | (r >> j & 1)
            keys.append(k)
        keys.sort()
        cand = tuple(keys)
        if best is None or cand < best:
            best = cand
    width = max(1, (n_right + 7) // 8)
    body = b"".join(k.to_bytes(width, "big") for k in (best or ()))
    return bytes([n_left, n_right]) + body


def canonical_form(g: BipartiteGraph, allow_side_swap: bool = False) -> CanonicalForm:
    """Canonical encoding of ``g`` under row and column permutations.

    The encoding is the lexicographic minimum of the sorted row keys over all
    column orders that sort columns by (degree, neighbor degree multiset);
    restricting to these orders keeps the result an isomorphism invariant while
    cutting the permutation count.  With ``allow_side_swap`` on a square graph
    the transpose competes as well.
    """
    if g.n_left > 255 or g.n_right > 255:
        raise ValueError("canonical_form supports sides up to 255")
    enc = _encode_min(g.left_adj, g.right_adj, g.n_left, g.n_right)
    if allow_side_swap and g.n_left == g.n_right:
        enc = min(enc, _encode_min(g.right_adj, g.left_adj, g.n_right, g.n_left))
    return CanonicalForm(enc)


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


@dataclass
class SearchBudget:
    max_seconds: Optional[float] = None
    max_nodes: Optional[int] = None
    n_cap: int = DEFAULT_N_CAP
    workers: int = 1
    split_depth: int = 1


@dataclass
class SearchResult:
    s: int
    t: int
    n: int
    mode: str
    min_edges: Optional[int]
    extremal_graphs: list[CanonicalForm]
    nodes_explored: int
    nodes_per_level: dict[int, int]
    elapsed: float
    lower_bound_used: int
    complete: bool
    census: bool
    exhausted_through: Optional[int]
    reference_bounds: dict[str, Optional[int]] = field(default_factory=dict)

    def graphs(self) -> list[BipartiteGraph]:
        return [c.graph() for c in self.extremal_graphs]

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "n": self.n,
            "mode": self.mode,
            "min_edges": self.min_edges,
            "complete": self.complete,
            "census": self.census,
            "exhausted_through": self.exhausted_through,
            "lower_bound_used": self.lower_bound_used,
            "nodes_explored": self.nodes_explored,
            "nodes_per_level": {str(k): v for k, v in sorted(self.nodes_per_level.items())},
            "extremal_count": len(self.extremal_graphs),
            "extremal_graphs": [c.hex() for c in self.extremal_graphs],
            "reference_bounds": self.reference_bounds,
            "elapsed": self.elapsed,
        }


@dataclass(frozen=True)
class _Context:
    n: int
    mode: str
    pattern: PatternSpec
    census: bool
    swap: bool
    dmin_left: int
    dmin_right: int
    cand_rows: tuple[int, ...]
    cand_deg: tuple[int, ...]
    free_orients: tuple[tuple[int, int], ...]


def _make_context(s: int, t: int, n: int, mode: str, census: bool) -> _Context:
    if mode == MODE_ORDERED:
        pattern = PatternSpec(s, t, ORDERED_LEFT_S)
        dmin_left, dmin_right = min(t - 1, n), min(s - 1, n)
    else:
        pattern = PatternSpec.unordered(s, t)
        dmin_left = dmin_right = min(pattern.s - 1, n)
    if mode == MODE_WEAK:
        # weak saturation imposes no degree floor and does not require freeness
        dmin_left = dmin_right = 0
        free_orients: tuple = ()
    else:
        free_orients = tuple(pattern.orientations())
    full = (1 << n) - 1
    cands = [r for r in range(full + 1) if r.bit_count() >= dmin_left]
    cands.sort(key=lambda r: (r.bit_count(), r), reverse=True)
    return _Context(
        n=n,
        mode=mode,
        pattern=pattern,
        census=census,
        swap=pattern.side_symmetric(),
        dmin_left=dmin_left,
        dmin_right=dmin_right,
        cand_rows=tuple(cands),
        cand_deg=tuple(r.bit_count() for r in cands),
        free_orients=free_orients,
    )


class _BudgetExceeded(Exception):
    pass


class _Found(Exception):
    pass


class _Walker:
    def __init__(self, ctx: _Context, m: int, deadline: Optional[float], node_limit: Optional[int]):
        self.ctx = ctx
        self.m = m
        self.deadline = deadline
        self.node_limit = node_limit
        self.nodes = 0
        self.found: set[bytes] = set()
        self.first: Optional[bytes] = None

    def _tick(self) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise _BudgetExceeded
        if self.deadline is not None and self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExceeded

    def children(self, rows: list[int], colcnt: list[int], used: int, start: int):
        ctx = self.ctx
        n = ctx.n
        r = n - len(rows) - 1
        for idx in range(start, len(ctx.cand_rows)):
            row = ctx.cand_rows[idx]
            deg = ctx.cand_deg[idx]
            rem = self.m - used - deg
            if rem > r * deg:
                # later candidates have no larger degree
                break
            if rem < r * ctx.dmin_left:
                continue
            new = [colcnt[j] + (row >> j & 1) for j in range(n)]
            if not self._columns_ok(new, r):
                continue
            if ctx.free_orients and self._creates_copy_with(rows, row):
                continue
            yield idx, row, new, used + deg

    def _columns_ok(self, cnt: list[int], r: int) -> bool:
        dmin = self.ctx.dmin_right
        suffix_max = 0
        for j in range(len(cnt) - 1, -1, -1):
            c = cnt[j]
            if c + r < dmin or c + r < suffix_max:
                return False
            if c > suffix_max:
                suffix_max = c
        return True

    def _creates_copy_with(self, rows: list[int], row: int) -> bool:
        for a, b in self.ctx.free_orients:
            if row.bit_count() < b or len(rows) < a - 1:
                continue
            cands = [i for i, x in enumerate(rows) if (x & row).bit_count() >= b]
            if find_subset(rows, cands, a - 1, row, b) is not None:
                return True
        return False

    def _leaf(self, rows: list[int]) -> None:
        ctx = self.ctx
        g = BipartiteGraph.from_rows(rows, ctx.n)
        if ctx.mode == MODE_WEAK:
            ok = weak_closure_size(g, ctx.pattern) == ctx.n * ctx.n
        else:
            ok = first_dead_nonedge(g, ctx.pattern) is None
        if not ok:
            return
        enc = canonical_form(g, ctx.swap).encoding
        if self.first is None:
            self.first = enc
        self.found.add(enc)
        if not ctx.census:
            raise _Found

    def walk(self, rows: list[int], colcnt: list[int], used: int, start: int) -> None:
        if len(rows) == self.ctx.n:
            if used == self.m:
                self._leaf(rows)
            return
        for idx, row, new, used2 in self.children(rows, colcnt, used, start):
            self._tick()
            rows.append(row)
            try:
                self.walk(rows, new, used2, idx)
            finally:
                rows.pop()


def _replay(ctx: _Context, prefix: Sequence[int]) -> tuple[list[int], list[int], int]:
    rows = [ctx.cand_rows[i] for i in prefix]
    colcnt = [sum(r >> j & 1 for r in rows) for j in range(ctx.n)]
    return rows, colcnt, sum(r.bit_count() for r in rows)


def _run_task(args) -> tuple[int, list[bytes], Optional[bytes], bool]:
    ctx, m, prefix, deadline, node_limit = args
    w = _Walker(ctx, m, deadline, node_limit)
    rows, colcnt, used = _replay(ctx, prefix)
    start = prefix[-1] if prefix else 0
    aborted = False
    try:
        w.walk(rows, colcnt, used, start)
    except _Found:
        pass
    except _BudgetExceeded:
        aborted = True
    return w.nodes, sorted(w.found), w.first, aborted


def _prefixes(ctx: _Context, m: int, depth: int) -> tuple[list[tuple[int, ...]], int]:
    """Valid row-index prefixes of length ``depth`` (fewer if the tree is shallower)."""
    w = _Walker(ctx, m, None, None)
    out: list[tuple[int, ...]] = []
    depth = min(depth, ctx.n)

    def rec(prefix: list[int], rows: list[int], colcnt: list[int], used: int, start: int) -> None:
        if len(prefix) == depth:
            out.append(tuple(prefix))
            return
        for idx, row, new, used2 in w.children(rows, colcnt, used, start):
            w.nodes += 1
            prefix.append(idx)
            rows.append(row)
            rec(prefix, rows, new, used2, idx)
            rows.pop()
            prefix.pop()

    rec([], [], [0] * ctx.n, 0, 0)
    return out, w.nodes


def _verify_emitted(ctx: _Context, g: BipartiteGraph, m: int) -> None:
    if g.edge_count != m:
        raise AssertionError(f"emitted graph has {g.edge_count} edges, level is {m}")
    if ctx.mode == MODE_WEAK:
        ok, _ = check_weakly_saturated(g, ctx.pattern)
    else:
        ok = check_saturated(g, ctx.pattern).is_saturated
    if not ok:
        raise AssertionError(f"search emitted a graph failing the {ctx.mode} predicate: {g!r}")


def _lower_bound(ctx: _Context) -> int:
    return max(ctx.n * ctx.dmin_left, ctx.n * ctx.dmin_right)


def _search(
    s: int, t: int, n: int, mode: str, census: bool, budget: Optional[SearchBudget]
) -> SearchResult:
    budget = budget or SearchBudget()
    mode = MODE_ALIASES.get(mode, mode)
    if mode not in SEARCH_MODES:
        raise ParameterError(f"unknown search mode {mode!r}")
    if s < 1 or s > t:
        raise ParameterError(f"need 1 <= s <= t, got s={s}, t={t}")
    if n < 1 or n > budget.n_cap:
        raise ParameterError(f"n={n} outside [1, {budget.n_cap}] (raise n_cap to go further)")
    ctx = _make_context(s, t, n, mode, census)
    start_time = time.monotonic()
    deadline = start_time + budget.max_seconds if budget.max_seconds is not None else None

    ft = formula_table(s, t, n)
    refs: dict[str, Optional[int]] = {
        "conjecture_value": ft.conjecture_value if s < t else None,
        "near_diagonal_value": ft.near_diagonal_value,
        "general_lower": ft.general_lower if s < t else None,
        "gks_lower": ft.gks_lower,
        "ordered_value": ft.ordered_value,
        "ehm_ss_value": ft.ehm_ss_value,
        "weak_asymptotic_guide": (2 * s - 2) * n,
    }

    lb = _lower_bound(ctx)
    nodes_total = 0
    per_level: dict[int, int] = {}
    exhausted: Optional[int] = None
    min_edges: Optional[int] = None
    found: list[bytes] = []
    complete = True

    executor = ProcessPoolExecutor(max_workers=budget.workers) if budget.workers > 1 else None
    try:
        for m in range(lb, n * n + 1):
            prefixes, prefix_nodes = _prefixes(ctx, m, budget.split_depth)
            limit = None if budget.max_nodes is None else max(0, budget.max_nodes - nodes_total)
            tasks = [(ctx, m, p, deadline, limit) for p in prefixes]
            if executor is None:
                results = map(_run_task, tasks)
            else:
                results = executor.map(_run_task, tasks, chunksize=1)
            level_nodes = prefix_nodes
            level_found: set[bytes] = set()
            firsts: list[bytes] = []
            aborted = False
            for nodes, encs, first, task_aborted in results:
                level_nodes += nodes
                level_found.update(encs)
                if first is not None:
                    firsts.append(first)
                aborted = aborted or task_aborted
            nodes_total += level_nodes
            per_level[m] = level_nodes
            if budget.max_nodes is not None and nodes_total > budget.max_nodes:
                aborted = True
            if level_found:
                min_edges = m
                found = sorted(level_found) if census else [min(firsts)]
                if census and aborted:
                    complete = False
                else:
                    exhausted = m
                break
            if aborted:
                complete = False
                break
            exhausted = m
    finally:
        if executor is not None:
            executor.shutdown()

    forms = [CanonicalForm(e) for e in found]
    for cf in forms:
        _verify_emitted(ctx, cf.graph(), min_edges)

    return SearchResult(
        s=s,
        t=t,
        n=n,
        mode=mode,
        min_edges=min_edges,
        extremal_graphs=forms,
        nodes_explored=nodes_total,
        nodes_per_level=per_level,
        elapsed=time.monotonic() - start_time,
        lower_bound_used=lb,
        complete=complete and min_edges is not None,
        census=census,
        exhausted_through=exhausted,
        reference_bounds=refs,
    )


def min_sat_edges(
    s: int, t: int, n: int, mode: str = MODE_SAT, budget: Optional[SearchBudget] = None,
    census: bool = False,
) -> SearchResult:
    return _search(s, t, n, mode, census, budget)


def min_wsat_edges(s: int, t: int, n: int, budget: Optional[SearchBudget] = None) -> SearchResult:
    return _search(s, t, n, MODE_WEAK, False, budget)


def census_extremal(
    s: int, t: int, n: int, mode: str = MODE_SAT, budget: Optional[SearchBudget] = None
) -> SearchResult:
    return _search(s, t, n, mode, True, budget)


def run_search(
    s: int, t: int, n: int, mode: str = MODE_SAT, census: bool = False,
    budget: Optional[SearchBudget] = None,
) -> SearchResult:
    """Single entry point used by the command line; ``mode`` accepts the short aliases."""
    return _search(s, t, n, mode, census, budget)
