"""Closed-form saturation values and the extremal constructions that realize them.

Every generator re-verifies its output (pattern-free and saturated) before
returning it, and raises :class:`ConstructionError` otherwise.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from .bigraph import (
    BipartiteGraph,
    PatternSpec,
    Side,
    contains_pattern,
)
from .saturation import first_dead_nonedge


class ParameterError(ValueError):
    pass


class ConstructionError(RuntimeError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class FormulaTable:
    s: int
    t: int
    n: int
    conjecture_value: int
    near_diagonal_value: Optional[int]
    general_lower: int
    gks_lower: int
    ordered_value: int
    ehm_ss_value: Optional[int]
    f_family_count: int
    f_family_stated_count: int

    @property
    def f_family_discrepancy(self) -> bool:
        return self.f_family_count != self.f_family_stated_count

    def as_dict(self) -> dict:
        d = asdict(self)
        d["f_family_discrepancy"] = self.f_family_discrepancy
        return d


# (field, provenance label, formula text) in report order
FORMULA_ROWS = [
    ("conjecture_value", "conjecture (Moshkovitz-Shapira)", "(s+t-2)n - floor(((s+t-2)/2)^2)"),
    ("near_diagonal_value", "theorem, s = t-1, n >= N(t)", "(2t-3)n - (t-1)(t-2)"),
    ("general_lower", "theorem lower bound, n >= N(s,t)", "(s+t-2)n - (t-1)(t-2) - floor((s-1)^2/4)"),
    ("gks_lower", "theorem lower bound (Gan-Korandi-Sudakov)", "(s+t-2)n - (s+t-2)^2"),
    ("ordered_value", "classical (Wessel-Bollobas), ordered K_(s,t)", "n^2 - (n-s+1)(n-t+1)"),
    ("ehm_ss_value", "classical, s = t", "n^2 - (n-s+1)^2"),
    ("f_family_count", "computed edge count of F^n_{s,t}", "(s-1)n + (n-s+1)(t-1)"),
    ("f_family_stated_count", "stated edge count of F^n_{s,t}", "(s+t-2)n - (t-1)(t-2)"),
]


def _check_st(s: int, t: int) -> None:
    if s < 1 or s > t:
        raise ParameterError(f"need 1 <= s <= t, got s={s}, t={t}")


def formula_table(s: int, t: int, n: int) -> FormulaTable:
    _check_st(s, t)
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    k = s + t - 2
    return FormulaTable(
        s=s,
        t=t,
        n=n,
        conjecture_value=k * n - (k * k) // 4,
        near_diagonal_value=(2 * t - 3) * n - (t - 1) * (t - 2) if s == t - 1 else None,
        general_lower=k * n - (t - 1) * (t - 2) - ((s - 1) ** 2) // 4,
        gks_lower=k * n - k * k,
        ordered_value=n * n - (n - s + 1) * (n - t + 1),
        ehm_ss_value=n * n - (n - s + 1) ** 2 if s == t else None,
        f_family_count=(s - 1) * n + (n - s + 1) * (t - 1),
        f_family_stated_count=k * n - (t - 1) * (t - 2),
    )


def _verify(g: BipartiteGraph, p: PatternSpec, what: str) -> BipartiteGraph:
    g.check_consistency()
    copy = contains_pattern(g, p)
    if copy is not None:
        raise ConstructionError(f"{what} contains {p.label()}: {copy.as_dict()}", copy)
    dead = first_dead_nonedge(g, p)
    if dead is not None:
        raise ConstructionError(f"{what} is not {p.label()}-saturated: dead non-edge {dead}", dead)
    return g


def construct_f_family(s: int, t: int, n: int, shift_seed: int = 0) -> BipartiteGraph:
    """A member of F^n_{s,t}.

    Left vertices ``0..s-2`` are complete to the right side; every other left
    vertex ``i`` is joined to the cyclic interval ``i+shift .. i+shift+t-2``
    (mod n).  Distinct interval starts keep the K_{(t,s)} orientation out.
    """
    _check_st(s, t)
    if n < 2 * (t - 1) or n < s - 1 or n < 1:
        raise ParameterError(f"F-family construction needs n >= 2(t-1) = {2 * (t - 1)}, got {n}")
    full = (1 << n) - 1
    rows = []
    for i in range(n):
        if i < s - 1:
            rows.append(full)
            continue
        row = 0
        for j in range(t - 1):
            row |= 1 << ((i + shift_seed + j) % n)
        rows.append(row)
    g = BipartiteGraph.from_rows(rows, n)
    expected = (s - 1) * n + (n - s + 1) * (t - 1)
    if g.edge_count != expected:
        raise ConstructionError(f"F-family edge count {g.edge_count} != {expected}")
    return _verify(g, PatternSpec.unordered(s, t), f"F-family({s},{t},{n},{shift_seed})")


def construct_ms(s: int, t: int, n: int, shift: int = 0) -> BipartiteGraph:
    """Moshkovitz-Shapira style construction with (s+t-2)n - floor(((s+t-2)/2)^2) edges.

    Layout per side: ``s-1`` full vertices, then ``l = floor((t-s)/2)`` special
    vertices spanning a K_{l,l} with the opposite special vertices, then the
    ordinary vertices.  Ordinary vertices receive a (t-s)-regular bipartite
    graph of cyclic intervals among themselves, so they end at degree exactly
    t-1 while special vertices stay at s-1+l.
    """
    _check_st(s, t)
    if s == t:
        raise ParameterError("construct_ms needs s < t")
    l = (t - s) // 2
    base = s - 1 + l
    ordinary = n - base
    if ordinary < t - s:
        raise ParameterError(
            f"construct_ms({s},{t}) needs n >= t-1+l = {t - 1 + l} for the regular part, got {n}"
        )
    full = (1 << n) - 1
    special_right = 0
    for j in range(s - 1, base):
        special_right |= 1 << j
    full_right = (1 << (s - 1)) - 1
    rows = []
    for i in range(n):
        if i < s - 1:
            rows.append(full)
        elif i < base:
            rows.append(full_right | special_right)
        else:
            k = i - base
            row = full_right
            for j in range(t - s):
                row |= 1 << (base + (k + shift + j) % ordinary)
            rows.append(row)
    g = BipartiteGraph.from_rows(rows, n)
    expected = formula_table(s, t, n).conjecture_value
    if g.edge_count != expected:
        raise ConstructionError(f"MS construction has {g.edge_count} edges, expected {expected}")
    return _verify(g, PatternSpec.unordered(s, t), f"MS({s},{t},{n})")


def construct_ordered_extremal(s: int, t: int, n: int) -> BipartiteGraph:
    """Edges incident to the first s-1 left or the first t-1 right vertices."""
    if s < 1 or t < 1 or s > n or t > n:
        raise ParameterError(f"need 1 <= s, t <= n, got s={s}, t={t}, n={n}")
    full = (1 << n) - 1
    first_right = (1 << (t - 1)) - 1
    rows = [full if i < s - 1 else first_right for i in range(n)]
    g = BipartiteGraph.from_rows(rows, n)
    return _verify(g, PatternSpec.ordered(s, t), f"ordered-extremal({s},{t},{n})")


@dataclass(frozen=True)
class FMembership:
    side: Side
    S: tuple[int, ...]


def classify_f_membership(g: BipartiteGraph, s: int, t: int) -> tuple[bool, Optional[FMembership]]:
    """Decide membership in F_{s,t}; the witness is the side and the full set S."""
    if contains_pattern(g, PatternSpec.unordered(s, t)) is not None:
        return False, None
    for side in ("left", "right"):
        adj = g.adj(side)
        other = g.n_right if side == "left" else g.n_left
        degs = [m.bit_count() for m in adj]
        forced = [x for x, d in enumerate(degs) if d != t - 1]
        if any(degs[x] != other for x in forced) or len(forced) > s - 1:
            continue
        spare = [x for x, d in enumerate(degs) if d == t - 1 and d == other]
        need = s - 1 - len(forced)
        if need > len(spare):
            continue
        S = tuple(sorted(forced + spare[:need]))
        return True, FMembership(side, S)
    return False, None
