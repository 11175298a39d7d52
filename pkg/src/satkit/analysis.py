"""Structural detectors and edge-count certificates for saturated graphs.

Covers cores, nice cores, the B/C partition around a nice core and its two
observations, the core edge-count inequality, the minimum-degree counting
certificate, and the high/low degree split.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Optional

from .bigraph import (
    BipartiteGraph,
    CopyWitness,
    PatternSpec,
    Side,
    bits_to_set,
    contains_pattern,
    creates_copy,
    iter_bits,
    set_to_bits,
)
from .saturation import first_dead_nonedge, is_saturated


class AnalysisError(ValueError):
    pass


def _other(side: Side) -> Side:
    return "right" if side == "left" else "left"


def _sorted(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


def _induced(g: BipartiteGraph, left_mask: int, right_mask: int) -> BipartiteGraph:
    """Subgraph on the given vertex sets, relabelled to ``0..k-1`` in index order."""
    left = _sorted(left_mask)
    right = _sorted(right_mask)
    pos = {v: j for j, v in enumerate(right)}
    rows = []
    for u in left:
        row = 0
        for v in iter_bits(g.left_adj[u] & right_mask):
            row |= 1 << pos[v]
        rows.append(row)
    return BipartiteGraph.from_rows(rows, len(right))


@dataclass(frozen=True)
class Core:
    A: tuple[int, ...]
    A_prime: tuple[int, ...]
    a0: int
    a0_prime: int


@dataclass(frozen=True)
class NiceCore:
    A: tuple[int, ...]
    A_prime: tuple[int, ...]
    a0: int
    a0_prime: int
    # the K_{s,t-1} found inside (A, A'), in original vertex labels
    copy: Optional[CopyWitness] = None

    def as_dict(self) -> dict:
        return {
            "A": list(self.A),
            "A_prime": list(self.A_prime),
            "a0": self.a0,
            "a0_prime": self.a0_prime,
            "copy": self.copy.as_dict() if self.copy else None,
        }


def find_cores(g: BipartiteGraph) -> list[Core]:
    cores = []
    for a0 in range(g.n_left):
        for a0p in iter_bits(g.left_adj[a0]):
            cores.append(Core(_sorted(g.right_adj[a0p]), _sorted(g.left_adj[a0]), a0, a0p))
    return cores


def _core_copy(g: BipartiteGraph, A: int, Ap: int, a: int, b: int) -> Optional[CopyWitness]:
    sub = _induced(g, A, Ap)
    w = contains_pattern(sub, PatternSpec.unordered(a, b))
    if w is None:
        return None
    left = _sorted(A)
    right = _sorted(Ap)
    return CopyWitness(
        tuple(left[i] for i in w.left_set), tuple(right[j] for j in w.right_set), w.s_side
    )


def find_nice_cores(g: BipartiteGraph, s: int, t: int) -> list[NiceCore]:
    """Edges ``a0 a0'`` with both degrees t-1 whose neighborhoods span a K_{s,t-1}."""
    if not 1 <= s < t:
        raise AnalysisError(f"nice cores need 1 <= s < t, got s={s}, t={t}")
    out = []
    for a0 in range(g.n_left):
        if g.left_adj[a0].bit_count() != t - 1:
            continue
        for a0p in iter_bits(g.left_adj[a0]):
            if g.right_adj[a0p].bit_count() != t - 1:
                continue
            A, Ap = g.right_adj[a0p], g.left_adj[a0]
            copy = _core_copy(g, A, Ap, s, t - 1)
            if copy is not None:
                out.append(NiceCore(_sorted(A), _sorted(Ap), a0, a0p, copy))
    return out


def nice_core_readings(g: BipartiteGraph, s: int, t: int) -> list[dict]:
    """Per candidate edge, which of the three nice-core readings accept it.

    ``k_s_t_minus_1`` is the operative reading used by :func:`find_nice_cores`;
    ``k_s_t`` (a K_{s,t} inside a (t-1) x (t-1) set, never satisfiable) and
    ``k_2_3`` are the alternatives.  Only candidates where the readings
    disagree are returned.
    """
    out = []
    for a0 in range(g.n_left):
        if g.left_adj[a0].bit_count() != t - 1:
            continue
        for a0p in iter_bits(g.left_adj[a0]):
            if g.right_adj[a0p].bit_count() != t - 1:
                continue
            A, Ap = g.right_adj[a0p], g.left_adj[a0]
            readings = {
                "k_s_t_minus_1": _core_copy(g, A, Ap, s, t - 1) is not None,
                "k_s_t": _core_copy(g, A, Ap, s, t) is not None,
                "k_2_3": _core_copy(g, A, Ap, 2, 3) is not None,
            }
            if len(set(readings.values())) > 1:
                out.append({"a0": a0, "a0_prime": a0p, **readings})
    return out


def validate_nice_core(g: BipartiteGraph, core: NiceCore, s: int, t: int) -> None:
    A, Ap = set_to_bits(core.A), set_to_bits(core.A_prime)
    if len(core.A) != t - 1 or len(core.A_prime) != t - 1:
        raise AnalysisError(f"nice core sides must have size t-1 = {t - 1}")
    if core.a0 not in core.A or core.a0_prime not in core.A_prime:
        raise AnalysisError("a0 / a0' must lie inside the core")
    if g.left_adj[core.a0] != Ap:
        raise AnalysisError(f"N(a0={core.a0}) != A'")
    if g.right_adj[core.a0_prime] != A:
        raise AnalysisError(f"N(a0'={core.a0_prime}) != A")
    if _core_copy(g, A, Ap, s, t - 1) is None:
        raise AnalysisError(f"core does not contain K_{{{s},{t - 1}}}")


@dataclass(frozen=True)
class PartitionLabels:
    A: tuple[int, ...]
    B: tuple[int, ...]
    B1: tuple[int, ...]
    B2: tuple[int, ...]
    C: tuple[int, ...]
    C1: tuple[int, ...]
    C2: tuple[int, ...]
    A_prime: tuple[int, ...]
    B_prime: tuple[int, ...]
    B1_prime: tuple[int, ...]
    B2_prime: tuple[int, ...]
    C_prime: tuple[int, ...]
    C1_prime: tuple[int, ...]
    C2_prime: tuple[int, ...]

    @property
    def y(self) -> int:
        return len(self.C2)

    @property
    def y_prime(self) -> int:
        return len(self.C2_prime)

    def as_dict(self) -> dict:
        d = {k: list(getattr(self, k)) for k in self.__dataclass_fields__}
        d["y"] = self.y
        d["y_prime"] = self.y_prime
        return d


def partition_around_core(g: BipartiteGraph, core: NiceCore, s: int, t: int) -> PartitionLabels:
    """Label every vertex outside the core as B1, B2, C1 or C2 (and primes).

    B: at least s-1 neighbors in the opposite core side; B1: at least t-1
    neighbors in the opposite A ∪ B; C1: at least s-1 neighbors outside the
    opposite B2.  Each step needs both sides of the previous one.
    """
    validate_nice_core(g, core, s, t)
    A = {"left": set_to_bits(core.A), "right": set_to_bits(core.A_prime)}
    full = {"left": (1 << g.n_left) - 1, "right": (1 << g.n_right) - 1}
    B, C, B1, B2, C1, C2 = {}, {}, {}, {}, {}, {}
    for side in ("left", "right"):
        adj, opp = g.adj(side), _other(side)
        b = 0
        for v in iter_bits(full[side] & ~A[side]):
            if (adj[v] & A[opp]).bit_count() >= s - 1:
                b |= 1 << v
        B[side] = b
        C[side] = full[side] & ~A[side] & ~b
    for side in ("left", "right"):
        adj, opp = g.adj(side), _other(side)
        target = A[opp] | B[opp]
        b1 = 0
        for v in iter_bits(B[side]):
            if (adj[v] & target).bit_count() >= t - 1:
                b1 |= 1 << v
        B1[side], B2[side] = b1, B[side] & ~b1
    for side in ("left", "right"):
        adj, opp = g.adj(side), _other(side)
        c1 = 0
        for v in iter_bits(C[side]):
            if (adj[v] & ~B2[opp]).bit_count() >= s - 1:
                c1 |= 1 << v
        C1[side], C2[side] = c1, C[side] & ~c1
    L, R = "left", "right"
    return PartitionLabels(
        A=core.A,
        B=_sorted(B[L]),
        B1=_sorted(B1[L]),
        B2=_sorted(B2[L]),
        C=_sorted(C[L]),
        C1=_sorted(C1[L]),
        C2=_sorted(C2[L]),
        A_prime=core.A_prime,
        B_prime=_sorted(B[R]),
        B1_prime=_sorted(B1[R]),
        B2_prime=_sorted(B2[R]),
        C_prime=_sorted(C[R]),
        C1_prime=_sorted(C1[R]),
        C2_prime=_sorted(C2[R]),
    )


@dataclass
class ObservationReport:
    graph_saturated: bool
    c_degree_holds: bool
    c2_complete_holds: bool
    c_degree_counterexample: Optional[tuple[str, int]] = None
    c2_missing_pair: Optional[tuple[int, int]] = None

    @property
    def holds(self) -> bool:
        return self.c_degree_holds and self.c2_complete_holds

    def as_dict(self) -> dict:
        return {
            "graph_saturated": self.graph_saturated,
            "c_degree_holds": self.c_degree_holds,
            "c2_complete_holds": self.c2_complete_holds,
            "c_degree_counterexample": (
                list(self.c_degree_counterexample) if self.c_degree_counterexample else None
            ),
            "c2_missing_pair": list(self.c2_missing_pair) if self.c2_missing_pair else None,
        }


def check_core_observations(
    g: BipartiteGraph, labels: PartitionLabels, s: int, t: int
) -> ObservationReport:
    """(i) C vertices have >= t-1 neighbors in the opposite A ∪ B; (ii) C2 x C2' is complete."""
    saturated = is_saturated(g, PatternSpec.unordered(s, t))
    ab_right = set_to_bits(labels.A_prime) | set_to_bits(labels.B_prime)
    ab_left = set_to_bits(labels.A) | set_to_bits(labels.B)
    counter = None
    for v in labels.C:
        if (g.left_adj[v] & ab_right).bit_count() < t - 1:
            counter = ("left", v)
            break
    if counter is None:
        for v in labels.C_prime:
            if (g.right_adj[v] & ab_left).bit_count() < t - 1:
                counter = ("right", v)
                break
    missing = None
    for u in labels.C2:
        for v in labels.C2_prime:
            if not g.has_edge(u, v):
                missing = (u, v)
                break
        if missing:
            break
    return ObservationReport(saturated, counter is None, missing is None, counter, missing)


@dataclass(frozen=True)
class CoreBoundCertificate:
    e_core: int
    lower_bound: int
    holds: bool
    edge_count: int
    nice_core_floor: int
    floor_holds: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def core_bound_certificate(g: BipartiteGraph, core: NiceCore, s: int, t: int) -> CoreBoundCertificate:
    if g.n_left != g.n_right:
        raise AnalysisError("core bound needs an n x n graph")
    n = g.n_left
    for side in ("left", "right"):
        for v, d in enumerate(g.degrees(side)):
            if d < t - 1:
                raise AnalysisError(f"{side} vertex {v} has degree {d} < t-1 = {t - 1}")
    A, Ap = set_to_bits(core.A), set_to_bits(core.A_prime)
    e_core = sum((g.left_adj[u] & Ap).bit_count() for u in iter_bits(A))
    lower = (s + t - 2) * (n - t + 1) - ((s - 1) ** 2) // 4 + e_core
    floor = s * (t - 1) + (t - 1 - s)
    return CoreBoundCertificate(
        e_core=e_core,
        lower_bound=lower,
        holds=g.edge_count >= lower,
        edge_count=g.edge_count,
        nice_core_floor=floor,
        floor_holds=e_core >= floor,
    )


@dataclass
class MinDegreeCertificate:
    u0: int
    side: Side
    delta: int
    N_u0: tuple[int, ...]
    V: tuple[int, ...]
    S_sets: dict[int, tuple[int, ...]]
    e_V_N: int
    e_V_rest: int
    e_rest: int
    edge_count: int
    bound: int
    final_bound: int
    V_degree_ok: bool
    outside_degree_ok: bool
    chain_ok: bool

    @property
    def holds(self) -> bool:
        return self.V_degree_ok and self.outside_degree_ok and self.chain_ok

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["S_sets"] = {str(k): list(v) for k, v in self.S_sets.items()}
        d["N_u0"] = list(self.N_u0)
        d["V"] = list(self.V)
        d["holds"] = self.holds
        return d


class NotSaturatedError(AnalysisError):
    def __init__(self, message: str, dead_nonedge: tuple[int, int]):
        super().__init__(message)
        self.dead_nonedge = dead_nonedge


def min_degree_certificate(g: BipartiteGraph, s: int, t: int) -> Optional[MinDegreeCertificate]:
    """Counting certificate around a minimum-degree vertex when that degree is below t-1.

    Returns ``None`` when the minimum degree is at least t-1.
    """
    if g.n_left != g.n_right:
        raise AnalysisError("min-degree certificate needs an n x n graph")
    n = g.n_left
    degs = [(d, 0, v) for v, d in enumerate(g.degrees("left"))]
    degs += [(d, 1, v) for v, d in enumerate(g.degrees("right"))]
    if not degs:
        return None
    delta, side_idx, u0 = min(degs)
    if delta >= t - 1:
        return None
    side: Side = "left" if side_idx == 0 else "right"
    h = g if side == "left" else g.transpose()
    p = PatternSpec.unordered(s, t)
    N = h.left_adj[u0]
    S_sets: dict[int, tuple[int, ...]] = {}
    V = 0
    for up in iter_bits(((1 << n) - 1) & ~N):
        w = creates_copy(h, u0, up, p)
        if w is None:
            dead = (u0, up) if side == "left" else (up, u0)
            raise NotSaturatedError(f"adding {dead} creates no K_{{{s},{t}}}", dead)
        S = tuple(x for x in w.left_set if x != u0)
        S_sets[up] = S
        V |= set_to_bits(S)
    outside = ((1 << n) - 1) & ~N
    e_V_N = sum((h.left_adj[x] & N).bit_count() for x in iter_bits(V))
    e_V_rest = sum((h.left_adj[x] & outside).bit_count() for x in iter_bits(V))
    e_rest = sum(h.left_adj[x].bit_count() for x in range(n) if not V >> x & 1)
    size_v = V.bit_count()
    bound = (s - 1) * size_v + (t - 1) * (n - delta) + delta * (n - size_v)
    final = (s + t - 2) * n - (t - 1) * (t - 2)
    V_ok = all((h.left_adj[x] & N).bit_count() >= s - 1 for x in iter_bits(V))
    out_ok = all((h.right_adj[y] & V).bit_count() >= t - 1 for y in iter_bits(outside))
    return MinDegreeCertificate(
        u0=u0,
        side=side,
        delta=delta,
        N_u0=_sorted(N),
        V=_sorted(V),
        S_sets=S_sets,
        e_V_N=e_V_N,
        e_V_rest=e_V_rest,
        e_rest=e_rest,
        edge_count=g.edge_count,
        bound=bound,
        final_bound=final,
        V_degree_ok=V_ok,
        outside_degree_ok=out_ok,
        chain_ok=g.edge_count == e_V_N + e_V_rest + e_rest and g.edge_count >= bound >= final,
    )


@dataclass(frozen=True)
class DegreeClasses:
    threshold: int
    V0: tuple[int, ...]
    V0_prime: tuple[int, ...]


def fourth_root_ceil(n: int) -> int:
    k = isqrt(isqrt(n))
    return k if k ** 4 == n else k + 1


def degree_classes(g: BipartiteGraph, threshold: Optional[int] = None) -> DegreeClasses:
    if threshold is None:
        threshold = fourth_root_ceil(max(g.n_left, g.n_right))
    return DegreeClasses(
        threshold,
        tuple(v for v, d in enumerate(g.degrees("left")) if d >= threshold),
        tuple(v for v, d in enumerate(g.degrees("right")) if d >= threshold),
    )
