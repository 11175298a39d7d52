"""Command-line front end: construct, verify, analyze, search, census, formulas.

Exit codes: 0 success / all requested predicates true, 1 a requested
predicate is false or a construction failed verification, 2 bad input or
parameters, 3 search budget exhausted before completion.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Optional

from . import __version__
from . import graphfile
from .analysis import (
    AnalysisError,
    NotSaturatedError,
    check_core_observations,
    core_bound_certificate,
    degree_classes,
    find_cores,
    find_nice_cores,
    min_degree_certificate,
    nice_core_readings,
    partition_around_core,
)
from .bigraph import ORDERED_LEFT_S, BipartiteGraph, GraphConstructionError, PatternSpec
from .constructions import (
    FORMULA_ROWS,
    ConstructionError,
    ParameterError,
    classify_f_membership,
    construct_f_family,
    construct_ms,
    construct_ordered_extremal,
    formula_table,
)
from .saturation import check_saturated
from .search import MODE_ALIASES, MODE_ORDERED, MODE_SAT, MODE_WEAK, SearchBudget, run_search

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


def load_schema() -> dict:
    """The JSON schema every report document validates against."""
    return json.loads(resources.files("satkit").joinpath("schemas/report.schema.json").read_text())


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _params_digest(params: dict) -> str:
    return _digest(json.dumps(params, sort_keys=True).encode())


def _document(command: str, parameters: dict, digest: str, **sections) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "artifact_version": __version__,
        "command": command,
        "parameters": parameters,
        "input_digest": digest,
    }
    doc.update(sections)
    return doc


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _load_graph(path: str) -> tuple[BipartiteGraph, str]:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise UsageError(f"{path}: cannot read: {e.strerror}") from None
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError:
        raise UsageError(f"{path}: not an ASCII graph file") from None
    try:
        g = graphfile.parse(text)
    except graphfile.GraphFileError as e:
        raise UsageError(f"{path}: {e}") from None
    return g, _digest(data)


def _check_st(s: int, t: int) -> None:
    if s < 1 or s > t:
        raise UsageError(f"need 1 <= s <= t, got s={s}, t={t}")


def _formula_section(s: int, t: int, n: int) -> dict:
    ft = formula_table(s, t, n)
    values = ft.as_dict()
    rows = [
        {"name": name, "label": label, "formula": text, "value": values[name]}
        for name, label, text in FORMULA_ROWS
    ]
    return {
        "rows": rows,
        "f_family_discrepancy": ft.f_family_discrepancy,
        "f_family_count": ft.f_family_count,
        "f_family_stated_count": ft.f_family_stated_count,
    }


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def cmd_construct(args) -> int:
    try:
        if args.family == "f":
            g = construct_f_family(args.s, args.t, args.n, args.shift)
        elif args.family == "ms":
            g = construct_ms(args.s, args.t, args.n, args.shift)
        else:
            g = construct_ordered_extremal(args.s, args.t, args.n)
    except ParameterError as e:
        raise UsageError(str(e)) from None
    except ConstructionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FALSE
    text = graphfile.emit(g)
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as e:
            raise UsageError(f"{args.out}: cannot write: {e.strerror}") from None
        print(f"wrote {args.out}: {g.n_left}x{g.n_right}, {g.edge_count} edges", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    _check_st(args.s, args.t)
    g, digest = _load_graph(args.graph)
    p = PatternSpec.unordered(args.s, args.t)
    report = check_saturated(g, p)
    requested = []
    if args.ordered:
        requested.append("is_ordered_saturated")
    if args.strong:
        requested.append("is_strongly_saturated")
    if args.weak:
        requested.append("is_weakly_saturated")
    if not requested:
        requested = ["is_free", "is_saturated"]
    preds = report.as_dict()
    ordered_pattern = PatternSpec(args.s, args.t, ORDERED_LEFT_S)
    preds["ordered_pattern"] = {"s": args.s, "t": args.t, "mode": ordered_pattern.mode}
    results = {k: preds[k] for k in requested}
    ok = all(results.values())
    params = {"s": args.s, "t": args.t, "n_left": g.n_left, "n_right": g.n_right, "mode": "unordered"}
    doc = _document(
        "verify", params, digest,
        requested=requested, all_requested_hold=ok, predicates=preds,
        edge_count=g.edge_count,
    )
    if args.json:
        sys.stdout.write(_dump(doc))
    else:
        print(f"graph {args.graph}: {g.n_left}x{g.n_right}, {g.edge_count} edges, pattern {p.label()}")
        for k in ("is_free", "is_saturated", "is_ordered_saturated",
                  "is_strongly_saturated", "is_weakly_saturated"):
            mark = "*" if k in requested else " "
            print(f" {mark} {k:24s} {preds[k]}")
        print(f"   {'min_degree':24s} {preds['min_degree']}")
        if report.offending_copy:
            print(f"   offending copy: {report.offending_copy.as_dict()}")
        if report.dead_nonedge:
            print(f"   dead non-edge: {report.dead_nonedge}")
        if report.ordered_dead_nonedge:
            print(f"   ordered dead non-edge: {report.ordered_dead_nonedge}")
        print("all requested predicates hold" if ok else "some requested predicate fails")
    return EXIT_OK if ok else EXIT_FALSE


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def analyze_graph(g: BipartiteGraph, s: int, t: int) -> dict:
    out: dict = {"min_degree": g.min_degree()}
    out["cores"] = [
        {"A": list(c.A), "A_prime": list(c.A_prime), "a0": c.a0, "a0_prime": c.a0_prime}
        for c in find_cores(g)
    ]
    nice = find_nice_cores(g, s, t) if s < t else []
    entries = []
    for c in nice:
        labels = partition_around_core(g, c, s, t)
        obs = check_core_observations(g, labels, s, t)
        entry = {"core": c.as_dict(), "partition": labels.as_dict(), "observations": obs.as_dict()}
        if g.n_left == g.n_right and g.min_degree() >= t - 1:
            entry["core_bound"] = core_bound_certificate(g, c, s, t).as_dict()
        else:
            entry["core_bound"] = None
        entries.append(entry)
    out["nice_cores"] = entries
    out["nice_core_reading_disagreements"] = nice_core_readings(g, s, t) if s < t else []
    cert = None
    cert_error = None
    if g.n_left == g.n_right:
        try:
            c = min_degree_certificate(g, s, t)
            cert = c.as_dict() if c else None
        except NotSaturatedError as e:
            cert_error = {"message": str(e), "dead_nonedge": list(e.dead_nonedge)}
    out["min_degree_certificate"] = cert
    out["min_degree_certificate_error"] = cert_error
    dc = degree_classes(g)
    out["degree_classes"] = {"threshold": dc.threshold, "V0": list(dc.V0), "V0_prime": list(dc.V0_prime)}
    member, witness = classify_f_membership(g, s, t)
    out["f_membership"] = {
        "member": member,
        "side": witness.side if witness else None,
        "S": list(witness.S) if witness else None,
    }
    return out


def cmd_analyze(args) -> int:
    _check_st(args.s, args.t)
    g, digest = _load_graph(args.graph)
    try:
        findings = analyze_graph(g, args.s, args.t)
    except AnalysisError as e:
        raise UsageError(str(e)) from None
    params = {"s": args.s, "t": args.t, "n_left": g.n_left, "n_right": g.n_right, "mode": "unordered"}
    doc = _document("analyze", params, digest, analysis=findings)
    if args.json:
        sys.stdout.write(_dump(doc))
        return EXIT_OK
    print(f"graph {args.graph}: {g.n_left}x{g.n_right}, {g.edge_count} edges, min degree {findings['min_degree']}")
    print(f"cores: {len(findings['cores'])}")
    print(f"nice cores: {len(findings['nice_cores'])}")
    for e in findings["nice_cores"]:
        c, lab, obs = e["core"], e["partition"], e["observations"]
        print(f"  a0={c['a0']} a0'={c['a0_prime']} A={c['A']} A'={c['A_prime']}")
        print(f"    B1={lab['B1']} B2={lab['B2']} C1={lab['C1']} C2={lab['C2']} y={lab['y']}")
        print(f"    B1'={lab['B1_prime']} B2'={lab['B2_prime']} C1'={lab['C1_prime']} C2'={lab['C2_prime']} y'={lab['y_prime']}")
        print(f"    C degree observation: {obs['c_degree_holds']}  C2 x C2' complete: {obs['c2_complete_holds']}")
        if e["core_bound"]:
            cb = e["core_bound"]
            print(f"    core bound: e_core={cb['e_core']} lower_bound={cb['lower_bound']} "
                  f"edges={cb['edge_count']} holds={cb['holds']}")
    cert = findings["min_degree_certificate"]
    if cert:
        print(f"min-degree certificate: u0={cert['u0']} ({cert['side']}) delta={cert['delta']} |V|={len(cert['V'])}")
        print(f"  e(V,N(u0))={cert['e_V_N']} e(V,rest)={cert['e_V_rest']} e(rest)={cert['e_rest']}")
        print(f"  edges {cert['edge_count']} >= bound {cert['bound']} >= {cert['final_bound']}: {cert['chain_ok']}")
        print(f"  V degree condition: {cert['V_degree_ok']}  outside degree condition: {cert['outside_degree_ok']}")
    elif findings["min_degree_certificate_error"]:
        print(f"min-degree certificate failed: {findings['min_degree_certificate_error']['message']}")
    else:
        print("min-degree certificate: not applicable (min degree >= t-1 or non-square graph)")
    fm = findings["f_membership"]
    print(f"F-family member: {fm['member']}" + (f" (side {fm['side']}, S={fm['S']})" if fm["member"] else ""))
    return EXIT_OK


# ---------------------------------------------------------------------------
# search / census
# ---------------------------------------------------------------------------

# (reference name, kind, modes it applies to)
_COMPARISONS = [
    ("conjecture_value", "exact", (MODE_SAT,)),
    ("near_diagonal_value", "exact", (MODE_SAT,)),
    ("ehm_ss_value", "exact", (MODE_SAT,)),
    ("general_lower", "lower", (MODE_SAT,)),
    ("gks_lower", "lower", (MODE_SAT,)),
    ("ordered_value", "exact", (MODE_ORDERED,)),
    ("weak_asymptotic_guide", "guide", (MODE_WEAK,)),
]


def compare_to_formulas(min_edges: Optional[int], refs: dict, mode: str) -> list[dict]:
    out = []
    for name, kind, modes in _COMPARISONS:
        value = refs.get(name)
        if mode not in modes or value is None:
            continue
        if min_edges is None:
            status = "unknown"
        elif kind == "exact":
            status = "match" if min_edges == value else "mismatch"
        elif kind == "lower":
            status = "satisfied" if min_edges >= value else "violated"
        else:
            status = "info"
        out.append({"name": name, "kind": kind, "value": value, "status": status})
    return out


def _write_census(result, directory: Path, s: int, t: int) -> dict:
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for i, cf in enumerate(result.extremal_graphs):
        g = cf.graph()
        name = f"graph_{i:04d}.bsg"
        (directory / name).write_text(graphfile.emit(g))
        entry = {"file": name, "canonical": cf.hex(), "edges": g.edge_count,
                 "min_degree": g.min_degree()}
        if result.mode == MODE_SAT:
            member, w = classify_f_membership(g, s, t)
            entry["f_member"] = member
            entry["f_witness"] = {"side": w.side, "S": list(w.S)} if w else None
        entries.append(entry)
    index = {
        "schema_version": SCHEMA_VERSION,
        "s": s,
        "t": t,
        "n": result.n,
        "mode": result.mode,
        "min_edges": result.min_edges,
        "complete": result.complete,
        "graphs": entries,
    }
    (directory / "index.json").write_text(_dump(index))
    return index


def cmd_search(args) -> int:
    _check_st(args.s, args.t)
    mode = MODE_ALIASES[args.mode]
    budget = SearchBudget(
        max_seconds=args.budget_seconds,
        max_nodes=args.budget_nodes,
        n_cap=args.n_cap,
        workers=args.workers,
        split_depth=args.split_depth,
    )
    census = args.census is not None
    try:
        result = run_search(args.s, args.t, args.n, mode, census, budget)
    except ParameterError as e:
        raise UsageError(str(e)) from None
    comparisons = compare_to_formulas(result.min_edges, result.reference_bounds, mode)
    summary = result.as_dict()
    summary["comparisons"] = comparisons
    index = None
    if census:
        index = _write_census(result, Path(args.census), args.s, args.t)
        summary["census_dir_index"] = "index.json"
        summary["f_members"] = sum(1 for e in index["graphs"] if e.get("f_member"))
    params = {"s": args.s, "t": args.t, "n_left": args.n, "n_right": args.n, "mode": mode}
    doc = _document("search", params, _params_digest(params), search=summary)
    if args.report:
        Path(args.report).write_text(_dump(doc))
    if args.json:
        sys.stdout.write(_dump(doc))
    else:
        state = "complete" if result.complete else "INCOMPLETE (budget exhausted)"
        print(f"search {mode} s={args.s} t={args.t} n={args.n}: {state}")
        print(f"min_edges: {result.min_edges}")
        if result.exhausted_through is not None:
            print(f"no graph with fewer edges (levels {result.lower_bound_used}..{result.exhausted_through} searched)")
        print(f"nodes: {result.nodes_explored}  elapsed: {result.elapsed:.2f}s")
        for c in comparisons:
            print(f"  {c['name']:24s} {c['value']!s:>6}  {c['status']}")
        if census:
            print(f"census: {len(result.extremal_graphs)} classes written to {args.census}")
            if mode == MODE_SAT:
                print(f"F-family members: {summary['f_members']}/{len(result.extremal_graphs)}")
    return EXIT_OK if result.complete else EXIT_BUDGET


# ---------------------------------------------------------------------------
# formulas
# ---------------------------------------------------------------------------


def cmd_formulas(args) -> int:
    try:
        section = _formula_section(args.s, args.t, args.n)
    except ParameterError as e:
        raise UsageError(str(e)) from None
    params = {"s": args.s, "t": args.t, "n_left": args.n, "n_right": args.n, "mode": "unordered"}
    doc = _document("formulas", params, _params_digest(params), formulas=section)
    if args.json:
        sys.stdout.write(_dump(doc))
        return EXIT_OK
    for row in section["rows"]:
        value = "n/a" if row["value"] is None else row["value"]
        print(f"{row['name']:24s} {value!s:>8}  {row['label']}: {row['formula']}")
    if section["f_family_discrepancy"]:
        print(f"note: F-family computed count {section['f_family_count']} differs from "
              f"stated count {section['f_family_stated_count']}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def _add_st(p: argparse.ArgumentParser, with_n: bool = True) -> None:
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    if with_n:
        p.add_argument("--n", type=int, required=True)


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    _add_st(p)
    p.add_argument("--mode", choices=sorted(MODE_ALIASES), default="sat")
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--split-depth", type=int, default=1)
    p.add_argument("--n-cap", type=int, default=6)
    p.add_argument("--report", help="also write the JSON report here")
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="satkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"satkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit an extremal construction")
    p.add_argument("--family", choices=["f", "ms", "ordered"], required=True)
    _add_st(p)
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check freeness and saturation predicates")
    p.add_argument("--graph", required=True)
    _add_st(p, with_n=False)
    p.add_argument("--ordered", action="store_true")
    p.add_argument("--strong", action="store_true")
    p.add_argument("--weak", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="cores, partitions and certificates")
    p.add_argument("--graph", required=True)
    _add_st(p, with_n=False)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("search", help="exact minimum saturated edge count")
    _add_search_flags(p)
    p.add_argument("--census", metavar="DIR", help="enumerate all extremal classes into DIR")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("census", help="search with a census directory")
    _add_search_flags(p)
    p.add_argument("--dir", dest="census", required=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("formulas", help="closed-form values with provenance")
    _add_st(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_formulas)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse uses 2 for usage errors already; keep --help at 0
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (GraphConstructionError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
