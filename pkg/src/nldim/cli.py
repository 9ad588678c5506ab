"""Command-line entry point: ``nldim compute|family|verify|embed|enumerate``."""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import closed_form as cf
from . import structure
from .embed import embed_supergraph, verify_embedding
from .enumeration import enumerate_connected
from .graph import FamilySpec, Graph, GraphError, family_names, generate
from .io import FORMATS, emit_graph6, parse
from .solver import BudgetExceededError, PairMode, all_min_bases, solve_exact
from .verify import CAMPAIGNS, GRAPH_CHECKS, run_checks, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

INVARIANT_NAMES = {PairMode.NON_ADJACENT: "dim_nl", PairMode.ALL: "dim", PairMode.ADJACENT: "dim_local"}


class UsageError(Exception):
    pass


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_graphs(path: str, fmt: str) -> list[Graph]:
    docs = parse(_read_input(path), fmt)
    if not docs:
        raise UsageError(f"no graphs in {path}")
    return [d.graph for d in docs]


def _format_set(xs) -> str:
    return "{" + ",".join(str(x) for x in xs) + "}"


def theorem_refs(g: Graph, mode: PairMode) -> list[str]:
    """Campaign ids of closed forms or bounds whose hypotheses ``g`` meets."""
    refs = ["eq1"]
    if mode is not PairMode.NON_ADJACENT:
        return refs
    refs += ["prop51"]
    if g.n >= 3:
        refs.append("prop52")
    if g.n >= 3 and structure.bipartition(g) is not None:
        refs.append("prop22")
    if structure.is_block_graph(g):
        refs.append("thm31")
    if g.n >= 2 and cf.beta_prime_upper_bound(g).applies:
        refs.append("thm53")
    return refs


def _emit(record: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(record, sort_keys=True))
        return
    line = f"{record['invariant']} = {record['value']}"
    if record.get("basis") is not None:
        line += f"  basis {_format_set(record['basis'])}"
    print(line)
    for key in ("bases", "complete"):
        if key in record:
            value = record[key]
            if key == "bases":
                for b in value:
                    print(f"  {_format_set(b)}")
            else:
                print(f"  complete list: {value}")


def cmd_compute(args) -> int:
    mode = PairMode.parse(args.mode)
    for g in _load_graphs(args.input, args.format):
        start = time.perf_counter()
        record: dict = {"invariant": INVARIANT_NAMES[mode], "graph6": emit_graph6(g)}
        if args.all_bases is not None:
            bases = all_min_bases(g, mode, limit=args.all_bases)
            record.update(value=bases.value, basis=list(bases.bases[0]) if bases.bases else [],
                          bases=[list(b) for b in bases.bases], complete=bases.complete)
        else:
            res = solve_exact(g, mode)
            record.update(value=res.value, basis=list(res.basis) if args.certificate else None)
        record["theorem_refs"] = theorem_refs(g, mode)
        record["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
        _emit(record, args.json)
    return EXIT_OK


def _coerce(token: str):
    for cast in (int, float):
        try:
            return cast(token)
        except ValueError:
            pass
    raise UsageError(f"family parameter {token!r} is not a number")


def _family_value(name: str, params: tuple, g: Graph, mode: PairMode):
    """Closed form when one applies, else the exact solver; returns (value, basis, refs)."""
    if mode is PairMode.NON_ADJACENT:
        if name == "wheel" and params and params[0] >= 7:
            n = int(params[0])
            return cf.dimnl_wheel(n), cf.wheel_basis(n), ["thm41"]
        if name == "complete_bipartite" and len(params) == 2 and max(params) >= 2:
            s, t = int(params[0]), int(params[1])
            return cf.dimnl_complete_bipartite(s, t), None, ["prop52"]
        if structure.is_block_graph(g):
            res = cf.dimnl_block_graph(g)
            return res.value, res.witness, ["thm31"]
    if name == "wheel" and params and params[0] >= 5:
        n = int(params[0])
        if mode is PairMode.ALL and n >= 7:
            return cf.dim_wheel(n), None, ["thm41"]
        if mode is PairMode.ADJACENT:
            return cf.dimlocal_wheel(n), None, ["thm41"]
    return None


def cmd_family(args) -> int:
    mode = PairMode.parse(args.mode)
    params = tuple(_coerce(p) for p in args.params)
    start = time.perf_counter()
    g = generate(FamilySpec(args.name, params, args.seed))
    refs: list[str] = []
    closed = _family_value(args.name, params, g, mode)
    if closed is not None:
        value, basis, refs = closed
    else:
        value, basis = None, None
    if basis is None and (closed is None or args.basis):
        res = solve_exact(g, mode)
        if value is None:
            value = res.value
        basis = res.basis
    record = {
        "invariant": INVARIANT_NAMES[mode],
        "family": args.name,
        "params": list(params),
        "n": g.n,
        "value": value,
        "basis": list(basis) if args.basis and basis is not None else None,
        "theorem_refs": refs,
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
    }
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(f"value: {value}")
        if record["basis"] is not None:
            print(f"basis: {_format_set(record['basis'])}")
    return EXIT_OK


def cmd_verify(args) -> int:
    params = {"max_n": args.max_n, "samples": args.samples, "min_n": args.min_n}
    known = CAMPAIGNS.get(args.theorem)
    if known is None:
        raise UsageError(f"unknown theorem id {args.theorem!r}; choose from {', '.join(sorted(CAMPAIGNS))}")
    params = {k: v for k, v in params.items() if v is not None}
    report = verify(args.theorem, params, args.seed)
    if args.json:
        record = report.to_dict()
        record.update(invariant=args.theorem, value=report.status, basis=None, theorem_refs=[args.theorem])
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        print(report.summary())
        for f in report.failures:
            print(f"  FAIL {f.graph6}: expected {f.expected}, got {f.actual} ({f.detail})")
        for g6 in report.budget_exceeded:
            print(f"  BUDGET {g6}")
        for note in report.notes:
            print(f"  note: {note}")
    return EXIT_OK if report.status == "pass" else EXIT_FAIL


def cmd_embed(args) -> int:
    failed = False
    for g in _load_graphs(args.input, args.format):
        start = time.perf_counter()
        r = embed_supergraph(g)
        rep = verify_embedding(g, r, solve=args.solve, max_solve_order=10**9 if args.solve else 0)
        failed |= not rep.passed
        record = {
            "invariant": "embedding",
            "value": rep.solved_value if rep.solved_value is not None else r.k,
            "basis": list(r.anchor),
            "theorem_refs": ["thm61"],
            "s": r.s,
            "k": r.k,
            "order": r.H.n,
            "diameter": rep.diameter,
            "classes": [list(c) for c in r.classes],
            "supergraph": emit_graph6(r.H),
            "violations": rep.violations,
            "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
        }
        if args.json:
            print(json.dumps(record, sort_keys=True))
        else:
            print(f"s = {r.s}, k = {r.k}, |V(H)| = {r.H.n}, diam(H) = {rep.diameter}, anchor {_format_set(r.anchor)}")
            if rep.solved_value is not None:
                print(f"dim_nl(H) = {rep.solved_value}")
            print(f"H = {record['supergraph']}")
            for v in rep.violations:
                print(f"  VIOLATION {v}")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_enumerate(args) -> int:
    graphs = enumerate_connected(args.n, canonical=args.canonical)
    if not args.check:
        for g in graphs:
            print(emit_graph6(g))
        return EXIT_OK
    checks = [c.strip() for c in args.check.split(",") if c.strip()]
    unknown = [c for c in checks if c not in GRAPH_CHECKS]
    if unknown:
        raise UsageError(f"unknown check(s) {', '.join(unknown)}; choose from {', '.join(sorted(GRAPH_CHECKS))}")
    report = run_checks(",".join(checks), checks, graphs, {"n": args.n, "canonical": args.canonical}, 0)
    if args.json:
        print(report.to_json())
    else:
        print(report.summary())
        for f in report.failures:
            print(f"  FAIL {f.graph6}: expected {f.expected}, got {f.actual} ({f.detail})")
    return EXIT_OK if report.status == "pass" else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nldim", description="Nonlocal, local and classical metric dimension.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="solve one or more input graphs exactly")
    c.add_argument("--input", required=True, help="file path, or - for stdin")
    c.add_argument("--format", choices=FORMATS, default="graph6")
    c.add_argument("--mode", choices=[m.value for m in PairMode], default="nonlocal")
    c.add_argument("--certificate", action="store_true", help="print a minimum resolving set")
    c.add_argument("--all-bases", type=int, metavar="LIMIT", help="list up to LIMIT minimum resolving sets")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_compute)

    f = sub.add_parser("family", help=f"value for a named family ({', '.join(family_names())})")
    f.add_argument("name", choices=family_names())
    f.add_argument("params", nargs="*")
    f.add_argument("--mode", choices=[m.value for m in PairMode], default="nonlocal")
    f.add_argument("--basis", action="store_true")
    f.add_argument("--seed", type=int, default=0, help="seed for random families")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_family)

    v = sub.add_parser("verify", help=f"run a campaign ({', '.join(sorted(CAMPAIGNS))})")
    v.add_argument("theorem")
    v.add_argument("--max-n", type=int)
    v.add_argument("--min-n", type=int, help="wheels only")
    v.add_argument("--samples", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("embed", help="build and check the bounded-diameter supergraph")
    e.add_argument("--input", required=True)
    e.add_argument("--format", choices=FORMATS, default="graph6")
    e.add_argument("--solve", action="store_true", help="also solve dim_nl(H) exactly")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_embed)

    n = sub.add_parser("enumerate", help="list connected graphs, optionally checking properties")
    n.add_argument("--n", type=int, required=True)
    n.add_argument("--canonical", action="store_true", help="one graph per isomorphism class")
    n.add_argument("--check", help=f"comma-separated subset of {','.join(sorted(GRAPH_CHECKS))}")
    n.add_argument("--json", action="store_true")
    n.set_defaults(func=cmd_enumerate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"nldim: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, GraphError, ValueError, OSError) as exc:
        print(f"nldim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
