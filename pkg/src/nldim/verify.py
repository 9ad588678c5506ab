"""Theorem-verification campaigns over exhaustive and seeded random graph families."""

from __future__ import annotations

import json
import time
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import closed_form as cf
from . import structure
from .embed import embed_supergraph, verify_embedding
from .enumeration import enumerate_connected, random_labeled_connected
from .graph import (
    Graph,
    complete,
    complete_bipartite,
    corona,
    path,
    petersen,
    random_bipartite_connected,
    random_block_graph,
    random_connected,
    random_tree,
    spider,
    subdivide,
    wheel,
)
from .io import emit_graph6
from .solver import BudgetExceededError, PairMode, all_min_bases, is_resolving, solve_exact

SCHEMA = 1


@dataclass(frozen=True)
class Failure:
    graph6: str
    expected: Any
    actual: Any
    detail: str = ""

    def to_dict(self) -> dict:
        return {"graph6": self.graph6, "expected": self.expected, "actual": self.actual, "detail": self.detail}


@dataclass
class VerificationReport:
    theorem: str
    params: dict
    seed: int
    instances: int = 0
    failures: list[Failure] = field(default_factory=list)
    budget_exceeded: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        if self.budget_exceeded:
            return "budget_exceeded"
        return "pass"

    def to_dict(self, with_timing: bool = True) -> dict:
        out = {
            "schema": SCHEMA,
            "theorem": self.theorem,
            "status": self.status,
            "passed": self.passed,
            "seed": self.seed,
            "params": self.params,
            "instances": self.instances,
            "failures": [f.to_dict() for f in self.failures],
            "budget_exceeded": self.budget_exceeded,
            "notes": self.notes,
        }
        if with_timing:
            out["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return out

    def to_json(self, with_timing: bool = True) -> str:
        return json.dumps(self.to_dict(with_timing), indent=2, sort_keys=True)

    def summary(self) -> str:
        line = f"{self.theorem}: {self.status} ({self.instances} instances, {len(self.failures)} failures"
        if self.budget_exceeded:
            line += f", {len(self.budget_exceeded)} over budget"
        return line + f", {self.elapsed:.2f}s)"


class _Run:
    """Accumulates one campaign's outcomes."""

    def __init__(self, report: VerificationReport):
        self.report = report

    def fail(self, g: Graph, expected, actual, detail: str = "") -> None:
        self.report.failures.append(Failure(emit_graph6(g), _jsonable(expected), _jsonable(actual), detail))

    def expect(self, g: Graph, expected, actual, detail: str = "") -> bool:
        if expected != actual:
            self.fail(g, expected, actual, detail)
            return False
        return True

    def instance(self, g: Graph, body: Callable[[Graph], None]) -> None:
        self.report.instances += 1
        try:
            body(g)
        except BudgetExceededError:
            self.report.budget_exceeded.append(emit_graph6(g))


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (tuple, list, set, frozenset)):
        return [_jsonable(v) for v in (sorted(x) if isinstance(x, (set, frozenset)) else x)]
    return x


def instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


# ---------------------------------------------------------------------------
# per-graph checks shared by exhaustive campaigns and `enumerate --check`


class GraphFacts:
    """Lazily solved invariants of one graph, shared across checks."""

    def __init__(self, g: Graph):
        self.g = g
        self._values: dict[PairMode, int] = {}

    def value(self, mode: PairMode) -> int:
        if mode not in self._values:
            self._values[mode] = solve_exact(self.g, mode).value
        return self._values[mode]

    @property
    def dimnl(self) -> int:
        return self.value(PairMode.NON_ADJACENT)

    @property
    def dim(self) -> int:
        return self.value(PairMode.ALL)


def check_eq1(run: _Run, f: GraphFacts) -> None:
    if f.dimnl > f.dim:
        run.fail(f.g, f"<= {f.dim}", f.dimnl, "dim_nl exceeds dim")


def check_prop21(run: _Run, f: GraphFacts) -> None:
    g = f.g
    if g.is_complete():
        return
    levels = any(structure.has_clique_levels(g, x) for x in range(g.n))
    run.expect(g, levels, f.dimnl == 1, "dim_nl == 1 versus clique distance levels")


def check_prop22(run: _Run, f: GraphFacts) -> None:
    g = f.g
    if g.n >= 3 and structure.bipartition(g) is not None:
        run.expect(g, f.dim, f.dimnl, "bipartite: dim_nl versus dim")


def check_prop51(run: _Run, f: GraphFacts) -> None:
    g = f.g
    bound = cf.omega_upper_bound(g)
    if f.dimnl > bound:
        run.fail(g, f"<= {bound}", f.dimnl, "dim_nl exceeds n - omega")
    if g.n >= 2 and f.dimnl > g.n - 2:
        run.fail(g, f"<= {g.n - 2}", f.dimnl, "dim_nl exceeds n - 2")


def check_prop52(run: _Run, f: GraphFacts) -> None:
    # n = 2 is excluded: K_2 has dim_nl = 0 = n - 2 but is K_{1,1}
    g = f.g
    if g.n < 3:
        return
    kst = cf.is_complete_bipartite(g)
    claimed = kst is not None and kst[1] >= 2
    run.expect(g, claimed, f.dimnl == g.n - 2, "dim_nl == n - 2 versus K_{s,t}, t >= 2")


GRAPH_CHECKS: dict[str, Callable[[_Run, GraphFacts], None]] = {
    "eq1": check_eq1,
    "prop21": check_prop21,
    "prop22": check_prop22,
    "prop51": check_prop51,
    "prop52": check_prop52,
}


def exhaustive_graphs(max_n: int, samples: int, seed: int, min_n: int = 1) -> Iterator[Graph]:
    """All connected labelled graphs of order min_n..max_n, then uniform samples of order max_n + 1."""
    for n in range(min_n, max_n + 1):
        yield from enumerate_connected(n)
    for i in range(samples):
        yield random_labeled_connected(max_n + 1, instance_rng(seed, i))


def run_checks(
    theorem: str, checks: list[str], graphs: Iterable[Graph], params: dict, seed: int
) -> VerificationReport:
    unknown = [c for c in checks if c not in GRAPH_CHECKS]
    if unknown:
        raise ValueError(f"unknown check(s) {unknown}; choose from {sorted(GRAPH_CHECKS)}")
    report = VerificationReport(theorem, params, seed)
    run = _Run(report)
    start = time.perf_counter()

    def body(g: Graph) -> None:
        facts = GraphFacts(g)
        for name in checks:
            GRAPH_CHECKS[name](run, facts)

    for g in graphs:
        run.instance(g, body)
    return _finish(report, start)


def _finish(report: VerificationReport, start: float) -> VerificationReport:
    report.failures.sort(key=lambda f: (f.graph6, f.detail))
    report.budget_exceeded.sort()
    report.elapsed = time.perf_counter() - start
    return report


def _exhaustive_campaign(name: str):
    def campaign(params: dict, seed: int) -> VerificationReport:
        graphs = exhaustive_graphs(params["max_n"], params["samples"], seed)
        return run_checks(name, [name], graphs, params, seed)

    return campaign


# ---------------------------------------------------------------------------
# random-family campaigns


def _prop22(params: dict, seed: int) -> VerificationReport:
    report = VerificationReport("prop22", params, seed)
    run = _Run(report)
    start = time.perf_counter()
    max_n, samples = params["max_n"], params["samples"]

    def tree_body(t: Graph) -> None:
        nl = solve_exact(t, PairMode.NON_ADJACENT).value
        full = solve_exact(t, PairMode.ALL).value
        run.expect(t, full, nl, "tree: dim_nl versus dim")
        if not structure.is_path(t):
            stats = structure.tree_stats(t)
            run.expect(t, stats.n1 - stats.ex, full, "tree: dim versus n1 - ex")

    def bip_body(g: Graph) -> None:
        run.expect(g, solve_exact(g, PairMode.ALL).value, solve_exact(g, PairMode.NON_ADJACENT).value,
                   "bipartite: dim_nl versus dim")

    for i in range(samples):
        rng = instance_rng(seed, i)
        run.instance(random_tree(int(rng.integers(3, max_n + 1)), seed=rng), tree_body)
    for i in range(samples):
        rng = instance_rng(seed, samples + i)
        n = int(rng.integers(3, max_n + 1))
        run.instance(random_bipartite_connected(n, float(rng.uniform(0.2, 0.6)), seed=rng), bip_body)
    return _finish(report, start)


def _random_block_sizes(rng: np.random.Generator, max_n: int) -> list[int]:
    sizes = [int(rng.integers(2, 6))]
    total = sizes[0]
    while True:
        nxt = int(rng.integers(2, 6))
        if total + nxt - 1 > max_n or rng.random() < 0.15:
            return sizes
        sizes.append(nxt)
        total += nxt - 1


def _thm31(params: dict, seed: int) -> VerificationReport:
    report = VerificationReport("thm31", params, seed)
    run = _Run(report)
    start = time.perf_counter()

    def body(g: Graph) -> None:
        formula = cf.dimnl_block_graph(g)
        solved = solve_exact(g, PairMode.NON_ADJACENT).value
        run.expect(g, formula.value, solved, "block graph: closed form versus solver")
        if len(formula.witness) != formula.value or not is_resolving(g, formula.witness, PairMode.NON_ADJACENT):
            run.fail(g, f"resolving set of size {formula.value}", list(formula.witness), "block graph witness")

    for i in range(params["samples"]):
        rng = instance_rng(seed, i)
        run.instance(random_block_graph(_random_block_sizes(rng, params["max_n"]), seed=rng), body)
    return _finish(report, start)


def _random_noncomplete(rng: np.random.Generator, max_n: int) -> Graph:
    while True:
        n = int(rng.integers(2, max_n + 1))
        upper = np.triu(rng.random((n, n)) < 0.5, 1)
        h = Graph.from_adjacency(upper | upper.T)
        if not h.is_complete():
            return h


def _thm32(params: dict, seed: int) -> VerificationReport:
    report = VerificationReport("thm32", params, seed)
    run = _Run(report)
    start = time.perf_counter()
    for i in range(params["samples"]):
        rng = instance_rng(seed, i)
        g = random_connected(int(rng.integers(1, params["max_n"] + 1)), 0.5, seed=rng)
        h = _random_noncomplete(rng, params["max_h"])
        product = corona(g, h)

        def body(p: Graph, g=g, h=h) -> None:
            value = cf.dimnl_corona(g, h)
            run.expect(p, value, solve_exact(p, PairMode.NON_ADJACENT).value,
                       f"corona of {emit_graph6(g)} and {emit_graph6(h)}")
            basis = cf.corona_basis(g, h)
            if len(basis) != value or not is_resolving(p, basis, PairMode.NON_ADJACENT):
                run.fail(p, f"resolving set of size {value}", list(basis), "corona basis")

        run.instance(product, body)
    return _finish(report, start)


def _thm33(params: dict, seed: int) -> VerificationReport:
    report = VerificationReport("thm33", params, seed)
    run = _Run(report)
    start = time.perf_counter()

    def bounds_body(g: Graph, k: int):
        def body(p: Graph) -> None:
            lo, hi = cf.corona_complete_bounds(g, k)
            value = solve_exact(p, PairMode.NON_ADJACENT).value
            if not lo <= value <= hi:
                run.fail(p, f"[{lo}, {hi}]", value, f"corona with K_{k}: bounds")
        return body

    for i in range(params["samples"]):
        rng = instance_rng(seed, i)
        g = random_connected(int(rng.integers(2, params["max_n"] + 1)), 0.5, seed=rng)
        k = int(rng.integers(1, 4))
        run.instance(corona(g, complete(k)), bounds_body(g, k))

    def exact(g: Graph, k: int, want: int, label: str):
        def body(p: Graph) -> None:
            run.expect(p, want, solve_exact(p, PairMode.NON_ADJACENT).value, label)
        run.instance(corona(g, complete(k)), body)

    for r in (3, 4):
        for k in (1, 2):
            exact(complete_bipartite(r, r), k, 2 * r - 2, f"K_{{{r},{r}}} corona K_{k}: lower bound attained")
    exact(complete_bipartite(3, 4), 2, 5, "K_{3,4} corona K_2: lower bound attained")
    for m in range(2, 6):
        for k in (1, 2):
            exact(path(m), k, 2, f"P_{m} corona K_{k}: claimed value 2")
    return _finish(report, start)


# small wheels as stated alongside the general formula; n = 3 is K_4, whose true value is 0
STATED_SMALL_WHEELS = {3: 1, 4: 2, 5: 2, 6: 2}


def _thm41(params: dict, seed: int) -> VerificationReport:
    report = VerificationReport("thm41", params, seed)
    run = _Run(report)
    start = time.perf_counter()
    lo, hi = params["min_n"], params["max_n"]

    for n in range(lo, hi + 1):
        def body(g: Graph, n=n) -> None:
            want = STATED_SMALL_WHEELS.get(n, 2 * n // 5)
            run.expect(g, want, solve_exact(g, PairMode.NON_ADJACENT).value, f"W_{{1,{n}}}: dim_nl")
            if n <= params["companion_max"]:
                run.expect(g, cf.dim_wheel(n), solve_exact(g, PairMode.ALL).value, f"W_{{1,{n}}}: dim")
                run.expect(g, cf.dimlocal_wheel(n), solve_exact(g, PairMode.ADJACENT).value, f"W_{{1,{n}}}: local dim")
            if n >= 7:
                basis = cf.wheel_basis(n)
                rep = cf.wheel_gap_check(n, basis)
                if len(basis) != 2 * n // 5 or not rep.resolving or not rep.conditions_hold:
                    run.fail(g, f"gap-valid resolving set of size {2 * n // 5}", list(basis), f"W_{{1,{n}}}: construction")
            if 7 <= n <= params["lower_bound_max"]:
                _wheel_lower_bound(run, g, n)

        run.instance(wheel(n), body)
    return _finish(report, start)


def _wheel_lower_bound(run: _Run, g: Graph, n: int) -> None:
    """Every minimum basis obeys the gap conditions, normalises away gaps of three, and fits the capacity count."""
    bases = all_min_bases(g, PairMode.NON_ADJACENT, limit=100_000)
    if not bases.complete:
        run.fail(g, "complete basis list", f"{len(bases)} (truncated)", f"W_{{1,{n}}}: basis enumeration")
        return
    for basis in bases:
        if n in basis:
            run.fail(g, "hub-free basis", list(basis), f"W_{{1,{n}}}: hub in basis")
            continue
        rep = cf.wheel_gap_check(n, basis)
        if not rep.conditions_hold:
            run.fail(g, "gap conditions", list(basis), f"W_{{1,{n}}}: basis breaks gap conditions")
            continue
        norm = cf.remove_gap_of_three(n, basis)
        sizes = [gp.size for gp in cf.wheel_gap_profile(n, norm).gaps]
        if 3 in sizes or len(norm) != len(basis) or not is_resolving(g, norm, PairMode.NON_ADJACENT):
            run.fail(g, "resolving, no gap of three", list(norm), f"W_{{1,{n}}}: normalisation")
        if len(basis) + cf.wheel_gap_capacity(len(basis)) < n:
            run.fail(g, f">= {n} rim vertices", len(basis) + cf.wheel_gap_capacity(len(basis)),
                     f"W_{{1,{n}}}: capacity")


def _thm53(params: dict, seed: int) -> VerificationReport:
    report = VerificationReport("thm53", params, seed)
    run = _Run(report)
    start = time.perf_counter()
    max_n = params["max_n"]

    def bound_body(g: Graph) -> None:
        bound = cf.beta_prime_upper_bound(g)
        if not bound.applies:
            run.fail(g, "girth >= 7", bound.reason, "instance outside the hypothesis")
            return
        value = solve_exact(g, PairMode.NON_ADJACENT).value
        if value > bound.value:
            run.fail(g, f"<= {bound.value}", value, "dim_nl exceeds edge cover - 1")
        if structure.is_tree(g) and not structure.is_path(g):
            claimed = cf.is_subdivided_star(g)
            run.expect(g, claimed, value == bound.value, "tree equality versus subdivided star")

    for i in range(params["samples"]):
        rng = instance_rng(seed, i)
        run.instance(random_tree(int(rng.integers(3, max_n + 1)), seed=rng), bound_body)
    for i in range(params["girth_samples"]):
        rng = instance_rng(seed, params["samples"] + i)
        run.instance(_girth7_graph(rng, max_n), bound_body)
    for legs in _spider_family(max_n):
        run.instance(spider(legs), bound_body)
    for n in (3, 4):
        p = path(n)
        value = solve_exact(p, PairMode.NON_ADJACENT).value
        beta = structure.edge_cover_number(p)
        report.notes.append(f"P_{n}: dim_nl = {value}, edge cover - 1 = {beta - 1} (path, reported separately)")
    return _finish(report, start)


def _girth7_graph(rng: np.random.Generator, max_n: int) -> Graph:
    """Subdivide every edge of a small connected graph two or three times."""
    while True:
        base = random_connected(int(rng.integers(3, 7)), 0.5, seed=rng)
        times = [int(t) for t in rng.integers(2, 4, size=base.m)]
        g = subdivide(base, times)
        if g.n <= max_n:
            return g


def _spider_family(max_n: int) -> list[tuple[int, ...]]:
    """Spiders with 3..5 legs of lengths 1..3, up to relabelling, order <= max_n."""
    import itertools

    out = []
    for k in range(3, 6):
        for legs in itertools.combinations_with_replacement((1, 2, 3), k):
            if 1 + sum(legs) <= max_n:
                out.append(legs)
    return out


def _thm61(params: dict, seed: int) -> VerificationReport:
    report = VerificationReport("thm61", params, seed)
    run = _Run(report)
    start = time.perf_counter()

    def body(g: Graph) -> None:
        rep = verify_embedding(g, embed_supergraph(g))
        for v in rep.violations:
            run.fail(g, "embedding guarantees", v, f"s={rep.s} k={rep.k}")

    run.instance(petersen(), body)
    for i in range(params["samples"]):
        rng = instance_rng(seed, i)
        n = int(rng.integers(2, params["max_n"] + 1))
        run.instance(random_connected(n, float(rng.uniform(0.1, 0.7)), seed=rng), body)
    return _finish(report, start)


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Campaign:
    runner: Callable[[dict, int], VerificationReport]
    defaults: dict
    limits: dict  # upper bound on each numeric parameter
    description: str


_EXHAUSTIVE_DEFAULTS = {"max_n": 6, "samples": 0}
_EXHAUSTIVE_LIMITS = {"max_n": 7, "samples": 100_000}

CAMPAIGNS: dict[str, Campaign] = {
    "eq1": Campaign(_exhaustive_campaign("eq1"), _EXHAUSTIVE_DEFAULTS, _EXHAUSTIVE_LIMITS,
                    "dim_nl <= dim on every connected graph"),
    "prop21": Campaign(_exhaustive_campaign("prop21"), _EXHAUSTIVE_DEFAULTS, _EXHAUSTIVE_LIMITS,
                       "dim_nl = 1 iff some vertex has clique distance levels"),
    "prop22": Campaign(_prop22, {"max_n": 14, "samples": 100}, {"max_n": 24, "samples": 5000},
                       "bipartite graphs: dim_nl = dim; trees: n1 - ex"),
    "thm31": Campaign(_thm31, {"max_n": 14, "samples": 100}, {"max_n": 40, "samples": 5000},
                      "block graphs: dim of the block-cut tree"),
    "thm32": Campaign(_thm32, {"max_n": 5, "max_h": 4, "samples": 50}, {"max_n": 6, "max_h": 5, "samples": 2000},
                      "corona with non-complete factor"),
    "thm33": Campaign(_thm33, {"max_n": 5, "samples": 30}, {"max_n": 7, "samples": 1000},
                      "corona with complete factor: bounds and sharpness families"),
    "thm41": Campaign(_thm41, {"min_n": 7, "max_n": 30, "companion_max": 20, "lower_bound_max": 15},
                      {"min_n": 30, "max_n": 40, "companion_max": 24, "lower_bound_max": 20},
                      "wheels: floor(2n/5), construction and lower-bound argument"),
    "prop51": Campaign(_exhaustive_campaign("prop51"), _EXHAUSTIVE_DEFAULTS, _EXHAUSTIVE_LIMITS,
                       "dim_nl <= n - omega"),
    "prop52": Campaign(_exhaustive_campaign("prop52"), _EXHAUSTIVE_DEFAULTS, _EXHAUSTIVE_LIMITS,
                       "dim_nl = n - 2 iff K_{s,t} with t >= 2 (n >= 3)"),
    "thm53": Campaign(_thm53, {"max_n": 20, "samples": 100, "girth_samples": 50},
                      {"max_n": 30, "samples": 5000, "girth_samples": 2000},
                      "girth >= 7: dim_nl <= edge cover - 1, tree equality"),
    "thm61": Campaign(_thm61, {"max_n": 12, "samples": 200}, {"max_n": 16, "samples": 5000},
                      "embedding into a supergraph of small dim_nl and diameter"),
}


def resolve_params(theorem: str, params: dict | None = None) -> dict:
    if theorem not in CAMPAIGNS:
        raise ValueError(f"unknown theorem id {theorem!r}; choose from {', '.join(sorted(CAMPAIGNS))}")
    camp = CAMPAIGNS[theorem]
    merged = dict(camp.defaults)
    for key, value in (params or {}).items():
        if value is None:
            continue
        if key not in camp.defaults:
            raise ValueError(f"{theorem} has no parameter {key!r}; known: {', '.join(sorted(camp.defaults))}")
        value = int(value)
        if value < 0 or value > camp.limits[key]:
            raise ValueError(f"{theorem}: {key}={value} outside desk-scale range 0..{camp.limits[key]}")
        merged[key] = value
    if "min_n" in merged and merged["min_n"] < 3:
        raise ValueError("wheels need n >= 3")
    if merged.get("min_n", 0) > merged.get("max_n", 1 << 30):
        raise ValueError("min_n exceeds max_n")
    return merged


def verify(theorem: str, params: dict | None = None, seed: int = 0) -> VerificationReport:
    """Run one campaign; the report is a pure function of (theorem, params, seed)."""
    merged = resolve_params(theorem, params)
    return CAMPAIGNS[theorem].runner(merged, int(seed))
