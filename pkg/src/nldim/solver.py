"""Exact metric dimension in its three flavours, as a minimum set cover.

A vertex ``x`` *distinguishes* the pair ``{u, v}`` when ``d(x,u) != d(x,v)``.
Which pairs must be distinguished depends on the :class:`PairMode`: every pair
(classic metric dimension), only non-adjacent pairs (nonlocal), or only
adjacent pairs (local).
"""

from __future__ import annotations

import enum
import itertools
import os
import time
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .graph import Graph, GraphError

MAX_PAIRS = 20_000
DEFAULT_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    """The branch-and-bound node ceiling was hit before optimality was proved."""

    def __init__(self, nodes: int, budget: int):
        super().__init__(f"search budget of {budget} nodes exceeded ({nodes} explored)")
        self.nodes = nodes
        self.budget = budget


class PairMode(enum.Enum):
    ALL = "full"
    NON_ADJACENT = "nonlocal"
    ADJACENT = "local"

    @classmethod
    def parse(cls, value: str | PairMode) -> PairMode:
        if isinstance(value, PairMode):
            return value
        for mode in cls:
            if value.lower() in (mode.value, mode.name.lower()):
                return mode
        raise ValueError(f"unknown pair mode {value!r}")


def pair_mask(g: Graph, mode: PairMode) -> np.ndarray:
    """Boolean upper-triangular mask of the pairs ``mode`` asks to resolve."""
    upper = np.triu(np.ones((g.n, g.n), dtype=bool), 1)
    if mode is PairMode.ALL:
        return upper
    if mode is PairMode.NON_ADJACENT:
        return upper & ~g.adjacency
    return upper & g.adjacency


@dataclass(frozen=True, eq=False)
class ResolutionInstance:
    """Pairs to resolve and, per vertex, which of them it distinguishes."""

    n: int
    mode: PairMode
    pairs: np.ndarray  # (P, 2) int, u < v, lexicographic
    table: np.ndarray  # (n, P) bool, table[x, p] = x distinguishes pair p

    @property
    def num_pairs(self) -> int:
        return len(self.pairs)

    def distinguishers(self, x: int) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.table[x]).tolist())

    def pair_list(self) -> list[tuple[int, int]]:
        return [tuple(p) for p in self.pairs.tolist()]

    def covers(self, vertices: Iterable[int]) -> bool:
        idx = list(vertices)
        if self.num_pairs == 0:
            return True
        if not idx:
            return False
        return bool(self.table[idx].any(axis=0).all())

    def packed(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(vertex -> pair bitsets, pair -> vertex bitsets, all-pairs mask)."""
        cover = kernels.pack_rows(self.table)
        cand = kernels.pack_rows(np.ascontiguousarray(self.table.T))
        return cover, cand, kernels.full_mask(self.num_pairs)


def build_instance(g: Graph, mode: PairMode | str) -> ResolutionInstance:
    mode = PairMode.parse(mode)
    g.require_connected("resolving sets")
    us, vs = np.nonzero(pair_mask(g, mode))
    if len(us) > MAX_PAIRS:
        raise GraphError(f"{len(us)} pairs exceed the instance cap of {MAX_PAIRS}")
    d = g.distances
    table = d[:, us] != d[:, vs]
    pairs = np.stack([us, vs], axis=1) if len(us) else np.zeros((0, 2), dtype=np.int64)
    return ResolutionInstance(g.n, mode, pairs, table)


def is_resolving(g: Graph, vertices: Iterable[int], mode: PairMode | str = PairMode.NON_ADJACENT) -> bool:
    mode = PairMode.parse(mode)
    g.require_connected("resolving sets")
    idx = sorted(set(int(x) for x in vertices))
    if any(not 0 <= x < g.n for x in idx):
        raise GraphError("landmark outside the vertex range")
    mask = pair_mask(g, mode)
    if not idx:
        return not mask.any()
    # u, v unresolved <=> identical distance vectors to the landmarks
    rep = g.distances[:, idx]
    same = (rep[:, None, :] == rep[None, :, :]).all(axis=2)
    return not (same & mask).any()


def unresolved_pairs(g: Graph, vertices: Iterable[int], mode: PairMode | str) -> list[tuple[int, int]]:
    mode = PairMode.parse(mode)
    idx = sorted(set(int(x) for x in vertices))
    mask = pair_mask(g, mode)
    if idx:
        rep = g.distances[:, idx]
        mask = mask & (rep[:, None, :] == rep[None, :, :]).all(axis=2)
    us, vs = np.nonzero(mask)
    return list(zip(us.tolist(), vs.tolist()))


@dataclass(frozen=True)
class SolveResult:
    value: int
    basis: tuple[int, ...]
    mode: PairMode
    nodes: int = 0
    elapsed: float = 0.0


def _greedy_cover(inst: ResolutionInstance) -> list[int]:
    table = inst.table
    uncovered = np.ones(inst.num_pairs, dtype=bool)
    chosen: list[int] = []
    while uncovered.any():
        gains = table[:, uncovered].sum(axis=1)
        x = int(np.argmax(gains))
        chosen.append(x)
        uncovered &= ~table[x]
    # drop redundant picks, last chosen first
    for x in list(reversed(chosen)):
        rest = [y for y in chosen if y != x]
        if inst.covers(rest):
            chosen = rest
    return sorted(chosen)


def greedy_upper_bound(g: Graph, mode: PairMode | str = PairMode.NON_ADJACENT) -> tuple[int, ...]:
    """A minimal (not necessarily minimum) resolving set for ``mode``."""
    return tuple(_greedy_cover(build_instance(g, mode)))


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("NLDIM_BUDGET")
    if not raw:
        return default
    try:
        value = int(float(raw))
    except ValueError as exc:
        raise ValueError(f"NLDIM_BUDGET must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError("NLDIM_BUDGET must be positive")
    return value


def solve_instance(inst: ResolutionInstance, budget: int | None = None) -> SolveResult:
    budget = budget_from_env() if budget is None else budget
    start = time.perf_counter()
    if inst.num_pairs == 0:
        return SolveResult(0, (), inst.mode, 0, time.perf_counter() - start)
    greedy = _greedy_cover(inst)
    init = np.zeros(inst.n, dtype=np.bool_)
    init[greedy] = True
    cover, cand, full = inst.packed()
    status, nodes, best, best_set, _, _ = kernels.cover_search(
        cover, cand, full, len(greedy), init, -1, 0, budget
    )
    if status == kernels.STATUS_BUDGET:
        raise BudgetExceededError(int(nodes), budget)
    basis = tuple(np.flatnonzero(best_set).tolist())
    assert len(basis) == best
    return SolveResult(int(best), basis, inst.mode, int(nodes), time.perf_counter() - start)


def solve_exact(g: Graph, mode: PairMode | str = PairMode.NON_ADJACENT, budget: int | None = None) -> SolveResult:
    """Minimum resolving set for ``mode`` with a certificate basis.

    Raises :class:`BudgetExceededError` rather than returning an unproven value.
    """
    return solve_instance(build_instance(g, mode), budget)


def dim(g: Graph) -> int:
    return solve_exact(g, PairMode.ALL).value


def dim_nonlocal(g: Graph) -> int:
    return solve_exact(g, PairMode.NON_ADJACENT).value


def dim_local(g: Graph) -> int:
    return solve_exact(g, PairMode.ADJACENT).value


@dataclass
class MinBases:
    value: int
    bases: list[tuple[int, ...]] = field(default_factory=list)
    complete: bool = True

    def __iter__(self):
        return iter(self.bases)

    def __len__(self) -> int:
        return len(self.bases)


def all_min_bases(
    g: Graph, mode: PairMode | str = PairMode.NON_ADJACENT, limit: int = 1000, budget: int | None = None
) -> MinBases:
    """Every minimum resolving set, up to ``limit``; ``complete`` is False if more exist."""
    inst = build_instance(g, mode)
    value = solve_instance(inst, budget).value
    if value == 0:
        return MinBases(0, [()], True)
    budget = budget_from_env() if budget is None else budget
    cover, cand, full = inst.packed()
    status, nodes, _, _, sols, nsol = kernels.cover_search(
        cover, cand, full, value, np.zeros(inst.n, dtype=np.bool_), value, limit, budget
    )
    if status == kernels.STATUS_BUDGET:
        raise BudgetExceededError(int(nodes), budget)
    bases = sorted({tuple(np.flatnonzero(row).tolist()) for row in sols[:nsol]})
    return MinBases(value, bases, status != kernels.STATUS_LIMIT)


def is_minimal_resolving(g: Graph, vertices: Iterable[int], mode: PairMode | str) -> bool:
    """Resolving, and no single vertex can be dropped."""
    xs = sorted(set(vertices))
    if not is_resolving(g, xs, mode):
        return False
    return all(not is_resolving(g, [y for y in xs if y != x], mode) for x in xs)


def solve_brute_force(g: Graph, mode: PairMode | str = PairMode.NON_ADJACENT) -> tuple[int, tuple[int, ...]]:
    """Unpruned oracle: scan subsets by increasing size, first resolving one wins.

    Works straight off the distance matrix and never touches the set-cover
    instance or the search kernel.
    """
    mode = PairMode.parse(mode)
    g.require_connected("resolving sets")
    us, vs = np.nonzero(pair_mask(g, mode))
    if len(us) == 0:
        return 0, ()
    d = g.distances
    dist_u, dist_v = d[:, us], d[:, vs]
    for k in range(1, g.n + 1):
        combos = np.array(list(itertools.combinations(range(g.n), k)), dtype=np.int64)
        for chunk in np.array_split(combos, max(1, len(combos) // 2048)):
            resolved = (dist_u[chunk] != dist_v[chunk]).any(axis=1).all(axis=1)
            hit = np.flatnonzero(resolved)
            if len(hit):
                return k, tuple(int(x) for x in chunk[hit[0]])
    raise AssertionError("V(G) always resolves")  # pragma: no cover
