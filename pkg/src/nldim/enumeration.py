"""Exhaustive generation of small connected graphs."""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator

import numpy as np

from .graph import Graph, GraphError

MAX_ENUM_ORDER = 8


def _connected(n: int, nbr: list[int]) -> bool:
    seen = 1
    frontier = 1
    full = (1 << n) - 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= nbr[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == full


def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_ENUM_ORDER:
        raise GraphError(f"enumeration supports 1 <= n <= {MAX_ENUM_ORDER}, got {n}")


def _labeled(n: int) -> Iterator[Graph]:
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        nbr = [0] * n
        edges = []
        for k, (u, v) in enumerate(pairs):
            if (mask >> k) & 1:
                nbr[u] |= 1 << v
                nbr[v] |= 1 << u
                edges.append((u, v))
        if _connected(n, nbr):
            yield Graph(n, edges)


def _refine(n: int, nbrs: list[list[int]], colours: list[int]) -> list[int]:
    k = len(set(colours))
    while True:
        sigs = [(colours[v], tuple(sorted(colours[w] for w in nbrs[v]))) for v in range(n)]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colours = [ranking[s] for s in sigs]
        if len(ranking) == k:
            return colours
        k = len(ranking)


def _code(n: int, nbr: list[int], order: list[int]) -> int:
    code = 0
    for j in range(1, n):
        row = nbr[order[j]]
        for i in range(j):
            code = (code << 1) | (row >> order[i] & 1)
    return code


_DIRECT_LIMIT = 48  # permute cells outright below this many orders


def _best_code(n: int, nbr: list[int], nbrs: list[list[int]], colours: list[int]) -> int:
    colours = _refine(n, nbrs, colours)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colours):
        cells.setdefault(c, []).append(v)
    ordered = [cells[c] for c in sorted(cells)]
    orders = 1
    for cell in ordered:
        orders *= math.factorial(len(cell))
    if orders <= _DIRECT_LIMIT:
        return max(
            _code(n, nbr, [v for part in parts for v in part])
            for parts in itertools.product(*(itertools.permutations(cell) for cell in ordered))
        )
    target = next(cell for cell in ordered if len(cell) > 1)
    best = -1
    for v in target:
        # individualise v just ahead of the rest of its cell, then refine again
        split = [2 * c for c in colours]
        split[v] -= 1
        best = max(best, _best_code(n, nbr, nbrs, split))
    return best


def _masks_certificate(n: int, nbr: list[int]) -> int:
    """Largest upper-triangle code over the leaves of an individualise-and-refine tree."""
    nbrs = [[w for w in range(n) if nbr[v] >> w & 1] for v in range(n)]
    return _best_code(n, nbr, nbrs, [0] * n)


def _masks(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.neighbors(v)) for v in range(g.n)]


def certificate(g: Graph) -> tuple[int, int]:
    """Canonical form: the largest upper-triangle code over refinement-respecting orders."""
    return g.n, _masks_certificate(g.n, _masks(g))


def _from_masks(n: int, nbr: list[int]) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if nbr[u] >> v & 1])


def _canonical(n: int) -> Iterator[Graph]:
    # every connected graph on n vertices is a connected graph on n-1 vertices
    # plus a vertex attached to a nonempty subset (delete a non-cut vertex)
    reps: list[list[int]] = [[0]]
    for order in range(2, n + 1):
        seen: dict[int, list[int]] = {}
        new = order - 1
        for base in reps:
            for subset in range(1, 1 << new):
                nbr = [m | ((subset >> v & 1) << new) for v, m in enumerate(base)] + [subset]
                cert = _masks_certificate(order, nbr)
                if cert not in seen:
                    seen[cert] = nbr
        reps = [seen[c] for c in sorted(seen)]
    return (_from_masks(n, nbr) for nbr in reps)


def enumerate_connected(n: int, canonical: bool = False) -> Iterator[Graph]:
    """Connected graphs on ``n`` vertices: every labelling, or one per isomorphism class."""
    _check_order(n)
    return _canonical(n) if canonical else _labeled(n)


def random_labeled_connected(n: int, rng: np.random.Generator) -> Graph:
    """Uniform over connected labelled graphs on ``n`` vertices (rejection sampling)."""
    while True:
        upper = np.triu(rng.random((n, n)) < 0.5, 1)
        g = Graph.from_adjacency(upper | upper.T)
        if g.is_connected():
            return g
