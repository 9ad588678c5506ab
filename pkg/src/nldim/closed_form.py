"""Closed-form values and explicit bases for special graph classes."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import structure
from .graph import Graph, GraphError, complete, corona, empty, girth, join, wheel
from .solver import PairMode, is_resolving, solve_exact


@dataclass(frozen=True)
class FormulaResult:
    value: int
    witness: tuple[int, ...] | None
    theorem: str


# ---------------------------------------------------------------------------
# trees and block graphs


def tree_metric_basis(t: Graph) -> tuple[int, ...]:
    """Metric basis of a tree built from leaves only.

    Paths get their lowest-index leaf; otherwise every exterior branch vertex
    keeps all terminal leaves but its largest-index one.
    """
    if not structure.is_tree(t):
        raise GraphError("not a tree")
    if t.n <= 1:
        return ()
    if structure.is_path(t):
        return (min(v for v in range(t.n) if t.degree(v) == 1),)
    stats = structure.tree_stats(t)
    return tuple(sorted(x for leaves in stats.terminal_leaves.values() for x in leaves[:-1]))


def dim_tree(t: Graph) -> int:
    """Metric dimension of a tree: 1 for paths, leaves minus exterior branch vertices otherwise.

    By bipartiteness this is also the nonlocal metric dimension once n >= 3.
    """
    if not structure.is_tree(t):
        raise GraphError("dim_tree needs a tree")
    if t.n == 1:
        return 0
    if structure.is_path(t):
        return 1
    stats = structure.tree_stats(t)
    return stats.n1 - stats.ex


def dimnl_block_graph(g: Graph) -> FormulaResult:
    """Nonlocal dimension of a block graph via the metric dimension of its block-cut tree.

    The witness takes, for each block-leaf picked by :func:`tree_metric_basis`
    on the block-cut tree, the lowest-index non-cut vertex of that block.
    """
    if not structure.is_block_graph(g):
        raise GraphError("not a block graph")
    bct = structure.block_cut_tree(g)
    tree = bct.tree
    if tree.n == 1:
        return FormulaResult(0, (), "block-graph")
    value = dim_tree(tree)
    dec = bct.decomposition
    witness = []
    for node in tree_metric_basis(tree):
        kind = bct.node_kind[node]
        assert kind.kind == "block"
        witness.append(min(dec.blocks[kind.ref] - dec.cut_vertices))
    return FormulaResult(value, tuple(sorted(witness)), "block-graph")


# ---------------------------------------------------------------------------
# corona products


def dimnl_corona(g: Graph, h: Graph) -> int:
    """``n(g)`` times the nonlocal dimension of ``h`` joined with a single vertex."""
    g.require_connected("corona")
    if h.is_complete():
        raise GraphError("second factor is complete; use corona_complete_bounds")
    return g.n * solve_exact(join(complete(1), h), PairMode.NON_ADJACENT).value


def corona_basis(g: Graph, h: Graph) -> tuple[int, ...]:
    """Copy a nonlocal basis of ``K_1 + h`` (apex-free) into every copy of ``h``."""
    if h.is_complete():
        raise GraphError("second factor is complete")
    apexed = join(complete(1), h)
    # the apex distinguishes no non-adjacent pair, so the solver never picks it
    base = [x - 1 for x in solve_exact(apexed, PairMode.NON_ADJACENT).basis]
    return tuple(sorted(g.n + i * h.n + x for i in range(g.n) for x in base))


def corona_complete_bounds(g: Graph, n: int) -> tuple[int, int]:
    """(metric dimension of ``g``, order of ``g``) bracketing dim_nl(g corona K_n)."""
    g.require_connected("corona")
    if n < 1:
        raise GraphError("n must be >= 1")
    return solve_exact(g, PairMode.ALL).value, g.n


def corona_complete_value(g: Graph, n: int) -> int:
    return solve_exact(corona(g, complete(n)), PairMode.NON_ADJACENT).value


# ---------------------------------------------------------------------------
# wheels (rim 0..n-1, hub n)

# brute-force values below the range of the general formulas
_DIMNL_WHEEL_SMALL = {3: 0, 4: 2, 5: 2, 6: 2}
_DIM_WHEEL_SMALL = {3: 3, 4: 2, 5: 2, 6: 3}
_DIMLOCAL_WHEEL_SMALL = {3: 3, 4: 2}


def _wheel_n(n: int) -> int:
    if int(n) != n or n < 3:
        raise GraphError(f"wheel needs n >= 3, got {n}")
    return int(n)


def dimnl_wheel(n: int) -> int:
    n = _wheel_n(n)
    return _DIMNL_WHEEL_SMALL.get(n, 2 * n // 5)


def dim_wheel(n: int) -> int:
    n = _wheel_n(n)
    return _DIM_WHEEL_SMALL.get(n, (2 * n + 2) // 5)


def dimlocal_wheel(n: int) -> int:
    n = _wheel_n(n)
    return _DIMLOCAL_WHEEL_SMALL.get(n, -(-n // 4))


def wheel_basis(n: int) -> tuple[int, ...]:
    """Rim landmarks of size floor(2n/5), chosen by n mod 5."""
    if int(n) != n or n < 7:
        raise GraphError(f"wheel_basis needs n >= 7, got {n}")
    k, r = divmod(n, 5)
    if r in (0, 1):
        s = {5 * i for i in range(1, k)} | {5 * i + 2 for i in range(1, k)} | {0, 5 * k - 1}
    elif r == 2:
        s = {5 * i for i in range(1, k)} | {5 * i + 2 for i in range(1, k)} | {0, 5 * k}
    else:
        s = {5 * i for i in range(1, k + 1)} | {5 * i + 2 for i in range(1, k + 1)} | {0}
    return tuple(sorted(s))


@dataclass(frozen=True)
class Gap:
    left: int  # landmark before the gap
    right: int  # landmark after it
    size: int


@dataclass(frozen=True)
class WheelGapProfile:
    n: int
    landmarks: tuple[int, ...]
    gaps: tuple[Gap, ...]  # cyclic order, gaps[i] starts at landmarks[i]


def wheel_gap_profile(n: int, landmarks) -> WheelGapProfile:
    xs = sorted(set(int(x) for x in landmarks))
    if len(xs) < 2:
        raise GraphError("gap analysis needs at least two rim landmarks")
    if xs[0] < 0 or xs[-1] >= n:
        raise GraphError("landmarks must be rim vertices 0..n-1")
    gaps = []
    for i, x in enumerate(xs):
        y = xs[(i + 1) % len(xs)]
        gaps.append(Gap(x, y, (y - x - 1) % n))
    return WheelGapProfile(n, tuple(xs), tuple(gaps))


@dataclass(frozen=True)
class GapReport:
    profile: WheelGapProfile
    max_gap_ok: bool  # every gap has at most 4 vertices
    single_large_gap: bool  # at most one gap with 3 or more vertices
    large_gap_neighbours_ok: bool  # gaps of size >= 2 sit between gaps of size <= 1
    resolving: bool

    @property
    def conditions_hold(self) -> bool:
        return self.max_gap_ok and self.single_large_gap and self.large_gap_neighbours_ok


def wheel_gap_check(n: int, landmarks) -> GapReport:
    """Evaluate the three gap conditions and check resolvability on ``W_{1,n}``."""
    prof = wheel_gap_profile(n, landmarks)
    sizes = [gp.size for gp in prof.gaps]
    k = len(sizes)
    cond_i = max(sizes) <= 4
    cond_ii = sum(s >= 3 for s in sizes) <= 1
    cond_iii = all(
        sizes[(i - 1) % k] <= 1 and sizes[(i + 1) % k] <= 1 for i, s in enumerate(sizes) if s >= 2
    )
    resolving = is_resolving(wheel(n), prof.landmarks, PairMode.NON_ADJACENT)
    return GapReport(prof, cond_i, cond_ii, cond_iii, resolving)


def remove_gap_of_three(n: int, landmarks) -> tuple[int, ...]:
    """Shift one landmark so no gap has exactly three vertices, keeping the size.

    Only meaningful for rim sets satisfying the gap conditions (in particular
    nonlocal bases); used by the lower-bound verification.
    """
    s = set(int(x) for x in landmarks)
    for _ in range(len(s) + 1):
        three = [gp for gp in wheel_gap_profile(n, s).gaps if gp.size == 3]
        if not three:
            return tuple(sorted(s))
        i = three[0].left
        right = (i + 4) % n
        if (i + 5) % n not in s:
            s = (s - {right}) | {(i + 5) % n}
        elif (i - 1) % n not in s:
            s = (s - {i}) | {(i - 1) % n}
        elif (i + 6) % n not in s:
            s = (s - {right}) | {(i + 6) % n}
        else:
            raise GraphError("gap of three flanked by landmarks on both sides; cannot shift")
    raise GraphError("gap normalisation did not terminate")


def wheel_gap_capacity(size: int) -> int:
    """Most rim vertices the gaps of a size-``size`` rim set can hold.

    Assumes the gap conditions and no gap of exactly three vertices: at most
    ``floor(size/2)`` gaps hold 2 or 4 vertices (one of them 4), the rest hold at most 1.
    """
    r = size // 2
    if size % 2 == 0:
        return 2 * (r - 1) + 4 + r
    return 2 * (r - 1) + 4 + (r + 1)


# ---------------------------------------------------------------------------
# bounds and small families


def omega_upper_bound(g: Graph) -> int:
    return g.n - structure.clique_number(g)


@dataclass(frozen=True)
class BoundResult:
    value: int | None
    reason: str

    @property
    def applies(self) -> bool:
        return self.value is not None


def beta_prime_upper_bound(g: Graph) -> BoundResult:
    """Edge cover number minus one, valid when the girth is at least 7."""
    g.require_connected("edge cover bound")
    if g.n < 2:
        return BoundResult(None, "no edges: edge cover undefined")
    gir = girth(g)
    if gir < 7:
        return BoundResult(None, f"girth {gir} < 7")
    return BoundResult(structure.edge_cover_number(g) - 1, "girth >= 7" if gir != math.inf else "acyclic")


def dimnl_complete_bipartite(s: int, t: int) -> int:
    s, t = sorted((int(s), int(t)))
    if s < 1 or t < 2:
        raise GraphError("need parts of sizes >= 1 and >= 2")
    return s + t - 2


def is_complete_bipartite(g: Graph) -> tuple[int, int] | None:
    """Part sizes (ascending) when ``g`` is some K_{s,t} with s, t >= 1."""
    if g.n < 2 or not g.is_connected():
        return None
    parts = structure.bipartition(g)
    if parts is None:
        return None
    a, b = parts
    if not a or not b or g.m != len(a) * len(b):
        return None
    return tuple(sorted((len(a), len(b))))


def star_legs(t: Graph) -> list[int] | None:
    """Leg lengths if ``t`` is a spider with a single vertex of degree >= 3."""
    if not structure.is_tree(t):
        return None
    deg = t.degrees()
    centres = [v for v in range(t.n) if deg[v] >= 3]
    if len(centres) != 1:
        return None
    c = centres[0]
    d = t.distances[c]
    leaves = [v for v in range(t.n) if deg[v] == 1]
    return sorted(int(d[x]) for x in leaves)


def is_subdivided_star(t: Graph) -> bool:
    """Star K_{1,k}, k >= 3, with all but at least one edge subdivided at most once."""
    legs = star_legs(t)
    return legs is not None and max(legs) <= 2 and min(legs) == 1


def empty_join_clique(s: int, t: int) -> Graph:
    """K_s + complement(K_t)."""
    return join(complete(s), empty(t))
