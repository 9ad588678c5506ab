"""Embed a connected graph into a supergraph of small nonlocal dimension and diameter.

Partition ``G`` into cliques (an optimal colouring of the complement), number
the cliques ``0..s-1`` and add a clique ``K_k`` with ``k = ceil(log2 s)``.
Anchor ``j`` is joined to every vertex of clique ``i`` whose ``k``-bit binary
index has a 0 in position ``j`` (most significant bit first).  The anchors then
resolve every non-adjacent pair, and clique ``0`` is adjacent to all anchors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import structure
from .graph import Graph, complement, diameter
from .solver import PairMode, is_resolving, solve_exact, unresolved_pairs


@dataclass(frozen=True)
class EmbeddingResult:
    H: Graph
    embedding: tuple[int, ...]  # vertex v of G is vertex embedding[v] of H
    classes: tuple[tuple[int, ...], ...]  # cliques X_0..X_{s-1} of G
    anchor: tuple[int, ...]  # vertices of the added K_k, anchor[j] is bit j
    s: int
    k: int


def bits_needed(s: int) -> int:
    """Smallest k with s <= 2**k (0 for s = 1)."""
    return (s - 1).bit_length()


def anchor_bit(i: int, j: int, k: int) -> int:
    """Bit ``j`` of ``i`` written with ``k`` binary digits, most significant first."""
    return (i >> (k - 1 - j)) & 1


def _order_classes(g: Graph, classes: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    # first class pair (a, b), a < b, joined by an edge becomes (0, s-1)
    adj = g.adjacency
    s = len(classes)
    for a in range(s):
        for b in range(a + 1, s):
            if adj[np.ix_(list(classes[a]), list(classes[b]))].any():
                middle = [c for i, c in enumerate(classes) if i not in (a, b)]
                return [classes[a], *middle, classes[b]]
    raise AssertionError("connected graph with s >= 2 has a crossing edge")


def embed_supergraph(g: Graph) -> EmbeddingResult:
    g.require_connected("embedding")
    cover = structure.chromatic_number(complement(g))
    s = cover.number
    ident = tuple(range(g.n))
    if s <= 1:
        return EmbeddingResult(g, ident, cover.classes, (), s, 0)
    classes = _order_classes(g, list(cover.classes))
    k = bits_needed(s)
    n = g.n + k
    a = np.zeros((n, n), dtype=bool)
    a[: g.n, : g.n] = g.adjacency
    anchor = tuple(range(g.n, n))
    a[g.n :, g.n :] = True
    for i, cls in enumerate(classes):
        for j, x in enumerate(anchor):
            if anchor_bit(i, j, k) == 0:
                a[x, list(cls)] = True
                a[list(cls), x] = True
    np.fill_diagonal(a, False)
    return EmbeddingResult(Graph.from_adjacency(a), ident, tuple(classes), anchor, s, k)


@dataclass
class EmbeddingReport:
    s: int
    k: int
    classes: tuple[tuple[int, ...], ...]
    induced: bool
    classes_ok: bool
    anchor_rule_ok: bool
    anchor_resolving: bool
    diameter: int
    diameter_ok: bool
    tight_case: bool  # s < 2**k, where the diameter drops to 3
    tight_diameter_ok: bool
    statement_reading: bool  # 2**(k-1) <= s < 2**k, recorded only
    solved_value: int | None = None
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_embedding(g: Graph, r: EmbeddingResult, solve: bool = True, max_solve_order: int = 40) -> EmbeddingReport:
    """Check the construction's guarantees; ``violations`` names every failure."""
    H = r.H
    emb = list(r.embedding)
    violations: list[str] = []

    induced = bool((H.adjacency[np.ix_(emb, emb)] == g.adjacency).all())
    if not induced:
        violations.append("G is not induced in H")

    covered = sorted(v for cls in r.classes for v in cls)
    classes_ok = covered == list(range(g.n)) and all(structure.induces_clique(g, c) for c in r.classes)
    if r.s >= 2 and classes_ok:
        first, last = list(r.classes[0]), list(r.classes[-1])
        classes_ok = bool(g.adjacency[np.ix_(first, last)].any())
    if not classes_ok:
        violations.append("classes are not a clique partition with an X_0--X_{s-1} edge")

    if r.anchor:
        anchor_rule_ok = len(r.anchor) == r.k and structure.induces_clique(H, r.anchor)
    else:
        anchor_rule_ok = r.k == 0
    for i, cls in enumerate(r.classes):
        for j, x in enumerate(r.anchor):
            want = anchor_bit(i, j, r.k) == 0
            if any(H.has_edge(x, emb[v]) != want for v in cls):
                anchor_rule_ok = False
                violations.append(f"anchor {j} vs class {i} breaks the binary rule")
    if not anchor_rule_ok and not any("binary rule" in v for v in violations):
        violations.append("anchor does not induce K_k")

    anchor_resolving = is_resolving(H, r.anchor, PairMode.NON_ADJACENT)
    if not anchor_resolving:
        bad = unresolved_pairs(H, r.anchor, PairMode.NON_ADJACENT)[0]
        violations.append(f"anchor leaves non-adjacent pair {bad} unresolved")

    diam = diameter(H)
    diameter_ok = diam <= 4
    if not diameter_ok:
        violations.append(f"diam(H) = {diam} > 4")
    tight = r.s >= 2 and r.s < 2**r.k
    tight_ok = diam <= 3 if tight else True
    if not tight_ok:
        violations.append(f"s = {r.s} < 2^{r.k} but diam(H) = {diam} > 3")
    reading = r.k >= 1 and 2 ** (r.k - 1) <= r.s < 2**r.k

    solved = None
    if solve and H.n <= max_solve_order:
        solved = solve_exact(H, PairMode.NON_ADJACENT).value
        if solved > r.k:
            violations.append(f"dim_nl(H) = {solved} > k = {r.k}")

    return EmbeddingReport(
        r.s, r.k, r.classes, induced, classes_ok, anchor_rule_ok, anchor_resolving,
        diam, diameter_ok, tight, tight_ok, reading, solved, violations,
    )
