"""Structural invariants: cliques, colourings, matchings, blocks, tree statistics."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError

# ---------------------------------------------------------------------------
# cliques


def _nbr_masks(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.neighbors(u)) for u in range(g.n)]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def max_clique(g: Graph) -> tuple[int, ...]:
    """A maximum clique, by branch and bound with greedy-colouring bounds."""
    if g.n == 0:
        return ()
    nbr = _nbr_masks(g)
    best: list[int] = [0]

    def colour_sort(cands: int) -> tuple[list[int], list[int]]:
        order, bounds = [], []
        uncoloured = cands
        k = 0
        while uncoloured:
            k += 1
            q = uncoloured
            while q:
                v = (q & -q).bit_length() - 1
                q &= ~nbr[v] & ~(1 << v)
                uncoloured &= ~(1 << v)
                order.append(v)
                bounds.append(k)
        return order, bounds

    def expand(clique: list[int], cands: int) -> None:
        nonlocal best
        order, bounds = colour_sort(cands)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + bounds[i] <= len(best):
                return
            v = order[i]
            sub = cands & nbr[v]
            if sub:
                expand(clique + [v], sub)
            elif len(clique) + 1 > len(best):
                best = clique + [v]
            cands &= ~(1 << v)

    expand([], (1 << g.n) - 1)
    return tuple(sorted(best))


def clique_number(g: Graph) -> int:
    return len(max_clique(g))


# ---------------------------------------------------------------------------
# colouring


@dataclass(frozen=True)
class Coloring:
    number: int
    classes: tuple[tuple[int, ...], ...]

    def color_of(self) -> dict[int, int]:
        return {v: i for i, cls in enumerate(self.classes) for v in cls}


def _canonical_classes(colors: list[int]) -> tuple[tuple[int, ...], ...]:
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        groups.setdefault(c, []).append(v)
    return tuple(sorted(tuple(vs) for vs in groups.values()))


def is_proper_coloring(g: Graph, classes) -> bool:
    seen = sorted(v for cls in classes for v in cls)
    if seen != list(range(g.n)):
        return False
    adj = g.adjacency
    return all(not adj[np.ix_(list(cls), list(cls))].any() for cls in classes if cls)


def chromatic_number(g: Graph) -> Coloring:
    """Exact chromatic number with an optimal colouring as certificate.

    DSATUR ordering (saturation, then degree, then lowest index) drives a
    branch and bound seeded by the greedy DSATUR colouring and stopped early
    once the clique lower bound is met.  Classes are listed by smallest member.
    """
    n = g.n
    if n == 0:
        return Coloring(0, ())
    adj = [g.neighbors(u) for u in range(n)]
    deg = [len(a) for a in adj]
    lower = clique_number(g)

    colors = [-1] * n
    sat = [dict() for _ in range(n)]  # colour -> number of neighbours holding it

    def pick() -> int:
        best_v, best_key = -1, None
        for v in range(n):
            if colors[v] < 0:
                key = (len(sat[v]), deg[v])
                if best_key is None or key > best_key:
                    best_v, best_key = v, key
        return best_v

    def assign(v: int, c: int) -> None:
        colors[v] = c
        for w in adj[v]:
            sat[w][c] = sat[w].get(c, 0) + 1

    def unassign(v: int) -> None:
        c = colors[v]
        colors[v] = -1
        for w in adj[v]:
            sat[w][c] -= 1
            if not sat[w][c]:
                del sat[w][c]

    # greedy DSATUR for the incumbent
    for _ in range(n):
        v = pick()
        c = 0
        while c in sat[v]:
            c += 1
        assign(v, c)
    best_colors = colors[:]
    best_k = max(colors) + 1
    for v in range(n):
        unassign(v)

    def search(done: int, used: int) -> None:
        nonlocal best_k, best_colors
        if best_k == lower:
            return
        if done == n:
            best_k, best_colors = used, colors[:]
            return
        v = pick()
        for c in range(min(used + 1, best_k - 1)):
            if c in sat[v]:
                continue
            assign(v, c)
            search(done + 1, max(used, c + 1))
            unassign(v)
            if best_k == lower:
                return

    if best_k > lower:
        search(0, 0)
    return Coloring(best_k, _canonical_classes(best_colors))


# ---------------------------------------------------------------------------
# matchings and edge covers


def maximum_matching(g: Graph) -> list[tuple[int, int]]:
    """Maximum cardinality matching in a general graph (Edmonds' blossom search)."""
    n = g.n
    adj = [g.neighbors(u) for u in range(n)]
    match = [-1] * n

    def lca(a: int, b: int, base: list[int], parent: list[int]) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark(v: int, b: int, child: int, base, blossom, parent) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def augmenting_path(root: int) -> tuple[int, list[int]]:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to, base, parent)
                    blossom = [False] * n
                    mark(v, cur, to, base, blossom, parent)
                    mark(to, cur, v, base, blossom, parent)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to, parent
                    used[match[to]] = True
                    queue.append(match[to])
        return -1, parent

    for root in range(n):
        if match[root] != -1:
            continue
        end, parent = augmenting_path(root)
        while end != -1:
            pv = parent[end]
            nxt = match[pv]
            match[end], match[pv] = pv, end
            end = nxt
    return sorted((u, v) for u, v in enumerate(match) if u < v)


def matching_number_brute(g: Graph) -> int:
    """Exhaustive maximum matching size; oracle for small graphs."""
    if g.n > 12:
        raise GraphError("brute-force matching is limited to n <= 12")
    edges = g.edges()

    def best(i: int, used: int) -> int:
        if i == len(edges):
            return 0
        u, v = edges[i]
        skip = best(i + 1, used)
        if not (used >> u) & 1 and not (used >> v) & 1:
            return max(skip, 1 + best(i + 1, used | (1 << u) | (1 << v)))
        return skip

    return best(0, 0)


def edge_cover_number(g: Graph) -> int:
    """n - (maximum matching size); undefined with isolated vertices."""
    if g.n == 0:
        return 0
    if (g.degrees() == 0).any():
        raise GraphError("edge cover needs a graph without isolated vertices")
    return g.n - len(maximum_matching(g))


def edge_cover_number_brute(g: Graph) -> int:
    """Smallest edge subset touching every vertex, by enumeration."""
    if (g.degrees() == 0).any():
        raise GraphError("edge cover needs a graph without isolated vertices")
    edges = g.edges()
    full = (1 << g.n) - 1
    masks = [(1 << u) | (1 << v) for u, v in edges]
    for k in range(len(edges) + 1):
        for combo in itertools.combinations(masks, k):
            acc = 0
            for m in combo:
                acc |= m
            if acc == full:
                return k
    raise AssertionError("unreachable")  # pragma: no cover


# ---------------------------------------------------------------------------
# bipartiteness, levels


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Colour classes of a connected bipartite graph, or None with an odd cycle."""
    g.require_connected("bipartition")
    if g.n == 0:
        return frozenset(), frozenset()
    side = g.distances[0] % 2
    for u, v in g.edges():
        if side[u] == side[v]:
            return None
    a = frozenset(np.flatnonzero(side == 0).tolist())
    return a, frozenset(range(g.n)) - a


def distance_levels(g: Graph, x: int) -> list[frozenset[int]]:
    """``L_k(x)`` for k = 0..ecc(x)."""
    g.require_connected("distance levels")
    row = g.distances[x]
    return [frozenset(np.flatnonzero(row == k).tolist()) for k in range(int(row.max()) + 1)]


def induces_clique(g: Graph, vertices) -> bool:
    vs = list(vertices)
    sub = g.adjacency[np.ix_(vs, vs)]
    return bool(sub.sum() == len(vs) * (len(vs) - 1))


def has_clique_levels(g: Graph, x: int) -> bool:
    return all(induces_clique(g, level) for level in distance_levels(g, x))


# ---------------------------------------------------------------------------
# blocks


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Biconnected components (bridges included) and cut vertices.

    Blocks are ordered by their sorted vertex tuples.
    """
    g.require_connected("block decomposition")
    n = g.n
    if n == 0:
        return BlockDecomposition((), frozenset())
    if n == 1:
        return BlockDecomposition((frozenset({0}),), frozenset())
    adj = [g.neighbors(u) for u in range(n)]
    disc = [-1] * n
    low = [0] * n
    blocks: list[frozenset[int]] = []
    edge_stack: list[tuple[int, int]] = []
    disc[0] = low[0] = 0
    timer = 1
    stack = [(0, -1, iter(adj[0]))]
    while stack:
        u, parent, it = stack[-1]
        descended = False
        for w in it:
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                edge_stack.append((u, w))
                stack.append((w, u, iter(adj[w])))
                descended = True
                break
            if w != parent and disc[w] < disc[u]:
                edge_stack.append((u, w))
                low[u] = min(low[u], disc[w])
        if descended:
            continue
        stack.pop()
        if stack:
            p = stack[-1][0]
            low[p] = min(low[p], low[u])
            if low[u] >= disc[p]:
                comp: set[int] = set()
                while True:
                    e = edge_stack.pop()
                    comp.update(e)
                    if e == (p, u):
                        break
                blocks.append(frozenset(comp))
    blocks.sort(key=lambda b: sorted(b))
    count = [0] * n
    for b in blocks:
        for v in b:
            count[v] += 1
    cuts = frozenset(v for v in range(n) if count[v] >= 2)
    return BlockDecomposition(tuple(blocks), cuts)


def is_block_graph(g: Graph) -> bool:
    return all(induces_clique(g, b) for b in block_decomposition(g).blocks)


@dataclass(frozen=True)
class TreeNode:
    kind: str  # "block" or "cut"
    ref: int  # block index or vertex id


@dataclass(frozen=True)
class BlockCutTree:
    tree: Graph
    node_kind: tuple[TreeNode, ...]
    decomposition: BlockDecomposition

    def block_node(self, index: int) -> int:
        return index

    def cut_node(self, vertex: int) -> int:
        return self.node_kind.index(TreeNode("cut", vertex))


def block_cut_tree(g: Graph) -> BlockCutTree:
    """Tree on blocks (nodes ``0..B-1``) and cut vertices (following, ascending)."""
    dec = block_decomposition(g)
    cuts = sorted(dec.cut_vertices)
    kinds = [TreeNode("block", i) for i in range(len(dec.blocks))]
    kinds += [TreeNode("cut", v) for v in cuts]
    index = {v: len(dec.blocks) + i for i, v in enumerate(cuts)}
    edges = [(bi, index[v]) for bi, b in enumerate(dec.blocks) for v in sorted(b) if v in index]
    return BlockCutTree(Graph(len(kinds), edges), tuple(kinds), dec)


# ---------------------------------------------------------------------------
# trees


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and g.is_connected()


def is_path(g: Graph) -> bool:
    return is_tree(g) and int(g.degrees().max(initial=0)) <= 2


@dataclass(frozen=True)
class TreeStats:
    leaves: frozenset[int]
    branch_vertices: frozenset[int]
    exterior_branch_vertices: frozenset[int]
    terminal_leaves: dict[int, tuple[int, ...]]

    @property
    def n1(self) -> int:
        return len(self.leaves)

    @property
    def ex(self) -> int:
        return len(self.exterior_branch_vertices)

    @property
    def terminal_paths(self) -> dict[int, int]:
        return {w: len(ls) for w, ls in self.terminal_leaves.items()}


def tree_stats(t: Graph) -> TreeStats:
    """Leaves, branch vertices and terminal leaves of a tree that is not a path.

    A leaf is terminal for a branch vertex strictly closer to it than every
    other branch vertex; a leaf equidistant from two of them belongs to neither.
    """
    if not is_tree(t):
        raise GraphError("tree_stats needs a tree")
    deg = t.degrees()
    branch = np.flatnonzero(deg >= 3).tolist()
    if not branch:
        raise GraphError("tree_stats is undefined for paths")
    leaves = np.flatnonzero(deg == 1).tolist()
    d = t.distances
    terminal: dict[int, list[int]] = {}
    for leaf in leaves:
        row = d[leaf, branch]
        closest = int(row.min())
        owners = [b for b, x in zip(branch, row) if x == closest]
        if len(owners) == 1:
            terminal.setdefault(owners[0], []).append(leaf)
    return TreeStats(
        frozenset(leaves),
        frozenset(branch),
        frozenset(terminal),
        {w: tuple(sorted(ls)) for w, ls in sorted(terminal.items())},
    )
