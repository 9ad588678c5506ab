"""Immutable simple undirected graphs on vertices ``0..n-1``."""

from __future__ import annotations

import heapq
import math
import threading
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from . import kernels
from .kernels import UNREACHABLE

MAX_ORDER = 512


class GraphError(ValueError):
    """Invalid graph input or parameters."""


class DisconnectedGraphError(GraphError):
    """Raised by operations that need a connected graph."""


class Graph:
    """Simple undirected graph with a lazily computed distance matrix.

    The adjacency matrix is read-only.  ``distances`` is computed on first
    access (once, under a lock) and is also read-only afterwards.
    """

    __slots__ = ("n", "_adj", "_dist", "_lock", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0 or n > MAX_ORDER:
            raise GraphError(f"order must be in 0..{MAX_ORDER}, got {n}")
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u, v] = adj[v, u] = True
        self._init(n, adj)

    def _init(self, n: int, adj: np.ndarray) -> None:
        adj.flags.writeable = False
        self.n = n
        self._adj = adj
        self._dist = None
        self._lock = threading.Lock()
        self._edges = None

    @classmethod
    def from_adjacency(cls, adj: np.ndarray) -> Graph:
        a = np.array(adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphError("adjacency must be a square matrix")
        if (a != a.T).any():
            raise GraphError("adjacency must be symmetric")
        if a.diagonal().any():
            raise GraphError("adjacency must have an empty diagonal")
        if a.shape[0] > MAX_ORDER:
            raise GraphError(f"order must be at most {MAX_ORDER}")
        g = cls.__new__(cls)
        g._init(a.shape[0], a)
        return g

    # -- basic structure ----------------------------------------------------

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @property
    def m(self) -> int:
        return int(self._adj.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        if self._edges is None:
            us, vs = np.nonzero(np.triu(self._adj, 1))
            self._edges = list(zip(us.tolist(), vs.tolist()))
        return list(self._edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def neighbors(self, u: int) -> list[int]:
        return np.flatnonzero(self._adj[u]).tolist()

    def degree(self, u: int) -> int:
        return int(self._adj[u].sum())

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1)

    def subgraph(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph, relabelled in the given vertex order."""
        idx = np.asarray(vertices, dtype=np.int64)
        return Graph.from_adjacency(self._adj[np.ix_(idx, idx)])

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    # -- distances ------------------------------------------------------------

    @property
    def distances(self) -> np.ndarray:
        """All-pairs hop distances (int32); ``UNREACHABLE`` (-1) across components."""
        if self._dist is None:
            with self._lock:
                if self._dist is None:
                    d = kernels.bfs_all_pairs(self._adj)
                    d.flags.writeable = False
                    self._dist = d
        return self._dist

    def distance(self, u: int, v: int) -> int:
        return int(self.distances[u, v])

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return bool((self.distances[0] != UNREACHABLE).all())

    def require_connected(self, what: str = "this operation") -> None:
        if not self.is_connected():
            raise DisconnectedGraphError(f"{what} requires a connected graph")

    # -- dunder ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and bool((self._adj == other._adj).all())

    def __hash__(self) -> int:
        return hash((self.n, np.packbits(self._adj).tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class MetricRepresentation:
    landmarks: tuple[int, ...]
    vector: tuple[int, ...]


def bfs_all_pairs(g: Graph) -> np.ndarray:
    return g.distances


def is_connected(g: Graph) -> bool:
    return g.is_connected()


def diameter(g: Graph) -> int:
    g.require_connected("diameter")
    if g.n == 0:
        return 0
    return int(g.distances.max())


def girth(g: Graph) -> float:
    """Length of a shortest cycle; ``math.inf`` for forests."""
    best = math.inf
    adj = [g.neighbors(u) for u in range(g.n)]
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = [s]
        for u in queue:
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def metric_representation(g: Graph, u: int, landmarks: Sequence[int]) -> MetricRepresentation:
    g.require_connected("metric representation")
    lm = tuple(int(x) for x in landmarks)
    return MetricRepresentation(lm, tuple(int(g.distances[u, x]) for x in lm))


# ---------------------------------------------------------------------------
# operations


def complement(g: Graph) -> Graph:
    a = ~g.adjacency
    np.fill_diagonal(a, False)
    return Graph.from_adjacency(a)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    a = np.zeros((g.n + h.n, g.n + h.n), dtype=bool)
    a[: g.n, : g.n] = g.adjacency
    a[g.n :, g.n :] = h.adjacency
    return Graph.from_adjacency(a)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between ``g`` and ``h``; ``g`` comes first."""
    a = disjoint_union(g, h).adjacency.copy()
    a[: g.n, g.n :] = True
    a[g.n :, : g.n] = True
    return Graph.from_adjacency(a)


def corona(g: Graph, h: Graph) -> Graph:
    """Corona product: one copy of ``h`` per vertex of ``g``, fully joined to it.

    Vertices ``0..n(g)-1`` are those of ``g``; copy ``i`` of ``h`` occupies
    ``n(g) + i*n(h) .. n(g) + (i+1)*n(h) - 1``.
    """
    g.require_connected("corona")
    ng, nh = g.n, h.n
    total = ng * (1 + nh)
    a = np.zeros((total, total), dtype=bool)
    a[:ng, :ng] = g.adjacency
    for i in range(ng):
        lo = ng + i * nh
        a[lo : lo + nh, lo : lo + nh] = h.adjacency
        a[i, lo : lo + nh] = True
        a[lo : lo + nh, i] = True
    return Graph.from_adjacency(a)


def subdivide(g: Graph, times: int | Sequence[int] = 1) -> Graph:
    """Replace each edge by a path with ``times`` inner vertices (per-edge counts allowed)."""
    edges = g.edges()
    counts = [times] * len(edges) if isinstance(times, int) else list(times)
    if len(counts) != len(edges):
        raise GraphError("one subdivision count per edge required")
    out: list[tuple[int, int]] = []
    nxt = g.n
    for (u, v), k in zip(edges, counts):
        if k < 0:
            raise GraphError("subdivision count must be nonnegative")
        chain = [u, *range(nxt, nxt + k), v]
        nxt += k
        out.extend(zip(chain, chain[1:]))
    return Graph(nxt, out)


# ---------------------------------------------------------------------------
# generators


def _positive(name: str, value: int, minimum: int = 1) -> int:
    if int(value) != value or value < minimum:
        raise GraphError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def empty(n: int) -> Graph:
    return Graph(_positive("n", n, 0))


def path(n: int) -> Graph:
    n = _positive("n", n)
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    n = _positive("n", n, 3)
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    n = _positive("n", n)
    a = ~np.eye(n, dtype=bool)
    return Graph.from_adjacency(a)


def complete_bipartite(s: int, t: int) -> Graph:
    s, t = _positive("s", s), _positive("t", t)
    return join(empty(s), empty(t))


def star(n: int) -> Graph:
    """K_{1,n}: centre 0, leaves 1..n."""
    return complete_bipartite(1, n)


def wheel(n: int) -> Graph:
    """W_{1,n}: rim ``0..n-1`` in cyclic order, hub ``n``."""
    n = _positive("n", n, 3)
    return Graph(n + 1, [(i, (i + 1) % n) for i in range(n)] + [(i, n) for i in range(n)])


def spider(legs: Sequence[int]) -> Graph:
    """Centre 0 with one pendant path per entry of ``legs`` (its length in edges)."""
    if not legs:
        raise GraphError("spider needs at least one leg")
    edges = []
    nxt = 1
    for length in legs:
        _positive("leg length", length)
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def petersen() -> Graph:
    """Outer 5-cycle 0..4, spokes i--i+5, inner pentagram on 5..9."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, edges)


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_tree(n: int, seed=None) -> Graph:
    """Uniform labelled tree from a random Prüfer sequence."""
    n = _positive("n", n)
    if n <= 2:
        return path(n)
    rng = _rng(seed)
    seq = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Graph(n, edges)


def random_block_graph(block_sizes: Sequence[int], seed=None) -> Graph:
    """Glue cliques of the given sizes into a tree-like structure.

    Each block after the first shares exactly one uniformly chosen existing
    vertex with the graph built so far, so the result is a connected block
    graph whose blocks are exactly the requested cliques.
    """
    if not block_sizes:
        raise GraphError("need at least one block")
    rng = _rng(seed)
    edges: list[tuple[int, int]] = []
    first = _positive("block size", block_sizes[0], 2)
    members = list(range(first))
    n = first
    edges += [(u, v) for i, u in enumerate(members) for v in members[i + 1 :]]
    for size in block_sizes[1:]:
        size = _positive("block size", size, 2)
        anchor = int(rng.integers(0, n))
        members = [anchor, *range(n, n + size - 1)]
        n += size - 1
        edges += [(u, v) for i, u in enumerate(members) for v in members[i + 1 :]]
    return Graph(n, edges)


def random_connected(n: int, p: float, seed=None) -> Graph:
    """Random spanning tree plus every other pair independently with probability ``p``."""
    n = _positive("n", n)
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"p must be in [0, 1], got {p}")
    rng = _rng(seed)
    t = random_tree(n, rng)
    a = t.adjacency.copy()
    extra = np.triu(rng.random((n, n)) < p, 1)
    a |= extra | extra.T
    np.fill_diagonal(a, False)
    return Graph.from_adjacency(a)


def random_bipartite_connected(n: int, p: float, seed=None) -> Graph:
    """Random tree plus cross-edges between its colour classes with probability ``p``."""
    rng = _rng(seed)
    t = random_tree(n, rng)
    side = t.distances[0] % 2
    a = t.adjacency.copy()
    cross = np.triu((side[:, None] != side[None, :]) & (rng.random((n, n)) < p), 1)
    a |= cross | cross.T
    return Graph.from_adjacency(a)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple = ()
    seed: int | None = None


_FAMILIES = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "star": star,
    "wheel": wheel,
    "petersen": petersen,
    "empty": empty,
}


def family_names() -> list[str]:
    return sorted([*_FAMILIES, "spider", "random_tree", "random_block_graph", "random_connected"])


def generate(spec: FamilySpec) -> Graph:
    name, params = spec.name, tuple(spec.params)
    try:
        if name in _FAMILIES:
            return _FAMILIES[name](*params)
        if name == "spider":
            return spider(params)
        if name == "random_tree":
            return random_tree(*params, seed=spec.seed)
        if name == "random_block_graph":
            return random_block_graph(params, seed=spec.seed)
        if name == "random_connected":
            return random_connected(*params, seed=spec.seed)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {name}: {params}") from exc
    raise GraphError(f"unknown family {name!r}; choose from {', '.join(family_names())}")
