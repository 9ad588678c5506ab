from __future__ import annotations

import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from nldim import graph as G
from nldim.graph import Graph, GraphError

from .conftest import connected_graphs, graphs


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_path_distance():
    assert G.path(3).distance(0, 2) == 2


def test_complete_distances():
    d = G.complete(4).distances
    assert (d[~np.eye(4, dtype=bool)] == 1).all()


def test_wheel_distances():
    w = G.wheel(7)
    assert all(w.distance(7, i) == 1 for i in range(7))
    assert w.distance(0, 3) == 2
    assert G.diameter(w) == 2


def test_connectivity_examples():
    assert G.complete(1).is_connected()
    assert not Graph(4, [(0, 1), (2, 3)]).is_connected()
    assert G.petersen().is_connected()


def test_unreachable_marked():
    d = Graph(4, [(0, 1), (2, 3)]).distances
    assert d[0, 2] == -1 and d[0, 1] == 1


def test_require_connected_raises():
    with pytest.raises(G.DisconnectedGraphError):
        Graph(3, [(0, 1)]).require_connected()


def test_invalid_edges_rejected():
    with pytest.raises(GraphError):
        Graph(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 3)])


def test_complement_examples():
    assert G.complement(G.complete(5)) == G.empty(5)
    c5 = G.complement(G.cycle(5))
    assert nx.is_isomorphic(to_nx(c5), to_nx(G.cycle(5)))


def test_join_examples():
    assert G.join(G.complete(1), G.cycle(7)) == G.wheel(7).subgraph([7, *range(7)])
    assert G.join(G.complete(1), G.complete(4)) == G.complete(5)
    assert G.join(G.empty(2), G.empty(3)) == G.complete_bipartite(2, 3)


def test_corona_examples():
    h = G.path(3)
    assert G.corona(G.complete(1), h) == G.join(G.complete(1), h)
    p2k1 = G.corona(G.path(2), G.complete(1))
    assert p2k1.n == 4 and p2k1.m == 3 and sorted(p2k1.degrees().tolist()) == [1, 1, 2, 2]
    assert G.corona(G.path(3), G.cycle(4)).n == 15


def test_generator_shapes():
    w = G.wheel(4)
    assert w.n == 5 and w.degree(4) == 4
    assert G.complete_bipartite(2, 3).m == 6
    t = G.random_tree(10, seed=1)
    assert t.is_connected() and t.m == 9


def test_girth_and_diameter():
    assert G.girth(G.random_tree(12, seed=3)) == math.inf
    assert G.girth(G.petersen()) == 5
    assert G.girth(G.cycle(7)) == 7


def test_petersen_matches_networkx():
    assert nx.is_isomorphic(to_nx(G.petersen()), nx.petersen_graph())


def test_subdivide_counts():
    g = G.subdivide(G.cycle(3), [1, 2, 0])
    assert g.n == 6 and g.m == 6 and G.girth(g) == 6


def test_spider_legs():
    s = G.spider((2, 2, 1))
    assert s.n == 6 and s.degree(0) == 3


def test_family_generate():
    assert G.generate(G.FamilySpec("wheel", (5,))) == G.wheel(5)
    with pytest.raises(GraphError):
        G.generate(G.FamilySpec("nonsense", ()))


@given(graphs())
def test_complement_involution(g):
    assert G.complement(G.complement(g)) == g


@given(graphs(max_n=6), graphs(max_n=6))
def test_join_cross_pairs_adjacent(g, h):
    j = G.join(g, h)
    assert j.n == g.n + h.n
    assert j.adjacency[: g.n, g.n :].all()


@given(connected_graphs(max_n=5), connected_graphs(max_n=4))
def test_corona_distance_factoring(g, h):
    c = G.corona(g, h)
    d = c.distances
    for i in range(g.n):
        copy = list(range(g.n + i * h.n, g.n + (i + 1) * h.n))
        outside = [w for w in range(c.n) if w not in copy]
        for u in copy:
            assert (d[u, outside] == d[copy[0], outside]).all()


@given(graphs(max_n=12))
def test_distances_match_networkx(g):
    lengths = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    d = g.distances
    for u in range(g.n):
        for v in range(g.n):
            assert d[u, v] == lengths[u].get(v, -1)


@pytest.mark.parametrize("seed", range(10))
def test_distance_matrix_is_a_metric(seed):
    rng = np.random.default_rng(seed)
    g = G.random_connected(int(rng.integers(2, 31)), 0.1, seed=seed)
    d = g.distances.astype(np.int64)
    assert (d == d.T).all() and (np.diag(d) == 0).all()
    assert (d[:, :, None] <= d[:, None, :] + d.T[None, :, :]).all()


def test_generators_deterministic():
    assert G.random_tree(20, seed=5) == G.random_tree(20, seed=5)
    assert G.random_connected(15, 0.3, seed=5) == G.random_connected(15, 0.3, seed=5)
    assert G.random_block_graph([3, 2, 4], seed=2) == G.random_block_graph([3, 2, 4], seed=2)


def test_metric_representation():
    rep = G.metric_representation(G.path(5), 3, [0, 4])
    assert tuple(rep.vector) == (3, 1)
