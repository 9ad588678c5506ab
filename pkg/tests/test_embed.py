from __future__ import annotations

import math

import numpy as np
import pytest

from nldim import graph as G
from nldim import structure
from nldim.embed import anchor_bit, bits_needed, embed_supergraph, verify_embedding


def test_bits_needed():
    assert [bits_needed(s) for s in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]
    assert all(bits_needed(s) == math.ceil(math.log2(s)) for s in range(1, 200))


def test_anchor_bits_msb_first():
    assert [anchor_bit(4, j, 3) for j in range(3)] == [1, 0, 0]
    assert [anchor_bit(1, j, 3) for j in range(3)] == [0, 0, 1]


def test_complete_graph_is_its_own_embedding():
    r = embed_supergraph(G.complete(5))
    assert r.H == G.complete(5) and r.anchor == () and r.k == 0
    rep = verify_embedding(G.complete(5), r)
    assert rep.passed and rep.solved_value == 0 and rep.diameter == 1


def test_petersen():
    g = G.petersen()
    r = embed_supergraph(g)
    assert r.s == 5 and r.k == 3 and r.H.n == 13
    assert all(len(c) == 2 for c in r.classes)
    rep = verify_embedding(g, r)
    assert rep.passed and rep.solved_value <= 3 and rep.diameter <= 4


def test_four_cycle():
    g = G.cycle(4)
    r = embed_supergraph(g)
    assert r.s == 2 and r.k == 1 and r.H.n == 5
    (x,) = r.anchor
    assert set(r.H.neighbors(x)) == set(r.classes[0])


def test_six_cycle_tight_case():
    g = G.cycle(6)
    r = embed_supergraph(g)
    assert r.s == 3 and r.k == 2
    rep = verify_embedding(g, r)
    assert rep.tight_case and rep.diameter <= 3 and rep.passed


def test_two_classes_add_one_anchor():
    g = G.Graph(4, [(0, 1), (2, 3), (1, 2)])
    r = embed_supergraph(g)
    assert r.s == 2 and len(r.anchor) == 1


def test_broken_embedding_is_reported():
    g = G.cycle(6)
    r = embed_supergraph(g)
    a = r.H.adjacency.copy()
    x = r.anchor[0]
    v = r.classes[0][0]
    a[x, v] = a[v, x] = not a[x, v]
    broken = type(r)(G.Graph.from_adjacency(a), r.embedding, r.classes, r.anchor, r.s, r.k)
    rep = verify_embedding(g, broken)
    assert not rep.passed and not rep.anchor_rule_ok


@pytest.mark.parametrize("seed", range(200))
def test_random_graphs(seed):
    rng = np.random.default_rng(seed)
    g = G.random_connected(int(rng.integers(1, 13)), float(rng.uniform(0.0, 0.8)), seed=seed)
    r = embed_supergraph(g)
    rep = verify_embedding(g, r)
    assert rep.passed, rep.violations
    assert r.s == structure.chromatic_number(G.complement(g)).number
    covered = sorted(v for c in r.classes for v in c)
    assert covered == list(range(g.n))
    if r.s >= 2:
        assert rep.solved_value <= r.k
