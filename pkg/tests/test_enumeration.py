from __future__ import annotations

from math import comb

import networkx as nx
import pytest

from nldim.enumeration import certificate, enumerate_connected, random_labeled_connected
from nldim.graph import GraphError
from nldim.verify import instance_rng


def connected_labeled_count(n: int) -> int:
    """Inclusion-exclusion: all graphs minus those whose vertex 1 sits in a proper component."""
    c = {1: 1}
    for m in range(2, n + 1):
        total = 2 ** comb(m, 2)
        disconnected = sum(comb(m - 1, k - 1) * c[k] * 2 ** comb(m - k, 2) for k in range(1, m))
        c[m] = total - disconnected
    return c[n]


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 4), (4, 38)])
def test_small_counts(n, expected):
    assert sum(1 for _ in enumerate_connected(n)) == expected


@pytest.mark.parametrize("n", range(1, 6))
def test_counts_match_inclusion_exclusion(n):
    assert sum(1 for _ in enumerate_connected(n)) == connected_labeled_count(n)


def test_each_labeled_graph_once():
    seen = [g.edges() for g in enumerate_connected(5)]
    assert len(seen) == len(set(map(tuple, seen)))


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112), (7, 853)])
def test_canonical_counts(n, expected):
    reps = list(enumerate_connected(n, canonical=True))
    assert len(reps) == expected
    assert all(g.is_connected() for g in reps)


def test_canonical_reps_pairwise_non_isomorphic():
    reps = [nx.Graph(g.edges()) for g in enumerate_connected(5, canonical=True)]
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            assert not nx.is_isomorphic(reps[i], reps[j])


def test_certificate_is_invariant_under_relabelling():
    import numpy as np

    rng = np.random.default_rng(0)
    for g in enumerate_connected(5, canonical=True):
        perm = rng.permutation(g.n)
        h = g.subgraph(perm.tolist())
        assert certificate(h) == certificate(g)


@pytest.mark.parametrize("n", [0, 9])
def test_order_out_of_range(n):
    with pytest.raises(GraphError):
        enumerate_connected(n)


def test_random_labeled_connected():
    g = random_labeled_connected(7, instance_rng(1, 2))
    assert g.n == 7 and g.is_connected()
    assert g == random_labeled_connected(7, instance_rng(1, 2))
