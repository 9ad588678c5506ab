from __future__ import annotations

import itertools

import numpy as np
import pytest

from nldim import closed_form as cf
from nldim import graph as G
from nldim import structure
from nldim.graph import GraphError
from nldim.solver import PairMode, all_min_bases, is_resolving, solve_exact

NET = G.Graph(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
H_TREE = G.Graph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])


def nonlocal_value(g):
    return solve_exact(g, PairMode.NON_ADJACENT).value


def test_tree_values():
    assert cf.dim_tree(G.path(10)) == 1
    assert cf.dim_tree(G.spider((1, 2, 1, 3))) == 3
    assert cf.dim_tree(H_TREE) == 2 == nonlocal_value(H_TREE)


@pytest.mark.parametrize("seed", range(30))
def test_tree_basis_resolves(seed):
    t = G.random_tree(15, seed=seed)
    basis = cf.tree_metric_basis(t)
    assert len(basis) == cf.dim_tree(t) == solve_exact(t, PairMode.ALL).value
    assert is_resolving(t, basis, PairMode.ALL)


def test_block_graph_examples():
    res = cf.dimnl_block_graph(NET)
    assert res.value == 2 == nonlocal_value(NET)
    two_k4 = G.Graph(7, [*itertools.combinations(range(4), 2), *itertools.combinations([3, 4, 5, 6], 2)])
    res = cf.dimnl_block_graph(two_k4)
    assert res.value == 1 and is_resolving(two_k4, res.witness, PairMode.NON_ADJACENT)
    assert cf.dimnl_block_graph(G.complete(5)).value == 0
    with pytest.raises(GraphError):
        cf.dimnl_block_graph(G.cycle(5))


@pytest.mark.parametrize("seed", range(20))
def test_block_graph_formula_on_trees(seed):
    t = G.random_tree(12, seed=seed)
    assert cf.dimnl_block_graph(t).value == cf.dim_tree(t)


def test_corona_examples():
    p3 = G.path(3)
    factor = nonlocal_value(G.join(G.complete(1), p3))
    assert cf.dimnl_corona(p3, p3) == 3 * factor == nonlocal_value(G.corona(p3, p3))
    assert cf.dimnl_corona(G.complete(1), G.cycle(4)) == 2
    k12 = G.complete_bipartite(1, 2)
    c4 = G.cycle(4)
    assert cf.dimnl_corona(c4, k12) == 4 * nonlocal_value(G.join(G.complete(1), k12))
    assert cf.dimnl_corona(c4, k12) == nonlocal_value(G.corona(c4, k12))
    basis = cf.corona_basis(c4, k12)
    assert is_resolving(G.corona(c4, k12), basis, PairMode.NON_ADJACENT)
    with pytest.raises(GraphError):
        cf.dimnl_corona(c4, G.complete(3))


def test_corona_complete_values():
    assert cf.corona_complete_value(G.complete_bipartite(3, 3), 2) == 4
    assert cf.corona_complete_bounds(G.complete_bipartite(3, 3), 2) == (4, 6)
    assert cf.corona_complete_value(G.path(5), 2) == 2
    assert cf.corona_complete_bounds(G.path(5), 2) == (1, 5)


def test_corona_with_k1_on_two_vertex_path():
    # stated as 2 (upper bound attained); the product is P_4, whose value is 1
    assert cf.corona_complete_value(G.path(2), 1) == nonlocal_value(G.path(4)) == 1


def test_wheel_value_examples():
    assert [cf.dimnl_wheel(n) for n in (4, 5, 6)] == [2, 2, 2]
    assert cf.dimnl_wheel(10) == 4
    assert cf.dim_wheel(7) == 3 and cf.dimnl_wheel(7) == 2
    with pytest.raises(GraphError):
        cf.dimnl_wheel(2)


def test_small_wheel_true_values():
    # W_{1,3} is K_4; the general statement lists 1 for it, the solver finds 0
    assert cf.dimnl_wheel(3) == 0 == nonlocal_value(G.wheel(3))
    for n in range(3, 7):
        w = G.wheel(n)
        assert cf.dimnl_wheel(n) == nonlocal_value(w)
        assert cf.dim_wheel(n) == solve_exact(w, PairMode.ALL).value
        assert cf.dimlocal_wheel(n) == solve_exact(w, PairMode.ADJACENT).value


@pytest.mark.parametrize("n,basis", [(10, (0, 5, 7, 9)), (12, (0, 5, 7, 10)), (13, (0, 5, 7, 10, 12))])
def test_wheel_basis_cases(n, basis):
    assert cf.wheel_basis(n) == basis


@pytest.mark.parametrize("n", range(7, 31))
def test_wheel_formula_and_basis(n):
    w = G.wheel(n)
    assert nonlocal_value(w) == cf.dimnl_wheel(n) == 2 * n // 5
    basis = cf.wheel_basis(n)
    assert len(basis) == 2 * n // 5 and is_resolving(w, basis, PairMode.NON_ADJACENT)
    assert cf.wheel_gap_check(n, basis).conditions_hold


@pytest.mark.parametrize("n", range(7, 21))
def test_wheel_companions(n):
    w = G.wheel(n)
    assert solve_exact(w, PairMode.ALL).value == cf.dim_wheel(n) == (2 * n + 2) // 5
    assert solve_exact(w, PairMode.ADJACENT).value == cf.dimlocal_wheel(n) == -(-n // 4)


def test_gap_check_examples():
    rep = cf.wheel_gap_check(10, (0, 5, 7, 9))
    assert rep.max_gap_ok and rep.single_large_gap and rep.large_gap_neighbours_ok and rep.resolving
    assert [gp.size for gp in rep.profile.gaps] == [4, 1, 1, 0]
    rep = cf.wheel_gap_check(12, (0, 1, 6, 7))
    assert not rep.single_large_gap and not rep.conditions_hold
    rep = cf.wheel_gap_check(10, (0, 2, 5, 7))
    assert rep.conditions_hold and rep.resolving


@pytest.mark.parametrize("n", range(7, 13))
def test_gap_conditions_imply_resolving(n):
    w = G.wheel(n)
    for k in range(2, 6):
        for xs in itertools.combinations(range(n), k):
            rep = cf.wheel_gap_check(n, xs)
            if rep.conditions_hold:
                assert rep.resolving, xs


@pytest.mark.parametrize("n", range(7, 14))
def test_minimum_bases_obey_gap_lemma(n):
    w = G.wheel(n)
    bases = all_min_bases(w, PairMode.NON_ADJACENT, limit=100_000)
    assert bases.complete
    for b in bases:
        assert n not in b
        assert cf.wheel_gap_check(n, b).conditions_hold
        norm = cf.remove_gap_of_three(n, b)
        assert len(norm) == len(b) and is_resolving(w, norm, PairMode.NON_ADJACENT)
        assert 3 not in [gp.size for gp in cf.wheel_gap_profile(n, norm).gaps]
        assert len(b) + cf.wheel_gap_capacity(len(b)) >= n


def test_bounds():
    assert cf.omega_upper_bound(G.complete(6)) == 0
    b = cf.beta_prime_upper_bound(G.random_tree(9, seed=1))
    assert b.applies
    b = cf.beta_prime_upper_bound(G.spider((2, 2, 1)))
    assert b.value == 2 == nonlocal_value(G.spider((2, 2, 1)))
    assert not cf.beta_prime_upper_bound(G.cycle(6)).applies
    assert cf.beta_prime_upper_bound(G.cycle(7)).applies


@pytest.mark.parametrize("s,t,value", [(1, 2, 1), (2, 3, 3), (4, 4, 6)])
def test_complete_bipartite(s, t, value):
    assert cf.dimnl_complete_bipartite(s, t) == value == nonlocal_value(G.complete_bipartite(s, t))
    assert cf.is_complete_bipartite(G.complete_bipartite(s, t)) == (min(s, t), max(s, t))


def test_subdivided_star_recognition():
    assert cf.is_subdivided_star(G.spider((2, 2, 1)))
    assert cf.is_subdivided_star(G.star(4))
    assert not cf.is_subdivided_star(G.spider((2, 2, 2)))
    assert not cf.is_subdivided_star(G.spider((3, 1, 1)))
    assert not cf.is_subdivided_star(H_TREE)


@pytest.mark.parametrize("seed", range(40))
def test_girth_bound_and_tree_equality(seed):
    rng = np.random.default_rng(seed)
    t = G.random_tree(int(rng.integers(4, 16)), seed=seed)
    bound = cf.beta_prime_upper_bound(t)
    value = nonlocal_value(t)
    assert value <= bound.value
    if not structure.is_path(t):
        assert (value == bound.value) == cf.is_subdivided_star(t)
