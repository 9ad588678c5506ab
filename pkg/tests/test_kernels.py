"""The compiled kernels and their interpreted fallback must agree."""

from __future__ import annotations

import os
import subprocess
import sys
import textwrap

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nldim import kernels
from nldim import graph as G
from nldim.solver import PairMode, all_min_bases, build_instance, solve_exact

from .conftest import graphs


def _py(fn):
    return getattr(fn, "py_func", fn)


@given(st.integers(0, 2**64 - 1))
def test_popcount_and_lowbit(x):
    v = np.uint64(x)
    assert kernels.popcount(v) == bin(x).count("1")
    with np.errstate(over="ignore"):  # SWAR relies on wrapping multiplication
        assert _py(kernels._popcount_swar)(v) == bin(x).count("1")
    if x:
        assert kernels.lowbit(v) == (x & -x).bit_length() - 1
        assert kernels._lowbit_py(v) == (x & -x).bit_length() - 1


def test_pack_rows_bit_layout():
    table = np.zeros((2, 70), dtype=bool)
    table[0, [0, 63, 64, 69]] = True
    packed = kernels.pack_rows(table)
    assert packed.shape == (2, 2) and packed.dtype == np.uint64
    assert int(packed[0, 0]) == (1 << 63) | 1 and int(packed[0, 1]) == (1 << 0) | (1 << 5)
    assert int(kernels.full_mask(70)[1]) == (1 << 6) - 1


@given(graphs(max_n=14))
def test_bfs_variants_agree(g):
    adj = g.adjacency
    indptr, indices = kernels.to_csr(adj)
    a = kernels.bfs_all_pairs_loop(indptr, indices, g.n)
    b = _py(kernels.bfs_all_pairs_loop)(indptr, indices, g.n)
    c = kernels.bfs_all_pairs_matmul(adj)
    assert (a == b).all() and (a == c).all()


@pytest.mark.parametrize("seed", range(15))
def test_interpreted_search_matches_compiled(seed):
    g = G.random_connected(9, 0.3, seed=seed)
    for mode in PairMode:
        inst = build_instance(g, mode)
        if inst.num_pairs == 0:
            continue
        cover, cand, full = inst.packed()
        init = np.ones(g.n, dtype=np.bool_)
        args = (cover, cand, full, g.n, init, -1, 0, 10**7)
        fast = kernels.cover_search(*args)
        slow = _py(kernels.cover_search)(*args)
        assert fast[0] == slow[0] == kernels.STATUS_OK
        assert fast[2] == slow[2] == solve_exact(g, mode).value


def test_fallback_process_end_to_end():
    script = textwrap.dedent(
        """
        from nldim import backend, graph as G
        from nldim.solver import PairMode, solve_exact, all_min_bases
        assert backend() == "numpy", backend()
        print(solve_exact(G.wheel(13)).value, solve_exact(G.petersen(), PairMode.ALL).value,
              len(all_min_bases(G.cycle(6))), G.diameter(G.petersen()))
        """
    )
    env = dict(os.environ, NLDIM_NO_JIT="1")
    out = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == [
        str(solve_exact(G.wheel(13)).value),
        str(solve_exact(G.petersen(), PairMode.ALL).value),
        str(len(all_min_bases(G.cycle(6)))),
        "2",
    ]
