"""Exact nonlocal, local and classical metric dimension of small graphs."""

from __future__ import annotations

from ._accel import backend
from .closed_form import (
    dim_tree,
    dim_wheel,
    dimlocal_wheel,
    dimnl_block_graph,
    dimnl_corona,
    dimnl_wheel,
    wheel_basis,
)
from .embed import embed_supergraph, verify_embedding
from .enumeration import enumerate_connected
from .graph import DisconnectedGraphError, Graph, GraphError
from .io import emit_edgelist, emit_graph6, parse_edgelist, parse_graph6
from .solver import (
    BudgetExceededError,
    PairMode,
    SolveResult,
    all_min_bases,
    dim,
    dim_local,
    dim_nonlocal,
    is_resolving,
    solve_exact,
)
from .verify import VerificationReport, verify

__all__ = [
    "BudgetExceededError",
    "DisconnectedGraphError",
    "Graph",
    "GraphError",
    "PairMode",
    "SolveResult",
    "VerificationReport",
    "all_min_bases",
    "backend",
    "dim",
    "dim_local",
    "dim_nonlocal",
    "dim_tree",
    "dim_wheel",
    "dimlocal_wheel",
    "dimnl_block_graph",
    "dimnl_corona",
    "dimnl_wheel",
    "embed_supergraph",
    "emit_edgelist",
    "emit_graph6",
    "enumerate_connected",
    "is_resolving",
    "parse_edgelist",
    "parse_graph6",
    "solve_exact",
    "verify",
    "verify_embedding",
    "wheel_basis",
]
