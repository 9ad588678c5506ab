"""JIT switch shared by the kernel modules.

Set ``NLDIM_NO_JIT=1`` before import to run every kernel as plain Python/numpy.
"""

from __future__ import annotations

import os

USE_NUMBA = os.environ.get("NLDIM_NO_JIT", "0").lower() not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover
        USE_NUMBA = False


def jit(fn):
    """``numba.njit(cache=True)`` when enabled, identity otherwise."""
    if USE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
