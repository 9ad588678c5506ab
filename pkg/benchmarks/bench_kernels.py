"""Time the numba kernels against the interpreted/numpy fallback.

Each backend runs in its own interpreter because ``NLDIM_NO_JIT`` is read at
import time.  Usage::

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

CASES = {
    "bfs n=300": "bfs",
    "solve W_{1,20} nonlocal": "wheel20",
    "solve W_{1,30} nonlocal": "wheel30",
    "solve random n=14 (x20, 3 modes)": "random14",
}
QUICK = {"bfs n=300", "solve W_{1,20} nonlocal", "solve random n=14 (x20, 3 modes)"}


def _workload(name: str):
    from nldim import graph as G
    from nldim.graph import bfs_all_pairs
    from nldim.solver import PairMode, solve_exact

    if name == "bfs":
        g = G.random_connected(300, 0.01, seed=1)
        return lambda: bfs_all_pairs(G.Graph.from_adjacency(g.adjacency))
    if name in ("wheel20", "wheel30"):
        w = G.wheel(int(name[-2:]))
        return lambda: solve_exact(w, PairMode.NON_ADJACENT)
    graphs = [G.random_connected(14, 0.3, seed=s) for s in range(20)]
    return lambda: [solve_exact(g, m) for g in graphs for m in PairMode]


def worker(cases: list[str], repeat: int) -> None:
    from nldim import backend

    out = {"backend": backend(), "times": {}}
    for label in cases:
        fn = _workload(CASES[label])
        fn()  # warm-up (includes JIT compilation / cache load)
        best = float("inf")
        for _ in range(repeat):
            t = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t)
        out["times"][label] = best
    print(json.dumps(out))


def run_backend(no_jit: bool, cases: list[str], repeat: int) -> dict:
    env = dict(os.environ, NLDIM_NO_JIT="1" if no_jit else "0")
    cmd = [sys.executable, __file__, "--worker", "--repeat", str(repeat), "--cases", json.dumps(cases)]
    res = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main(argv: list[str] | None = None) -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--quick", action="store_true", help="skip the slowest fallback workload")
    p.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--cases", help=argparse.SUPPRESS)
    args = p.parse_args(argv)

    if args.worker:
        worker(json.loads(args.cases), args.repeat)
        return 0

    cases = [c for c in CASES if not args.quick or c in QUICK]
    jit = run_backend(False, cases, args.repeat)
    fallback = run_backend(True, cases, args.repeat)
    print(f"{'workload':36s} {jit['backend']:>10s} {fallback['backend']:>10s} {'speedup':>8s}")
    for label in cases:
        a, b = jit["times"][label], fallback["times"][label]
        print(f"{label:36s} {a * 1e3:9.2f}ms {b * 1e3:9.2f}ms {b / a:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
