"""Hot numeric kernels.

Every kernel here is written in the numba-compatible subset of Python/numpy.
With JIT enabled (the default) they are compiled by ``numba.njit``; with
``NLDIM_NO_JIT=1`` the same source runs interpreted, and the all-pairs BFS
switches to a vectorised frontier-matmul formulation instead.

Bitsets are ``uint64`` word arrays, bit ``i`` of the set living in word
``i >> 6`` at position ``i & 63``.
"""

from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, jit

UNREACHABLE = -1

# search status codes returned by cover_search
STATUS_OK = 0
STATUS_BUDGET = 1
STATUS_LIMIT = 2


# ---------------------------------------------------------------------------
# bit helpers


def _popcount_swar(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


def _lowbit_swar(x):
    # index of the lowest set bit; x != 0
    t = x & (~x + np.uint64(1))
    return popcount(t - np.uint64(1))


def _popcount_py(x):
    return int(x).bit_count()


def _lowbit_py(x):
    x = int(x)
    return (x & -x).bit_length() - 1


if USE_NUMBA:
    popcount = jit(_popcount_swar)
    lowbit = jit(_lowbit_swar)
else:
    popcount = _popcount_py
    lowbit = _lowbit_py


def words_for(nbits: int) -> int:
    return max(1, (nbits + 63) // 64)


def pack_rows(table: np.ndarray) -> np.ndarray:
    """Pack a boolean ``(rows, bits)`` matrix into ``(rows, words)`` uint64."""
    rows, bits = table.shape
    nwords = words_for(bits)
    padded = np.zeros((rows, nwords * 64), dtype=bool)
    padded[:, :bits] = table
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False).reshape(rows, nwords)


def full_mask(nbits: int) -> np.ndarray:
    return pack_rows(np.ones((1, nbits), dtype=bool))[0]


# ---------------------------------------------------------------------------
# all-pairs shortest paths


@jit
def bfs_all_pairs_loop(indptr, indices, n):
    """BFS from every source over a CSR adjacency; -1 marks unreachable."""
    dist = np.full((n, n), -1, dtype=np.int32)
    queue = np.empty(max(n, 1), dtype=np.int32)
    for s in range(n):
        dist[s, s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[s, u]
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[s, w] < 0:
                    dist[s, w] = du + 1
                    queue[tail] = w
                    tail += 1
    return dist


def bfs_all_pairs_matmul(adj: np.ndarray) -> np.ndarray:
    """Level-synchronous BFS from all sources at once via boolean matmul."""
    n = adj.shape[0]
    dist = np.full((n, n), UNREACHABLE, dtype=np.int32)
    np.fill_diagonal(dist, 0)
    reached = np.eye(n, dtype=bool)
    frontier = reached.copy()
    a = adj.astype(np.int32)
    level = 0
    while frontier.any():
        level += 1
        nxt = ((frontier.astype(np.int32) @ a) > 0) & ~reached
        dist[nxt] = level
        reached |= nxt
        frontier = nxt
    return dist


def to_csr(adj: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    rows, cols = np.nonzero(adj)
    indptr = np.zeros(adj.shape[0] + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=adj.shape[0]), out=indptr[1:])
    return indptr, cols.astype(np.int32)


def bfs_all_pairs(adj: np.ndarray) -> np.ndarray:
    if USE_NUMBA:
        indptr, indices = to_csr(adj)
        return bfs_all_pairs_loop(indptr, indices, adj.shape[0])
    return bfs_all_pairs_matmul(adj)


# ---------------------------------------------------------------------------
# exact set cover


@jit
def _expand(d, U, excl, cover, cand, best, cand_list, lbs, counts, upairs, order, hist, used, gains):
    """Prepare branching at depth ``d``.

    Returns -1 when nothing is left to cover, 0 when the node is pruned or
    infeasible, otherwise the number of candidate vertices written to
    ``cand_list[d]``.
    """
    n = cover.shape[0]
    pw = cover.shape[1]
    vw = cand.shape[1]

    nu = 0
    for w in range(pw):
        x = U[d, w]
        while x != np.uint64(0):
            b = lowbit(x)
            x = x & (x - np.uint64(1))
            upairs[nu] = w * 64 + b
            nu += 1
    if nu == 0:
        return -1

    # candidate counts; branch pair = fewest candidates, lowest index on ties
    pmin = -1
    cmin = n + 1
    cmax = 0
    for i in range(nu):
        p = upairs[i]
        c = 0
        for k in range(vw):
            c += popcount(cand[p, k] & ~excl[k])
        if c == 0:
            return 0
        counts[i] = c
        if c < cmin:
            cmin = c
            pmin = p
        if c > cmax:
            cmax = c

    # greedy packing of pairs with pairwise disjoint candidate sets
    for c in range(cmax + 2):
        hist[c] = 0
    for i in range(nu):
        hist[counts[i] + 1] += 1
    for c in range(1, cmax + 2):
        hist[c] += hist[c - 1]
    for i in range(nu):
        c = counts[i]
        order[hist[c]] = i
        hist[c] += 1
    for k in range(vw):
        used[k] = np.uint64(0)
    lb = 0
    for j in range(nu):
        p = upairs[order[j]]
        clash = False
        for k in range(vw):
            if (cand[p, k] & ~excl[k]) & used[k] != np.uint64(0):
                clash = True
                break
        if not clash:
            lb += 1
            for k in range(vw):
                used[k] = used[k] | (cand[p, k] & ~excl[k])
    if d + lb >= best:
        return 0

    # coverage bound: fewest vertices whose gains could sum to the uncovered count
    for v in range(n):
        if (excl[v >> 6] >> np.uint64(v & 63)) & np.uint64(1):
            gains[v] = 0
        else:
            g = 0
            for w in range(pw):
                g += popcount(cover[v, w] & U[d, w])
            gains[v] = g
    srt = np.sort(gains)
    acc = 0
    lb2 = 0
    for i in range(n - 1, -1, -1):
        if acc >= nu:
            break
        acc += srt[i]
        lb2 += 1
    if acc < nu:
        return 0
    if lb2 > lb:
        lb = lb2
    if d + lb >= best:
        return 0
    lbs[d] = lb

    cnt = 0
    for k in range(vw):
        x = cand[pmin, k] & ~excl[k]
        while x != np.uint64(0):
            b = lowbit(x)
            x = x & (x - np.uint64(1))
            cand_list[d, cnt] = k * 64 + b
            cnt += 1
    return cnt


@jit
def cover_search(cover, cand, full, ub, best_init, target, max_solutions, budget):
    """Branch and bound over the set-cover view of resolving sets.

    ``cover[v]`` is the pair-bitset vertex ``v`` distinguishes and ``cand[p]``
    the vertex-bitset of distinguishers of pair ``p``.  With ``target < 0`` the
    search minimises, starting from the incumbent ``best_init`` of size ``ub``.
    With ``target >= 0`` it enumerates every cover of exactly that size, up to
    ``max_solutions``.

    Branching picks the uncovered pair with fewest live distinguishers and tries
    them in ascending vertex order, excluding earlier siblings in later branches,
    so every minimal cover is reached along exactly one path.
    """
    n = cover.shape[0]
    pw = cover.shape[1]
    npairs = cand.shape[0]
    vw = cand.shape[1]
    maxd = n + 1

    U = np.zeros((maxd + 1, pw), dtype=np.uint64)
    for w in range(pw):
        U[0, w] = full[w]
    excl = np.zeros(vw, dtype=np.uint64)
    cand_list = np.zeros((maxd + 1, max(n, 1)), dtype=np.int32)
    cand_cnt = np.zeros(maxd + 1, dtype=np.int64)
    cand_pos = np.zeros(maxd + 1, dtype=np.int64)
    lbs = np.zeros(maxd + 1, dtype=np.int64)
    chosen = np.zeros(maxd + 1, dtype=np.int32)
    counts = np.zeros(max(npairs, 1), dtype=np.int64)
    upairs = np.zeros(max(npairs, 1), dtype=np.int64)
    order = np.zeros(max(npairs, 1), dtype=np.int64)
    hist = np.zeros(n + 3, dtype=np.int64)
    used = np.zeros(vw, dtype=np.uint64)
    gains = np.zeros(max(n, 1), dtype=np.int64)

    optimize = target < 0
    best = ub if optimize else target + 1
    best_set = best_init.copy()
    sols = np.zeros((max(max_solutions, 1), max(n, 1)), dtype=np.bool_)
    nsol = 0
    status = 0
    nodes = 0

    r = _expand(0, U, excl, cover, cand, best, cand_list, lbs, counts, upairs, order, hist, used, gains)
    if r == -1:
        if optimize:
            best = 0
            best_set[:] = False
        elif target == 0:
            nsol = 1
        cand_cnt[0] = 0
    else:
        cand_cnt[0] = r

    d = 0
    while d >= 0:
        pos = cand_pos[d]
        if pos < cand_cnt[d] and d + lbs[d] < best:
            if pos > 0:
                u = cand_list[d, pos - 1]
                excl[u >> 6] = excl[u >> 6] | (np.uint64(1) << np.uint64(u & 63))
            v = cand_list[d, pos]
            cand_pos[d] = pos + 1
            chosen[d] = v
            for w in range(pw):
                U[d + 1, w] = U[d, w] & ~cover[v, w]
            nodes += 1
            if nodes > budget:
                status = 1
                break
            d += 1
            cand_pos[d] = 0
            lbs[d] = 0
            r = _expand(d, U, excl, cover, cand, best, cand_list, lbs, counts, upairs, order, hist, used, gains)
            if r == -1:
                if optimize:
                    if d < best:
                        best = d
                        best_set[:] = False
                        for i in range(d):
                            best_set[chosen[i]] = True
                elif d == target:
                    if nsol >= max_solutions:
                        status = 2
                        break
                    for i in range(d):
                        sols[nsol, chosen[i]] = True
                    nsol += 1
                cand_cnt[d] = 0
            else:
                cand_cnt[d] = r
        else:
            for i in range(cand_pos[d] - 1):
                u = cand_list[d, i]
                excl[u >> 6] = excl[u >> 6] & ~(np.uint64(1) << np.uint64(u & 63))
            d -= 1

    if not optimize:
        best = target
    return status, nodes, best, best_set, sols[:nsol], nsol
