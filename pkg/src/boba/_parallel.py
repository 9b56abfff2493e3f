"""Compiled inner loops and thread-count plumbing.

All hot loops live here behind plain-array signatures so the rest of the
package stays numpy-level.  The thread environment defaults are set before
numba is first imported; callers can raise them via ``NUMBA_NUM_THREADS``.
"""

import os

os.environ.setdefault("NUMBA_NUM_THREADS", "8")
os.environ.setdefault("NUMBA_THREADING_LAYER", "omp")

import numba  # noqa: E402
import numpy as np  # noqa: E402
from numba import njit, prange  # noqa: E402

__all__ = [
    "RANK_UNSET",
    "clamp_threads",
    "run_racy_first_hit",
    "scatter_rows",
    "first_hit_sequential",
    "first_hit_order_sequential",
    "first_hit_chunked",
    "first_hit_racy",
    "compact_ranks",
    "lcd_attach",
    "count_triangles_sorted",
]

RANK_UNSET = np.iinfo(np.int64).max

# the limit set_num_threads enforces is frozen when numba first loads
_THREAD_LIMIT = numba.config.NUMBA_NUM_THREADS


def clamp_threads(k: int | None) -> int:
    """Clamp a requested thread count to what the runtime allows."""
    if k is None:
        return min(numba.get_num_threads(), _THREAD_LIMIT)
    return max(1, min(int(k), _THREAD_LIMIT))


def run_racy_first_hit(I, J, n, threads: int):
    """Run the racy phase-1 kernel at a given thread count, restoring the
    previous count afterwards."""
    previous = numba.get_num_threads()
    numba.set_num_threads(clamp_threads(threads))
    try:
        return first_hit_racy(I, J, n)
    finally:
        numba.set_num_threads(previous)


@njit(cache=True)
def _scatter_rows_unweighted(I, J, offsets):
    m = I.shape[0]
    n = offsets.shape[0] - 1
    cursor = offsets[:n].copy()
    indices = np.empty(m, dtype=np.int64)
    for e in range(m):
        v = I[e]
        indices[cursor[v]] = J[e]
        cursor[v] += 1
    return indices


@njit(cache=True)
def _scatter_rows_weighted(I, J, W, offsets):
    m = I.shape[0]
    n = offsets.shape[0] - 1
    cursor = offsets[:n].copy()
    indices = np.empty(m, dtype=np.int64)
    weights = np.empty(m, dtype=np.float64)
    for e in range(m):
        v = I[e]
        k = cursor[v]
        indices[k] = J[e]
        weights[k] = W[e]
        cursor[v] = k + 1
    return indices, weights


def scatter_rows(I, J, weights, offsets):
    """Stable counting-sort scatter of destinations (and weights) into rows."""
    if weights is None:
        return _scatter_rows_unweighted(I, J, offsets), None
    return _scatter_rows_weighted(I, J, weights, offsets)


@njit(cache=True)
def first_hit_sequential(I, J, n):
    """Exact first-occurrence rank of each vertex in the flattened edge list.

    Rank i < m refers to I[i]; rank m + i refers to J[i].  Vertices that
    never appear keep RANK_UNSET.
    """
    m = I.shape[0]
    r = np.full(n, RANK_UNSET, dtype=np.int64)
    for i in range(m):
        v = I[i]
        if r[v] == RANK_UNSET:
            r[v] = i
    for i in range(m):
        v = J[i]
        if r[v] == RANK_UNSET:
            r[v] = m + i
    return r


@njit(cache=True)
def first_hit_order_sequential(I, J, n):
    """Single fused pass: first-occurrence ranks plus the vertices in the
    order they were first seen, isolated vertices appended ascending."""
    m = I.shape[0]
    r = np.full(n, RANK_UNSET, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    k = 0
    for i in range(m):
        v = I[i]
        if r[v] == RANK_UNSET:
            r[v] = i
            order[k] = v
            k += 1
    if k < n:
        for i in range(m):
            v = J[i]
            if r[v] == RANK_UNSET:
                r[v] = m + i
                order[k] = v
                k += 1
    for v in range(n):
        if r[v] == RANK_UNSET:
            order[k] = v
            k += 1
    return r, order


@njit(cache=True, parallel=True)
def first_hit_chunked(I, J, n, nchunks):
    """Chunk-local guarded minimum, merged exactly.

    Equivalent to an atomic-min reduction over the data-parallel loop: the
    result is the exact minimum rank per vertex regardless of schedule.
    """
    m = I.shape[0]
    total = 2 * m
    local = np.full((nchunks, n), RANK_UNSET, dtype=np.int64)
    step = (total + nchunks - 1) // nchunks
    for c in prange(nchunks):
        lo = c * step
        hi = min(lo + step, total)
        for i in range(lo, hi):
            v = I[i] if i < m else J[i - m]
            if i < local[c, v]:
                local[c, v] = i
    r = local[0].copy()
    for c in range(1, nchunks):
        for v in range(n):
            if local[c, v] < r[v]:
                r[v] = local[c, v]
    return r


@njit(cache=True, parallel=True)
def first_hit_racy(I, J, n):
    """Guarded but unsynchronized rank writes; racy updates may lose the
    minimum, but every written rank still names a position holding v."""
    m = I.shape[0]
    r = np.full(n, RANK_UNSET, dtype=np.int64)
    for i in prange(2 * m):
        v = I[i] if i < m else J[i - m]
        if i < r[v]:
            r[v] = i
    return r


@njit(cache=True)
def compact_ranks(r, I, J):
    """Map distinct ranks to dense positions 0..n-1 by ascending rank.

    Presence bit per used rank over [0, 2m), one compaction scan, then the
    vertices with no rank (isolated) appended in ascending ID order.
    """
    n = r.shape[0]
    m = I.shape[0]
    presence = np.zeros(2 * m, dtype=np.uint8)
    for v in range(n):
        if r[v] != RANK_UNSET:
            presence[r[v]] = 1
    order = np.empty(n, dtype=np.int64)
    k = 0
    for i in range(2 * m):
        if presence[i]:
            order[k] = I[i] if i < m else J[i - m]
            k += 1
    for v in range(n):
        if r[v] == RANK_UNSET:
            order[k] = v
            k += 1
    return order


@njit(cache=True)
def lcd_attach(u):
    """One preferential-attachment pass driven by pre-drawn uniforms.

    Step t (0-based) attaches vertex t to an endpoint of the edges so far,
    each endpoint slot equally likely, with one extra slot for t itself
    (the self-loop case).  Returns the destination chosen at every step.
    """
    n = u.shape[0]
    dest = np.empty(n, dtype=np.int64)
    ends = np.empty(2 * n, dtype=np.int64)
    for t in range(n):
        x = int(u[t] * (2 * t + 1))
        s = t if x >= 2 * t else ends[x]
        dest[t] = s
        ends[2 * t] = t
        ends[2 * t + 1] = s
    return dest


@njit(cache=True)
def count_triangles_sorted(offsets, indices):
    """Merge-intersection triangle count over rows sorted ascending.

    Edges are oriented low-ID -> high-ID; for each such edge (u, v) the
    common neighbors above v are counted, so every triangle is counted at
    its lowest edge exactly once.
    """
    n = offsets.shape[0] - 1
    total = 0
    for u in range(n):
        for k in range(offsets[u], offsets[u + 1]):
            v = indices[k]
            if v <= u:
                continue
            a = offsets[u]
            b = offsets[v]
            ae = offsets[u + 1]
            be = offsets[v + 1]
            while a < ae and b < be:
                x = indices[a]
                y = indices[b]
                if x <= v:
                    a += 1
                elif y <= v:
                    b += 1
                elif x == y:
                    total += 1
                    a += 1
                    b += 1
                elif x < y:
                    a += 1
                else:
                    b += 1
    return total
