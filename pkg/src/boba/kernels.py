"""Graph kernels exercised by the benchmark pipeline.

All kernels use deterministic reductions (per-row sums run in row order),
so relabeling equivariance can be checked bit-exactly on integer weights.
Answers never depend on the vertex ordering beyond the labels themselves.
"""

from __future__ import annotations

import numpy as np

from ._parallel import count_triangles_sorted
from .graph import CooGraph, CsrGraph, coo_to_csr
from .validation import check_vector

__all__ = ["spmv_pull", "spmv_push", "pagerank", "triangle_count", "sssp"]


def _row_sums(csr: CsrGraph, values: np.ndarray) -> np.ndarray:
    """Per-row sums of ``values`` (one entry per stored edge), summed in
    row order.  Deterministic for a fixed input."""
    out = np.zeros(csr.n, dtype=np.float64)
    if csr.m == 0:
        return out
    nonempty = csr.out_degrees() > 0
    out[nonempty] = np.add.reduceat(values, csr.offsets[:-1][nonempty])
    return out


def spmv_pull(reversed_csr: CsrGraph, x) -> np.ndarray:
    """Pull-direction sparse matrix-vector product.

    ``reversed_csr`` must be the CSR of the edge-reversed graph, so row
    ``v`` holds the in-neighbors of ``v``; the result accumulates
    ``y[v] += w(u -> v) * x[u]`` over them.

    Parameters
    ----------
    reversed_csr : CsrGraph
    x : array of n reals

    Returns
    -------
    ndarray of n reals
    """
    x = check_vector(x, reversed_csr.n)
    if reversed_csr.m == 0:
        return np.zeros(reversed_csr.n, dtype=np.float64)
    contrib = x[reversed_csr.indices]
    if reversed_csr.weights is not None:
        contrib = contrib * reversed_csr.weights
    return _row_sums(reversed_csr, contrib)


def spmv_push(csr: CsrGraph, x) -> np.ndarray:
    """Push-direction product on the forward CSR (scatter form); the
    pull/push duality oracle."""
    x = check_vector(x, csr.n)
    src = np.repeat(np.arange(csr.n), csr.out_degrees())
    w = csr.weights if csr.weights is not None else 1.0
    return np.bincount(csr.indices, weights=x[src] * w, minlength=csr.n)


def pagerank(
    csr: CsrGraph,
    damping: float = 0.85,
    tol: float = 1e-6,
    max_iters: int = 100,
    return_iterations: bool = False,
):
    """Power iteration on the column-stochastic transition with uniform
    teleport; dangling vertices redistribute their mass uniformly.

    Stops when the L1 change drops below ``tol`` or after ``max_iters``
    rounds.  The result sums to 1 (up to float drift well below 1e-9).

    Parameters
    ----------
    csr : CsrGraph
        Forward adjacency (row v = out-neighbors of v).
    damping : float in (0, 1)
    tol : float
    max_iters : int
    return_iterations : bool
        Also return the number of iterations performed.
    """
    if not 0.0 < damping < 1.0:
        raise ValueError(f"damping must lie strictly between 0 and 1, got {damping}")
    n = csr.n
    if n == 0:
        empty = np.zeros(0, dtype=np.float64)
        return (empty, 0) if return_iterations else empty

    forward_w = csr.weights if csr.weights is not None else np.ones(csr.m)
    out_weight = _row_sums(csr, forward_w)
    dangling = out_weight == 0.0
    # reversed graph whose edge weights are the normalized source shares
    coo = csr.to_coo()
    share = forward_w / np.repeat(np.where(dangling, 1.0, out_weight), csr.out_degrees())
    rev = coo_to_csr(CooGraph(n, coo.J, coo.I, share))

    x = np.full(n, 1.0 / n, dtype=np.float64)
    teleport = (1.0 - damping) / n
    iterations = 0
    for iterations in range(1, max_iters + 1):
        dangling_mass = x[dangling].sum() / n
        x_next = damping * (spmv_pull(rev, x) + dangling_mass) + teleport
        delta = np.abs(x_next - x).sum()
        x = x_next
        if delta < tol:
            break
    return (x, iterations) if return_iterations else x


def triangle_count(csr: CsrGraph) -> int:
    """Exact triangle count of an undirected simple graph.

    Requires a symmetrized, deduplicated, loop-free graph whose rows are
    sorted ascending (convert a destination-sorted edge list to get
    this).  Each triangle is counted once, at its lowest-ID edge, via
    merge-style intersection.

    Raises
    ------
    ValueError
        If a row is unsorted or contains duplicates or self-loops.
    """
    if csr.m:
        rows = np.repeat(np.arange(csr.n), csr.out_degrees())
        idx = csr.indices
        same_row = rows[1:] == rows[:-1]
        if np.any(same_row & (idx[1:] <= idx[:-1])):
            raise ValueError("adjacency rows must be sorted ascending without duplicates")
        if np.any(rows == idx):
            raise ValueError("self-loops are not allowed in triangle counting")
    return int(count_triangles_sorted(csr.offsets, csr.indices))


def sssp(csr: CsrGraph, source: int, return_rounds: bool = False):
    """Single-source shortest paths by frontier-based relaxation.

    Weights default to 1.0 and must be non-negative.  Unreachable
    vertices get ``inf``.  Each round relaxes every out-edge of the
    current frontier; vertices whose distance improved form the next
    frontier, until fixpoint.

    Parameters
    ----------
    csr : CsrGraph
    source : int
    return_rounds : bool
        Also return the number of relaxation rounds.
    """
    n = csr.n
    if not 0 <= source < n:
        raise ValueError(f"source {source} out of range for n = {n}")
    w = csr.weights
    if w is not None and w.size and w.min() < 0:
        raise ValueError("negative edge weights are not supported")

    dist = np.full(n, np.inf, dtype=np.float64)
    dist[source] = 0.0
    frontier = np.array([source], dtype=np.int64)
    rounds = 0
    deg = csr.out_degrees()
    while frontier.size:
        rounds += 1
        counts = deg[frontier]
        edge_idx = np.repeat(csr.offsets[frontier], counts) + _ragged_arange(counts)
        targets = csr.indices[edge_idx]
        cand = np.repeat(dist[frontier], counts)
        cand = cand + (w[edge_idx] if w is not None else 1.0)
        before = dist[targets].copy()
        np.minimum.at(dist, targets, cand)
        frontier = np.unique(targets[dist[targets] < before])
    return (dist, rounds) if return_rounds else dist


def _ragged_arange(counts: np.ndarray) -> np.ndarray:
    """Concatenation of arange(c) for each c in counts."""
    total = int(counts.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    ends = np.cumsum(counts)
    starts = np.repeat(ends - counts, counts)
    return np.arange(total, dtype=np.int64) - starts
