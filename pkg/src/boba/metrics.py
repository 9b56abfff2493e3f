"""Locality objectives for scoring (graph, ordering) pairs.

Neighborhoods are out-neighbor *sets* (duplicate edges collapse).  The
shared-neighbor score counts, over consecutive positions of an ordering,
how many out-neighbors each adjacent pair of vertices has in common; its
windowed generalization adds a direct-edge membership term.  The
cache-line ratio scores how many lines a neighborhood's IDs span relative
to its size, and bandwidth is the maximum label distance across an edge.

A brute-force oracle over all n! orderings is included for testing the
scores' extremal behavior on tiny graphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import UndefinedMetricError
from .graph import CooGraph, CsrGraph, INDEX_DTYPE, Permutation, apply_permutation, coo_to_csr
from .validation import check_permutation

__all__ = [
    "nscore",
    "gscore",
    "nbr",
    "bandwidth",
    "brute_force_optimal_nscore",
    "LocalityReport",
    "locality_report",
    "DEFAULT_LINE_SIZE",
]

DEFAULT_LINE_SIZE = 32


def _dedup_labeled_edges(g: CooGraph, p: Permutation):
    """Deduplicated edges as (source label, destination label) pairs,
    sorted by destination then source label."""
    a = p.label[g.I]
    b = p.label[g.J]
    keys = np.unique(b * np.int64(g.n) + a)
    return keys % g.n, keys // g.n  # (src labels, dst labels)


def nscore(g: CooGraph, p: Permutation) -> int:
    """Sum over consecutive ordered pairs of shared out-neighbor counts.

    Equivalently: over every destination, the number of adjacent-label
    pairs among its (deduplicated) sources.
    """
    check_permutation(p, g.n)
    src, dst = _dedup_labeled_edges(g, p)
    if src.size < 2:
        return 0
    hit = (np.diff(src) == 1) & (np.diff(dst) == 0)
    return int(np.count_nonzero(hit))


def gscore(g: CooGraph, p: Permutation, w: int = 1) -> int:
    """Windowed pair score: for every pair of positions at distance at
    most ``w``, the shared out-neighbor count plus the number of direct
    edges between the two vertices (0, 1, or 2).

    Parameters
    ----------
    g : CooGraph
    p : Permutation
    w : int
        Window width, at least 1.
    """
    if w < 1:
        raise ValueError(f"window must be a positive integer, got {w}")
    check_permutation(p, g.n)
    src, dst = _dedup_labeled_edges(g, p)
    total = 0
    if src.size:
        # shared-neighbor term: same-destination source pairs within w
        keys = dst * np.int64(g.n) + src
        lows = np.searchsorted(keys, dst * np.int64(g.n) + np.maximum(src - w, 0))
        total += int((np.arange(src.size) - lows).sum())
        # direct-edge term: deduplicated edges whose endpoints sit within w
        gap = np.abs(src - dst)
        total += int(np.count_nonzero((gap >= 1) & (gap <= w)))
    return total


def nbr(csr: CsrGraph, line_size: int = DEFAULT_LINE_SIZE) -> float:
    """Mean, over vertices with at least one out-neighbor, of the number
    of distinct cache lines the neighbor IDs span divided by the
    neighborhood size (as a multiset).  Lower is better; 1.0 means every
    neighbor sits on its own line.

    Raises
    ------
    UndefinedMetricError
        If the graph has no edges.
    """
    if line_size < 1:
        raise ValueError(f"line size must be at least 1, got {line_size}")
    if csr.m == 0:
        raise UndefinedMetricError("neighborhood line ratio is undefined without edges")
    deg = csr.out_degrees()
    rows = np.repeat(np.arange(csr.n, dtype=INDEX_DTYPE), deg)
    lines = csr.indices // line_size
    k = np.lexsort((lines, rows))
    rs, ls = rows[k], lines[k]
    boundary = np.empty(rs.size, dtype=bool)
    boundary[0] = True
    boundary[1:] = (rs[1:] != rs[:-1]) | (ls[1:] != ls[:-1])
    line_counts = np.bincount(rs[boundary], minlength=csr.n)
    mask = deg > 0
    return float(np.mean(line_counts[mask] / deg[mask]))


def bandwidth(g: CooGraph, p: Permutation) -> int:
    """Maximum label distance across any edge under the ordering."""
    check_permutation(p, g.n)
    if g.m == 0:
        raise UndefinedMetricError("bandwidth is undefined without edges")
    return int(np.abs(p.label[g.I] - p.label[g.J]).max())


_PERM_BATCH = 200_000


def brute_force_optimal_nscore(g: CooGraph, limit_n: int = 10) -> tuple[Permutation, int]:
    """Exhaustive maximum of the shared-neighbor score over all n!
    orderings, enumerated lexicographically; ties resolve to the
    lexicographically smallest order array.

    Refuses graphs with more than ``limit_n`` vertices (factorial
    blowup); ``limit_n`` itself may not exceed 10.
    """
    if limit_n > 10:
        raise ValueError(f"limit_n may not exceed 10, got {limit_n}")
    n = g.n
    if n > limit_n:
        raise ValueError(f"brute force refused: n = {n} exceeds limit {limit_n}")
    if n == 0:
        return Permutation.identity(0), 0

    neighbor_sets = [set() for _ in range(n)]
    for u, v in zip(g.I.tolist(), g.J.tolist()):
        neighbor_sets[u].add(v)
    shared = np.zeros((n, n), dtype=np.int64)
    for u in range(n):
        for v in range(u + 1, n):
            c = len(neighbor_sets[u] & neighbor_sets[v])
            shared[u, v] = shared[v, u] = c

    best_score = -1
    best_order = None
    perms = itertools.permutations(range(n))
    while True:
        batch = np.array(list(itertools.islice(perms, _PERM_BATCH)), dtype=INDEX_DTYPE)
        if batch.size == 0:
            break
        if n == 1:
            scores = np.zeros(len(batch), dtype=np.int64)
        else:
            scores = shared[batch[:, :-1], batch[:, 1:]].sum(axis=1)
        k = int(np.argmax(scores))
        if scores[k] > best_score:
            best_score = int(scores[k])
            best_order = batch[k].copy()
    return Permutation(best_order), best_score


@dataclass(frozen=True)
class LocalityReport:
    """All locality scores for one (graph, ordering) pair.

    ``m`` is the edge count, which also upper-bounds ``nscore``.
    """

    nscore: int
    gscore: int
    w: int
    nbr: float
    bandwidth: int
    line_size: int
    m: int


def locality_report(
    g: CooGraph,
    p: Permutation,
    w: int = 1,
    line_size: int = DEFAULT_LINE_SIZE,
    nbr_on_reversed: bool = False,
) -> LocalityReport:
    """Compute every locality metric for one (graph, ordering) pair.

    The line ratio is evaluated on the CSR of the relabeled graph, or of
    its edge reversal when ``nbr_on_reversed`` is set (in-neighborhoods,
    the pull direction).
    """
    relabeled = apply_permutation(g, p)
    csr = coo_to_csr(relabeled.reverse() if nbr_on_reversed else relabeled)
    return LocalityReport(
        nscore=nscore(g, p),
        gscore=gscore(g, p, w),
        w=w,
        nbr=nbr(csr, line_size),
        bandwidth=bandwidth(g, p),
        line_size=line_size,
        m=g.m,
    )
