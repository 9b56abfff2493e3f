"""Synthetic graph generators.

The preferential-attachment generator follows the classic linearized-chord
construction: each of ``c`` independent single-attachment passes lets
vertex ``t`` pick an endpoint of the edges laid down so far (its own new
half-edge included, which yields self-loops), so existing vertices are
chosen proportionally to degree.  Vertex IDs equal arrival order and the
union of the passes is emitted with sources ascending.

Also here: random simple d-regular graphs emitted as destination-sorted
edge lists, and 4-neighbor grid lattices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._parallel import lcd_attach
from .graph import CooGraph, INDEX_DTYPE

__all__ = ["LcdParams", "generate_lcd", "generate_regular_sorted", "generate_grid"]


@dataclass(frozen=True)
class LcdParams:
    """Preferential-attachment parameters: ``n`` vertices, ``c``
    attachments per vertex, and the RNG seed."""

    n: int
    c: int
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one vertex, got n = {self.n}")
        if self.c < 1:
            raise ValueError(f"need at least one attachment per vertex, got c = {self.c}")


def generate_lcd(params: LcdParams) -> CooGraph:
    """Run ``c`` independent single-attachment processes on a shared
    vertex set and union their edges.

    At step ``t`` (1-based) of each pass, vertex ``t - 1`` attaches to an
    existing vertex with probability degree / (2t - 1) and to itself with
    probability 1 / (2t - 1).  The result has exactly ``n * c`` edges
    (self-loops and duplicates possible), listed in generation order with
    sources ascending.
    """
    n, c = params.n, params.c
    children = np.random.SeedSequence(params.seed).spawn(c)
    dests = [lcd_attach(np.random.default_rng(s).random(n)) for s in children]
    I = np.repeat(np.arange(n, dtype=INDEX_DTYPE), c)
    J = np.column_stack(dests).ravel()
    return CooGraph(n, I, J, validate=False)


def generate_regular_sorted(n: int, d: int, seed: int, max_tries: int = 1000) -> CooGraph:
    """Random simple d-regular graph as a destination-sorted edge list.

    Sampling is a configuration-model pairing with whole-sample rejection
    of self-loops and duplicate edges.  Both directions of every
    undirected edge are emitted, sorted by destination with sources
    ascending within a destination, so each vertex appears exactly ``d``
    times on each side.

    Raises
    ------
    ValueError
        If ``n * d`` is odd or ``d >= n`` (no simple d-regular graph).
    RuntimeError
        If rejection sampling exhausts ``max_tries`` attempts.
    """
    if d >= n or (n * d) % 2 != 0:
        raise ValueError(f"no simple {d}-regular graph on {n} vertices")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        stubs = np.repeat(np.arange(n, dtype=INDEX_DTYPE), d)
        rng.shuffle(stubs)
        pairs = stubs.reshape(-1, 2)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        keys = lo * np.int64(n) + hi
        if np.unique(keys).size != keys.size:
            continue
        I = np.concatenate([pairs[:, 0], pairs[:, 1]])
        J = np.concatenate([pairs[:, 1], pairs[:, 0]])
        k = np.lexsort((I, J))
        return CooGraph(n, I[k], J[k], validate=False)
    raise RuntimeError(
        f"could not sample a simple {d}-regular graph on {n} vertices "
        f"in {max_tries} tries"
    )


def generate_grid(rows: int, cols: int) -> CooGraph:
    """4-neighbor lattice with both edge directions and row-major IDs."""
    if rows < 1 or cols < 1:
        raise ValueError(f"grid dimensions must be positive, got {rows} x {cols}")
    ids = np.arange(rows * cols, dtype=INDEX_DTYPE).reshape(rows, cols)
    right_src = ids[:, :-1].ravel()
    right_dst = ids[:, 1:].ravel()
    down_src = ids[:-1, :].ravel()
    down_dst = ids[1:, :].ravel()
    I = np.concatenate([right_src, right_dst, down_src, down_dst])
    J = np.concatenate([right_dst, right_src, down_dst, down_src])
    return CooGraph(rows * cols, I, J, validate=False)
