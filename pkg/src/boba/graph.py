"""Core graph containers and structural operations.

Graphs are directed and stored either as an edge list (:class:`CooGraph`,
parallel source/destination arrays) or in compressed sparse row form
(:class:`CsrGraph`).  Vertex IDs are dense 0-based integers.  Duplicate
edges and self-loops are permitted.  All containers are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field

import numpy as np

from .errors import MalformedGraphError

__all__ = [
    "CooGraph",
    "CsrGraph",
    "Permutation",
    "coo_to_csr",
    "apply_permutation",
    "degrees",
    "total_degrees",
    "sort_coo_by_destination",
    "symmetrize",
    "is_symmetric_simple",
]

INDEX_DTYPE = np.int64


def _as_index_array(a, name: str) -> np.ndarray:
    arr = np.asarray(a, dtype=INDEX_DTYPE)
    if arr.ndim != 1:
        raise MalformedGraphError(f"{name} must be one-dimensional, got shape {arr.shape}")
    return arr


def _freeze(*arrays):
    """Read-only views of the given arrays (None passes through).

    The underlying buffers stay writable through ``.base``, so internal
    counting loops can avoid the hidden copies numpy makes for read-only
    inputs, while consumers of the stored attributes cannot mutate them.
    """
    out = []
    for arr in arrays:
        if arr is None:
            out.append(None)
            continue
        view = arr.view()
        view.flags.writeable = False
        out.append(view)
    return out


def _counting_view(arr: np.ndarray) -> np.ndarray:
    """The writable buffer behind a frozen view, when it is the same data
    (np.bincount copies read-only inputs; this avoids that)."""
    base = arr.base
    if (
        base is not None
        and isinstance(base, np.ndarray)
        and base.flags.writeable
        and base.dtype == arr.dtype
        and base.shape == arr.shape
    ):
        return base
    return arr


@dataclass(frozen=True, eq=False)
class CooGraph:
    """Directed edge list: edge ``i`` goes from ``I[i]`` to ``J[i]``.

    ``weights`` is optional; absent weights mean unit weight 1.0 on every
    edge.  Construction validates that all endpoints lie in ``[0, n)``;
    internal code that builds structurally valid arrays passes
    ``validate=False`` to skip the re-scan.
    """

    n: int
    I: np.ndarray
    J: np.ndarray
    weights: np.ndarray | None = None
    validate: InitVar[bool] = True

    def __post_init__(self, validate):
        I = _as_index_array(self.I, "I")
        J = _as_index_array(self.J, "J")
        if self.n < 0:
            raise MalformedGraphError(f"vertex count must be non-negative, got {self.n}")
        if I.shape != J.shape:
            raise MalformedGraphError(
                f"source/destination arrays differ in length: {I.size} vs {J.size}"
            )
        if validate and I.size:
            for name, arr in (("I", I), ("J", J)):
                lo, hi = int(arr.min()), int(arr.max())
                if lo < 0 or hi >= self.n:
                    bad = int(np.argmax((arr < 0) | (arr >= self.n)))
                    raise MalformedGraphError(
                        f"{name}[{bad}] = {arr[bad]} out of range for n = {self.n}"
                    )
        w = self.weights
        if w is not None:
            w = np.asarray(w, dtype=np.float64)
            if w.shape != I.shape:
                raise MalformedGraphError(
                    f"weights length {w.size} does not match edge count {I.size}"
                )
        I, J, w = _freeze(I, J, w)
        object.__setattr__(self, "I", I)
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "weights", w)

    @property
    def m(self) -> int:
        """Number of edges (with multiplicity)."""
        return int(self.I.size)

    def effective_weights(self) -> np.ndarray:
        """Weights array, materializing unit weights when absent."""
        if self.weights is not None:
            return self.weights
        return np.ones(self.m, dtype=np.float64)

    def reverse(self) -> "CooGraph":
        """The edge-reversed graph (every edge u->v becomes v->u)."""
        return CooGraph(self.n, self.J, self.I, self.weights, validate=False)


@dataclass(frozen=True, eq=False)
class CsrGraph:
    """Compressed sparse row adjacency.

    Row ``v``'s out-neighbors are ``indices[offsets[v]:offsets[v + 1]]``;
    the multiset of (row, index) pairs equals the edge multiset of the
    source edge list, with within-row order preserving edge-list order.
    """

    n: int
    offsets: np.ndarray
    indices: np.ndarray
    weights: np.ndarray | None = None
    validate: InitVar[bool] = True

    def __post_init__(self, validate):
        offsets = _as_index_array(self.offsets, "offsets")
        indices = _as_index_array(self.indices, "indices")
        if offsets.size != self.n + 1:
            raise MalformedGraphError(
                f"offsets must have length n + 1 = {self.n + 1}, got {offsets.size}"
            )
        if validate:
            if offsets[0] != 0 or offsets[-1] != indices.size:
                raise MalformedGraphError(
                    "offsets must start at 0 and end at the edge count")
            if np.any(np.diff(offsets) < 0):
                raise MalformedGraphError("offsets must be non-decreasing")
            if indices.size and (indices.min() < 0 or indices.max() >= self.n):
                raise MalformedGraphError(f"indices out of range for n = {self.n}")
        w = self.weights
        if w is not None:
            w = np.asarray(w, dtype=np.float64)
            if w.shape != indices.shape:
                raise MalformedGraphError("weights length does not match index count")
        offsets, indices, w = _freeze(offsets, indices, w)
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "weights", w)

    @property
    def m(self) -> int:
        return int(self.indices.size)

    def row(self, v: int) -> np.ndarray:
        return self.indices[self.offsets[v]:self.offsets[v + 1]]

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def to_coo(self) -> CooGraph:
        """Expand back to an edge list (row-major edge order)."""
        I = np.repeat(np.arange(self.n, dtype=INDEX_DTYPE), np.diff(self.offsets))
        return CooGraph(self.n, I, self.indices.copy(), self.weights, validate=False)


@dataclass(frozen=True, eq=False)
class Permutation:
    """A bijection between old vertex IDs and new positions.

    ``order[k]`` is the old ID placed at new position ``k``;
    ``label[v]`` is the new position of old ID ``v``.  Both directions are
    materialized so lookups are O(1) either way.
    """

    order: np.ndarray
    label: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        order = _as_index_array(self.order, "order")
        label = self.label
        if label is None:
            label = np.empty_like(order)
            label[order] = np.arange(order.size, dtype=INDEX_DTYPE)
        else:
            label = _as_index_array(label, "label")
            if label.shape != order.shape:
                raise MalformedGraphError("order and label must have the same length")
        order, label = _freeze(order, label)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "label", label)

    @property
    def n(self) -> int:
        return int(self.order.size)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        ids = np.arange(n, dtype=INDEX_DTYPE)
        return cls(ids, ids.copy())

    @classmethod
    def from_order(cls, order) -> "Permutation":
        """Build from an order array, validating that it is a bijection."""
        order = _as_index_array(order, "order")
        n = order.size
        seen = np.zeros(n, dtype=bool)
        if n and (order.min() < 0 or order.max() >= n):
            raise MalformedGraphError("order contains values outside [0, n)")
        seen[order] = True
        if not seen.all():
            raise MalformedGraphError("order is not a bijection on [0, n)")
        return cls(order)

    def inverse(self) -> "Permutation":
        return Permutation(self.label.copy(), self.order.copy())

    def is_valid(self) -> bool:
        n = self.n
        if self.label.size != n:
            return False
        if n == 0:
            return True
        if self.order.min() < 0 or self.order.max() >= n:
            return False
        return bool(np.array_equal(self.label[self.order], np.arange(n)))


def coo_to_csr(g: CooGraph) -> CsrGraph:
    """Convert an edge list to CSR form.

    The conversion is a stable counting pass: row ``v`` receives the
    destinations of all edges with source ``v`` in edge-list order.
    Deterministic for a given input.

    Parameters
    ----------
    g : CooGraph

    Returns
    -------
    CsrGraph
    """
    from ._parallel import scatter_rows

    counts = np.bincount(_counting_view(g.I), minlength=g.n)
    offsets = np.zeros(g.n + 1, dtype=INDEX_DTYPE)
    np.cumsum(counts, out=offsets[1:])
    if g.m == 0:
        return CsrGraph(g.n, offsets, np.empty(0, dtype=INDEX_DTYPE),
                        None if g.weights is None else np.empty(0, dtype=np.float64))
    indices, weights = scatter_rows(g.I, g.J, g.weights, offsets)
    return CsrGraph(g.n, offsets, indices, weights, validate=False)


def apply_permutation(g: CooGraph, p: Permutation) -> CooGraph:
    """Relabel a graph: edge ``(u, v)`` becomes ``(label[u], label[v])``.

    Edge order and weights are unchanged.
    """
    if p.n != g.n:
        raise MalformedGraphError(
            f"permutation size {p.n} does not match vertex count {g.n}"
        )
    return CooGraph(g.n, p.label[g.I], p.label[g.J], g.weights, validate=False)


def degrees(g: CooGraph) -> np.ndarray:
    """Out-degree of every vertex: occurrences of ``v`` among the sources."""
    return np.bincount(_counting_view(g.I), minlength=g.n)


def total_degrees(g: CooGraph) -> np.ndarray:
    """In-degree plus out-degree (frequency in the whole edge list)."""
    return (np.bincount(_counting_view(g.I), minlength=g.n)
            + np.bincount(_counting_view(g.J), minlength=g.n))


def sort_coo_by_destination(g: CooGraph) -> CooGraph:
    """Stable sort of the edge list by destination (ties keep input order)."""
    k = np.argsort(g.J, kind="stable")
    w = None if g.weights is None else g.weights[k]
    return CooGraph(g.n, g.I[k], g.J[k], w, validate=False)


def _edge_keys(I: np.ndarray, J: np.ndarray, n: int) -> np.ndarray:
    return I * np.int64(n) + J


def symmetrize(g: CooGraph, drop_self_loops: bool = False) -> CooGraph:
    """Structural symmetrization: add reverse edges and deduplicate.

    Weights are discarded; the result is a pattern graph whose edge set is
    the union of the input's edges and their reversals.
    """
    I = np.concatenate([g.I, g.J])
    J = np.concatenate([g.J, g.I])
    if drop_self_loops:
        keep = I != J
        I, J = I[keep], J[keep]
    keys = np.unique(_edge_keys(I, J, g.n))
    return CooGraph(g.n, keys // g.n, keys % g.n, validate=False)


def is_symmetric_simple(g: CooGraph) -> bool:
    """True when the edge set is symmetric, duplicate-free, and loop-free."""
    if np.any(g.I == g.J):
        return False
    fwd = np.sort(_edge_keys(g.I, g.J, g.n))
    if fwd.size and np.any(fwd[1:] == fwd[:-1]):
        return False
    rev = np.sort(_edge_keys(g.J, g.I, g.n))
    return bool(np.array_equal(fwd, rev))
