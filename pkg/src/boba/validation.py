"""Input validation helpers shared by the estimator API and the kernels."""

from __future__ import annotations

import numpy as np

from .errors import MalformedGraphError
from .graph import CooGraph, CsrGraph, Permutation

__all__ = ["check_coo", "check_csr", "check_permutation", "check_vector"]


def check_coo(g) -> CooGraph:
    """Validate that ``g`` is a CooGraph (invariants hold by construction)."""
    if not isinstance(g, CooGraph):
        raise TypeError(f"expected a CooGraph, got {type(g).__name__}")
    return g


def check_csr(g) -> CsrGraph:
    if not isinstance(g, CsrGraph):
        raise TypeError(f"expected a CsrGraph, got {type(g).__name__}")
    return g


def check_permutation(p, n: int | None = None) -> Permutation:
    if not isinstance(p, Permutation):
        raise TypeError(f"expected a Permutation, got {type(p).__name__}")
    if n is not None and p.n != n:
        raise MalformedGraphError(f"permutation size {p.n} does not match n = {n}")
    return p


def check_vector(x, n: int) -> np.ndarray:
    """Coerce ``x`` to a float vector of length ``n``."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size != n:
        raise ValueError(f"expected a length-{n} vector, got shape {arr.shape}")
    return arr
