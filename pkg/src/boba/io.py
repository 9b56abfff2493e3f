"""Reading and writing graphs: Matrix Market and whitespace edge lists.

Both readers return a :class:`CooGraph` plus a :class:`LabelMap` from the
file's original vertex tokens to the dense numeric IDs used internally.
Edge-list tokens are assigned IDs in order of first appearance (source
before destination per line) — note that this is itself an
attachment-style canonicalization, so experiments needing a neutral
baseline must relabel with :func:`randomize_labels` afterwards.
"""

from __future__ import annotations

import io as _stdio
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd

from .errors import ParseError
from .graph import CooGraph, INDEX_DTYPE, Permutation, apply_permutation
from .ordering import random_order

__all__ = [
    "LabelMap",
    "read_matrix_market",
    "read_edge_list",
    "read_graph",
    "write_edge_list",
    "read_provenance",
    "randomize_labels",
]

_PROVENANCE_PREFIX = "provenance: "


@dataclass(frozen=True, eq=False)
class LabelMap:
    """Bijection between original vertex tokens and dense IDs.

    ``id_to_token[i]`` is the original token of internal vertex ``i``;
    the reverse mapping is materialized lazily on first use.
    """

    id_to_token: np.ndarray
    _token_to_id: dict = field(default=None, repr=False)  # type: ignore[assignment]

    @property
    def n(self) -> int:
        return int(len(self.id_to_token))

    @property
    def token_to_id(self) -> dict:
        if self._token_to_id is None:
            mapping = {t: i for i, t in enumerate(self.id_to_token.tolist())}
            object.__setattr__(self, "_token_to_id", mapping)
        return self._token_to_id

    def token(self, vertex: int):
        return self.id_to_token[vertex]

    @classmethod
    def numeric(cls, n: int, one_based: bool = True) -> "LabelMap":
        start = 1 if one_based else 0
        return cls(np.arange(start, start + n, dtype=INDEX_DTYPE))


def _data_lines(path):
    """Yield (1-based line number, stripped text) for non-comment lines."""
    with open(path, "rt", encoding="utf-8") as fh:
        for no, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text or text.startswith("%") or text.startswith("#"):
                continue
            yield no, text


def read_matrix_market(path) -> tuple[CooGraph, LabelMap]:
    """Parse a Matrix Market coordinate file into an edge list.

    Supported headers: ``matrix coordinate (pattern|real|integer)
    (general|symmetric)``.  Symmetric files emit both (i, j) and (j, i)
    for off-diagonal entries and a single edge for diagonal ones; the
    1-based file indices become 0-based IDs.

    Raises
    ------
    ParseError
        On an unsupported header, malformed entry, or index out of the
        declared bounds — naming the offending line.
    """
    path = Path(path)
    with open(path, "rt", encoding="utf-8") as fh:
        header = fh.readline().strip()
    parts = header.split()
    if len(parts) != 5 or not parts[0].startswith("%%MatrixMarket"):
        raise ParseError("not a Matrix Market header", path=path, line=1)
    _, obj, fmt, fld, sym = (p.lower() for p in parts)
    if obj != "matrix" or fmt != "coordinate":
        raise ParseError(f"unsupported Matrix Market type: {obj} {fmt}", path=path, line=1)
    if fld not in ("pattern", "real", "integer"):
        raise ParseError(f"unsupported field type: {fld}", path=path, line=1)
    if sym not in ("general", "symmetric"):
        raise ParseError(f"unsupported symmetry: {sym}", path=path, line=1)

    lines = _data_lines(path)
    try:
        dims_no, dims_text = next(lines)
    except StopIteration:
        raise ParseError("missing size line", path=path) from None
    dims = dims_text.split()
    if len(dims) != 3:
        raise ParseError("size line must be 'rows cols nnz'", path=path, line=dims_no)
    try:
        rows, cols, nnz = (int(t) for t in dims)
    except ValueError:
        raise ParseError("non-integer size line", path=path, line=dims_no) from None

    n = max(rows, cols)
    has_values = fld != "pattern"
    src = np.empty(nnz, dtype=INDEX_DTYPE)
    dst = np.empty(nnz, dtype=INDEX_DTYPE)
    vals = np.empty(nnz, dtype=np.float64) if has_values else None
    count = 0
    for no, text in lines:
        if count >= nnz:
            raise ParseError(f"more than the declared {nnz} entries", path=path, line=no)
        tokens = text.split()
        if len(tokens) != (3 if has_values else 2):
            raise ParseError(
                f"expected {3 if has_values else 2} tokens, got {len(tokens)}",
                path=path, line=no,
            )
        try:
            i = int(tokens[0])
            j = int(tokens[1])
        except ValueError:
            raise ParseError("non-integer coordinate", path=path, line=no) from None
        if not (1 <= i <= rows) or not (1 <= j <= cols):
            raise ParseError(
                f"entry ({i}, {j}) outside declared {rows} x {cols} bounds",
                path=path, line=no,
            )
        if has_values:
            try:
                vals[count] = float(tokens[2])
            except ValueError:
                raise ParseError("non-numeric value", path=path, line=no) from None
        src[count] = i - 1
        dst[count] = j - 1
        count += 1
    if count != nnz:
        raise ParseError(f"declared {nnz} entries but found {count}", path=path)

    if sym == "symmetric":
        off = src != dst
        order = np.repeat(np.arange(nnz), 1 + off)
        mirror = np.zeros(order.size, dtype=bool)
        # each off-diagonal entry is followed immediately by its mirror
        mirror[np.cumsum(1 + off) - 1] = off
        I = np.where(mirror, dst[order], src[order])
        J = np.where(mirror, src[order], dst[order])
        w = None if vals is None else vals[order]
    else:
        I, J, w = src, dst, vals
    return CooGraph(n, I, J, w), LabelMap.numeric(n, one_based=True)


def _rescan_edge_list(path, arity):
    """Slow line-by-line pass to pinpoint a malformed edge-list line."""
    for no, text in _data_lines(path):
        tokens = text.split()
        if arity is None:
            arity = len(tokens)
        if len(tokens) not in (2, 3) or len(tokens) != arity:
            raise ParseError(
                f"expected {arity} whitespace-separated tokens, got {len(tokens)}",
                path=path, line=no,
            )
        if arity == 3:
            try:
                float(tokens[2])
            except ValueError:
                raise ParseError("non-numeric weight", path=path, line=no) from None
    return arity


def read_edge_list(path) -> tuple[CooGraph, LabelMap]:
    """Parse a whitespace edge list (2 or 3 columns, '#' comments).

    Tokens may be arbitrary strings; they are mapped to dense IDs in
    order of first appearance, scanning source then destination per line.
    A third column is read as a float edge weight.

    Raises
    ------
    ParseError
        For a line with the wrong number of tokens or a bad weight,
        naming the line.
    """
    path = Path(path)
    arity = None
    for _, text in _data_lines(path):
        arity = len(text.split())
        break
    if arity is None:
        return CooGraph(0, [], []), LabelMap(np.empty(0, dtype=INDEX_DTYPE))
    if arity not in (2, 3):
        _rescan_edge_list(path, None)

    names = ["src", "dst"] + (["w"] if arity == 3 else [])
    try:
        df = pd.read_csv(
            path, sep=" ", names=names, comment="#", header=None,
            skip_blank_lines=True, engine="c", float_precision="round_trip",
        )
    except Exception:
        try:
            df = pd.read_csv(
                path, sep=r"\s+", names=names, comment="#", header=None,
                skip_blank_lines=True, engine="python",
            )
        except Exception:
            _rescan_edge_list(path, arity)
            raise ParseError("unparseable edge list", path=path) from None
    if df.isna().any().any():
        _rescan_edge_list(path, arity)
        raise ParseError("unparseable edge list", path=path)

    src = df["src"].to_numpy()
    dst = df["dst"].to_numpy()
    weights = None
    if arity == 3:
        wcol = df["w"]
        if not pd.api.types.is_numeric_dtype(wcol):
            _rescan_edge_list(path, arity)
        weights = wcol.to_numpy(dtype=np.float64)

    # first-appearance factorization over the interleaved (src, dst) stream
    inter = np.empty(2 * src.size, dtype=src.dtype if src.dtype == dst.dtype else object)
    inter[0::2] = src
    inter[1::2] = dst
    codes, uniques = pd.factorize(inter, use_na_sentinel=False)
    tokens = np.asarray(uniques)
    g = CooGraph(tokens.size, codes[0::2], codes[1::2], weights)
    return g, LabelMap(tokens)


def read_graph(path) -> tuple[CooGraph, LabelMap]:
    """Dispatch on file extension: ``.mtx`` is Matrix Market, anything
    else is treated as a whitespace edge list."""
    path = Path(path)
    if path.suffix.lower() == ".mtx":
        return read_matrix_market(path)
    return read_edge_list(path)


def write_edge_list(g: CooGraph, path, provenance: Sequence[str] = ()) -> None:
    """Write a graph as a numeric edge list, one ``src dst [weight]`` row
    per edge in edge-list order.  ``provenance`` entries are recorded as
    leading comment lines and survive round trips (comments are skipped
    on read)."""
    path = Path(path)
    cols = {"src": g.I, "dst": g.J}
    if g.weights is not None:
        cols["w"] = g.weights
    df = pd.DataFrame(cols)
    buf = _stdio.StringIO()
    for item in provenance:
        buf.write(f"# {_PROVENANCE_PREFIX}{item}\n")
    if g.m:
        df.to_csv(buf, sep=" ", header=False, index=False, float_format="%.17g")
    with open(path, "wt", encoding="utf-8") as fh:
        fh.write(buf.getvalue())


def read_provenance(path) -> list[str]:
    """Provenance entries recorded in a file's leading comment lines."""
    out = []
    with open(path, "rt", encoding="utf-8") as fh:
        for raw in fh:
            text = raw.strip()
            if not text:
                continue
            if not (text.startswith("#") or text.startswith("%")):
                break
            body = text.lstrip("#%").strip()
            if body.startswith(_PROVENANCE_PREFIX):
                out.append(body[len(_PROVENANCE_PREFIX):])
    return out


def randomize_labels(g: CooGraph, seed: int) -> tuple[CooGraph, Permutation]:
    """Relabel with a uniformly random seeded bijection.

    Returns the relabeled graph and the permutation that produced it;
    identical seeds give identical outputs.
    """
    q = random_order(g.n, seed)
    return apply_permutation(g, q), q
