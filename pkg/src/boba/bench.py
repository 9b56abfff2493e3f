"""Timed end-to-end pipeline: reorder, convert, run a kernel.

A run produces one :class:`BenchRecord` per kernel repeat plus a median
row.  Timings are monotonic wall clock in milliseconds (microsecond
resolution) and cover only in-memory work; the kernel answer is reduced
to an order-insensitive checksum so that reordering bugs cannot
masquerade as speedups.
"""

from __future__ import annotations

import hashlib
import statistics
import time
from dataclasses import dataclass, fields

import numpy as np
import pandas as pd

from .errors import BobaError, MalformedGraphError
from .graph import (
    CooGraph,
    apply_permutation,
    coo_to_csr,
    is_symmetric_simple,
    sort_coo_by_destination,
)
from .kernels import pagerank, spmv_pull, sssp, triangle_count
from .metrics import DEFAULT_LINE_SIZE, LocalityReport, locality_report
from .ordering import ORDERING_CHOICES, compute_ordering

__all__ = ["KERNEL_CHOICES", "BenchRecord", "run_bench", "compare_records"]

KERNEL_CHOICES = ("spmv", "pr", "tc", "sssp")


@dataclass(frozen=True)
class BenchRecord:
    """One timed pipeline run (or the median row of its repeats)."""

    dataset: str
    kernel: str
    ordering: str
    mode: str
    seed: int
    threads: int
    repeat: str
    reorder_ms: float
    sort_ms: float | None
    convert_ms: float
    kernel_ms: float
    end_to_end_ms: float
    iterations: int
    kernel_checksum: str
    n: int
    m: int
    nscore: int | None = None
    gscore: int | None = None
    w: int | None = None
    nbr: float | None = None
    bandwidth: int | None = None
    line_size: int | None = None

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def to_row(self) -> list:
        return [getattr(self, c) for c in self.columns()]


def _ms(fn, *args, **kwargs):
    t0 = time.perf_counter_ns()
    out = fn(*args, **kwargs)
    return out, round((time.perf_counter_ns() - t0) / 1e3) / 1e3


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:16]


def _kernel_checksum(kernel: str, result) -> str:
    if kernel == "spmv":
        return _digest(np.sort(result).tobytes())
    if kernel == "pr":
        # PR entries agree across orderings only to ~1e-9; quantize first
        return _digest(np.round(np.sort(result), 6).tobytes())
    if kernel == "tc":
        return _digest(str(int(result)).encode())
    if kernel == "sssp":
        finite = np.sort(result[np.isfinite(result)])
        tail = f"#unreachable={int(np.sum(np.isinf(result)))}".encode()
        return _digest(finite.tobytes() + tail)
    raise ValueError(f"unknown kernel: {kernel!r}")


def run_bench(
    g: CooGraph,
    dataset: str,
    ordering: str,
    kernel: str,
    seed: int = 0,
    threads: int = 1,
    mode: str = "deterministic",
    repeats: int = 3,
    w: int = 1,
    line_size: int = DEFAULT_LINE_SIZE,
    compute_locality: bool = True,
) -> list[BenchRecord]:
    """Run reorder -> [sort] -> convert -> kernel and time each phase.

    The kernel runs ``repeats`` times; one record is emitted per repeat
    plus a median record.  The COO-sort phase applies only to triangle
    counting, whose set intersections need sorted rows.

    Raises
    ------
    MalformedGraphError
        Triangle counting on input that is not symmetric and simple.
    """
    if ordering not in ORDERING_CHOICES:
        raise ValueError(f"unknown ordering: {ordering!r}")
    if kernel not in KERNEL_CHOICES:
        raise ValueError(f"unknown kernel: {kernel!r}")
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    if kernel == "tc" and not is_symmetric_simple(g):
        raise MalformedGraphError(
            "triangle counting needs a symmetrized, deduplicated, loop-free "
            "input graph (ingest with --symmetrize)"
        )

    effective_mode = "relaxed" if ordering == "boba-relaxed" else mode

    def reorder_and_apply():
        p = compute_ordering(g, ordering, seed=seed, mode=mode, thread_hint=threads)
        return p, apply_permutation(g, p)

    (p, relabeled), reorder_ms = _ms(reorder_and_apply)

    sort_ms = None
    working = relabeled
    if kernel == "tc":
        working, sort_ms = _ms(sort_coo_by_destination, relabeled)

    # the timed conversion is the standard forward COO -> CSR; the SpMV
    # kernel consumes those rows directly (row dot products, i.e. the pull
    # pattern over the dataset's reversed graph)
    csr, convert_ms = _ms(coo_to_csr, working)

    source = int(p.label[0]) if g.n else 0
    x_ones = np.ones(g.n, dtype=np.float64)

    def run_kernel():
        if kernel == "spmv":
            return spmv_pull(csr, x_ones), 1
        if kernel == "pr":
            return pagerank(csr, return_iterations=True)
        if kernel == "tc":
            return triangle_count(csr), 1
        return sssp(csr, source, return_rounds=True)

    loc: LocalityReport | None = None
    if compute_locality and g.m:
        loc = locality_report(g, p, w=w, line_size=line_size)

    base = dict(
        dataset=dataset,
        kernel=kernel,
        ordering=ordering,
        mode=effective_mode,
        seed=seed,
        threads=threads,
        reorder_ms=reorder_ms,
        sort_ms=sort_ms,
        convert_ms=convert_ms,
        n=g.n,
        m=g.m,
        nscore=loc.nscore if loc else None,
        gscore=loc.gscore if loc else None,
        w=loc.w if loc else None,
        nbr=loc.nbr if loc else None,
        bandwidth=loc.bandwidth if loc else None,
        line_size=loc.line_size if loc else None,
    )

    records = []
    kernel_times = []
    for rep in range(repeats):
        (result, iterations), kernel_ms = _ms(run_kernel)
        kernel_times.append(kernel_ms)
        records.append(BenchRecord(
            repeat=str(rep),
            kernel_ms=kernel_ms,
            end_to_end_ms=round((reorder_ms + (sort_ms or 0.0) + convert_ms + kernel_ms) * 1e3) / 1e3,
            iterations=iterations,
            kernel_checksum=_kernel_checksum(kernel, result),
            **base,
        ))
    med = round(statistics.median(kernel_times) * 1e3) / 1e3
    records.append(BenchRecord(
        repeat="median",
        kernel_ms=med,
        end_to_end_ms=round((reorder_ms + (sort_ms or 0.0) + convert_ms + med) * 1e3) / 1e3,
        iterations=records[-1].iterations,
        kernel_checksum=records[-1].kernel_checksum,
        **base,
    ))
    return records


def records_to_frame(records: list[BenchRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.to_row() for r in records], columns=BenchRecord.columns())


_RATIO_PHASES = ("reorder_ms", "convert_ms", "kernel_ms", "end_to_end_ms")


def compare_records(frame: pd.DataFrame) -> pd.DataFrame:
    """Normalize median benchmark rows against the random baseline.

    Joins on (dataset, kernel); every group must contain a row with the
    ``random`` ordering.  Speedups are baseline time over observed time,
    so values above 1 beat random.

    Raises
    ------
    BobaError
        If a (dataset, kernel) group lacks the random baseline row.
    """
    med = frame[frame["repeat"].astype(str) == "median"].copy()
    if med.empty:
        raise BobaError("no median rows found in the benchmark records")
    out = []
    for (dataset, kernel), grp in med.groupby(["dataset", "kernel"], sort=True):
        baseline = grp[grp["ordering"] == "random"]
        if baseline.empty:
            raise BobaError(
                f"missing 'random' baseline row for dataset={dataset!r}, kernel={kernel!r}"
            )
        base = baseline.iloc[0]
        for _, row in grp.iterrows():
            entry = {
                "dataset": dataset,
                "kernel": kernel,
                "ordering": row["ordering"],
                **{ph: row[ph] for ph in _RATIO_PHASES},
            }
            for ph in ("convert_ms", "kernel_ms", "end_to_end_ms"):
                entry[ph.replace("_ms", "_speedup")] = (
                    float(base[ph]) / float(row[ph]) if row[ph] else float("nan")
                )
            out.append(entry)
    return pd.DataFrame(out)
