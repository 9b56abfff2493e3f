"""Lightweight graph reordering for edge-list pipelines.

The package covers the full ingest -> reorder -> CSR-conversion -> kernel
workflow: order-by-attachment reordering (sequential, parallel, and a
relaxed racy variant) next to random/degree/hub/RCM baselines, formal
locality metrics with brute-force oracles, synthetic generators, desk
scale graph kernels, and a timed benchmark CLI.
"""

from .errors import BobaError, MalformedGraphError, ParseError, UndefinedMetricError
from .graph import (
    CooGraph,
    CsrGraph,
    Permutation,
    apply_permutation,
    coo_to_csr,
    degrees,
    is_symmetric_simple,
    sort_coo_by_destination,
    symmetrize,
    total_degrees,
)
from .io import (
    LabelMap,
    randomize_labels,
    read_edge_list,
    read_graph,
    read_matrix_market,
    write_edge_list,
)
from .ordering import (
    BobaOrder,
    DegreeOrder,
    HubOrder,
    IdentityOrder,
    RandomOrder,
    RcmOrder,
    boba_parallel,
    boba_sequential,
    degree_order,
    hub_order,
    identity_order,
    random_order,
    rcm_order,
)
from .metrics import (
    LocalityReport,
    bandwidth,
    brute_force_optimal_nscore,
    gscore,
    locality_report,
    nbr,
    nscore,
)
from .generators import LcdParams, generate_grid, generate_lcd, generate_regular_sorted
from .kernels import pagerank, spmv_pull, spmv_push, sssp, triangle_count
from .bench import BenchRecord, compare_records, run_bench

__version__ = "0.1.0"

__all__ = [
    "BobaError", "MalformedGraphError", "ParseError", "UndefinedMetricError",
    "CooGraph", "CsrGraph", "Permutation",
    "apply_permutation", "coo_to_csr", "degrees", "total_degrees",
    "sort_coo_by_destination", "symmetrize", "is_symmetric_simple",
    "LabelMap", "read_edge_list", "read_matrix_market", "read_graph",
    "write_edge_list", "randomize_labels",
    "boba_sequential", "boba_parallel", "random_order", "degree_order",
    "hub_order", "rcm_order", "identity_order",
    "BobaOrder", "RandomOrder", "DegreeOrder", "HubOrder", "RcmOrder",
    "IdentityOrder",
    "nscore", "gscore", "nbr", "bandwidth", "brute_force_optimal_nscore",
    "LocalityReport", "locality_report",
    "LcdParams", "generate_lcd", "generate_regular_sorted", "generate_grid",
    "spmv_pull", "spmv_push", "pagerank", "triangle_count", "sssp",
    "BenchRecord", "run_bench", "compare_records",
    "__version__",
]
