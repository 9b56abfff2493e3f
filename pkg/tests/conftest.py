import numpy as np
import pytest

from boba import CooGraph

# The 13-city road graph used as the golden reordering example: a near
# uniform-degree network whose edge list interleaves each road with its
# reverse.  Cities are listed here in the order the reorder must produce.
ROAD_CITIES = [
    "Toronto", "Midland", "Rapids", "Guelph", "Chicago", "Boulder",
    "Vancouver", "Seattle", "Nanaimo", "Eureka", "LA", "Puebla", "DC",
]

_ROADS = [
    ("Toronto", "Midland"),
    ("Toronto", "Rapids"),
    ("Toronto", "Guelph"),
    ("Toronto", "Chicago"),
    ("Chicago", "Boulder"),
    ("Vancouver", "Boulder"),
    ("Seattle", "Nanaimo"),
    ("Seattle", "Eureka"),
    ("Seattle", "LA"),
    ("LA", "Puebla"),
    ("DC", "Puebla"),
    ("DC", "Toronto"),
]

# 24 directed edges: every road followed immediately by its reverse.
ROAD_EDGE_TOKENS = [pair for road in _ROADS for pair in (road, road[::-1])]


@pytest.fixture(scope="session")
def road_graph() -> CooGraph:
    """The road graph with vertex IDs assigned in expected-order position
    (Toronto = 0 ... DC = 12)."""
    ids = {c: k for k, c in enumerate(ROAD_CITIES)}
    I = np.array([ids[u] for u, v in ROAD_EDGE_TOKENS])
    J = np.array([ids[v] for u, v in ROAD_EDGE_TOKENS])
    return CooGraph(len(ROAD_CITIES), I, J)


@pytest.fixture()
def road_file(tmp_path):
    """The road graph as a token edge list on disk."""
    path = tmp_path / "roads.el"
    path.write_text(
        "".join(f"{u} {v}\n" for u, v in ROAD_EDGE_TOKENS), encoding="utf-8"
    )
    return path


def random_coo(rng, n_max=50, m_max=200, weighted=False, n_min=1) -> CooGraph:
    """A random directed multigraph; self-loops, duplicate edges, and
    isolated vertices all occur."""
    n = int(rng.integers(n_min, n_max + 1))
    m = int(rng.integers(0, m_max + 1))
    I = rng.integers(0, n, m)
    J = rng.integers(0, n, m)
    w = rng.integers(1, 10, m).astype(float) if weighted else None
    return CooGraph(n, I, J, w)
