import numpy as np
import pytest

from boba import (
    CooGraph,
    ParseError,
    randomize_labels,
    read_edge_list,
    read_matrix_market,
    write_edge_list,
)
from boba.io import read_provenance
from conftest import ROAD_EDGE_TOKENS, random_coo


def edge_multiset(g):
    if g.weights is None:
        return sorted(zip(g.I.tolist(), g.J.tolist()))
    return sorted(zip(g.I.tolist(), g.J.tolist(), g.weights.tolist()))


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestMatrixMarket:
    def test_pattern_general(self, tmp_path):
        path = write(tmp_path, "a.mtx",
                     "%%MatrixMarket matrix coordinate pattern general\n"
                     "3 3 2\n1 2\n2 3\n")
        g, labels = read_matrix_market(path)
        assert g.n == 3 and g.I.tolist() == [0, 1] and g.J.tolist() == [1, 2]
        assert g.weights is None
        assert labels.id_to_token.tolist() == [1, 2, 3]

    def test_pattern_symmetric(self, tmp_path):
        path = write(tmp_path, "a.mtx",
                     "%%MatrixMarket matrix coordinate pattern symmetric\n"
                     "2 2 1\n2 1\n")
        g, _ = read_matrix_market(path)
        assert g.I.tolist() == [1, 0] and g.J.tolist() == [0, 1]

    def test_symmetric_diagonal_once(self, tmp_path):
        path = write(tmp_path, "a.mtx",
                     "%%MatrixMarket matrix coordinate pattern symmetric\n"
                     "2 2 2\n1 1\n2 1\n")
        g, _ = read_matrix_market(path)
        assert edge_multiset(g) == [(0, 0), (0, 1), (1, 0)]

    def test_real_weights(self, tmp_path):
        path = write(tmp_path, "a.mtx",
                     "%%MatrixMarket matrix coordinate real general\n"
                     "% a comment\n"
                     "1 1 1\n1 1 2.5\n")
        g, _ = read_matrix_market(path)
        assert g.I.tolist() == [0] and g.J.tolist() == [0]
        assert g.weights.tolist() == [2.5]

    def test_bad_header(self, tmp_path):
        path = write(tmp_path, "a.mtx",
                     "%%MatrixMarket matrix coordinate complex general\n1 1 0\n")
        with pytest.raises(ParseError) as exc:
            read_matrix_market(path)
        assert exc.value.line == 1

    def test_non_integer_coordinate(self, tmp_path):
        path = write(tmp_path, "a.mtx",
                     "%%MatrixMarket matrix coordinate pattern general\n"
                     "2 2 1\nx 1\n")
        with pytest.raises(ParseError) as exc:
            read_matrix_market(path)
        assert exc.value.line == 3

    def test_out_of_bounds_index(self, tmp_path):
        path = write(tmp_path, "a.mtx",
                     "%%MatrixMarket matrix coordinate pattern general\n"
                     "2 2 2\n1 2\n3 1\n")
        with pytest.raises(ParseError) as exc:
            read_matrix_market(path)
        assert exc.value.line == 4


class TestEdgeList:
    def test_tokens_first_appearance(self, tmp_path):
        path = write(tmp_path, "g.el", "a b\nb c\n")
        g, labels = read_edge_list(path)
        assert labels.id_to_token.tolist() == ["a", "b", "c"]
        assert g.I.tolist() == [0, 1] and g.J.tolist() == [1, 2]

    def test_self_loop_single_token(self, tmp_path):
        g, labels = read_edge_list(write(tmp_path, "g.el", "7 7\n"))
        assert g.n == 1 and g.I.tolist() == [0] and g.J.tolist() == [0]
        assert labels.id_to_token.tolist() == [7]

    def test_weighted(self, tmp_path):
        g, _ = read_edge_list(write(tmp_path, "g.el", "x y 3.5\n"))
        assert g.weights.tolist() == [3.5]

    def test_comments_and_blanks_skipped(self, tmp_path):
        g, _ = read_edge_list(write(tmp_path, "g.el", "# hello\n\n0 1\n"))
        assert g.m == 1

    def test_malformed_line_number(self, tmp_path):
        path = write(tmp_path, "g.el", "0 1\n0 1 2 3\n")
        with pytest.raises(ParseError) as exc:
            read_edge_list(path)
        assert exc.value.line == 2

    def test_bad_weight_line_number(self, tmp_path):
        path = write(tmp_path, "g.el", "0 1 2.0\n1 2 zz\n")
        with pytest.raises(ParseError) as exc:
            read_edge_list(path)
        assert exc.value.line == 2

    def test_empty_file(self, tmp_path):
        g, labels = read_edge_list(write(tmp_path, "g.el", "# nothing\n"))
        assert g.n == 0 and g.m == 0 and labels.n == 0


class TestWriteEdgeList:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(3)
        for k in range(120):
            g = random_coo(rng, n_max=30, m_max=80, weighted=bool(k % 2))
            # writing emits only vertices that appear in edges; compare as
            # multisets after a read that renames by first appearance
            path = tmp_path / "g.el"
            write_edge_list(g, path)
            back, labels = read_edge_list(path)
            orig_tokens = sorted(
                (int(labels.id_to_token[u]), int(labels.id_to_token[v]))
                for u, v in zip(back.I, back.J)
            )
            assert orig_tokens == sorted(zip(g.I.tolist(), g.J.tolist()))
            if g.weights is not None and g.m:
                assert sorted(back.weights.tolist()) == sorted(g.weights.tolist())

    def test_empty_graph_empty_file(self, tmp_path):
        path = tmp_path / "g.el"
        write_edge_list(CooGraph(5, [], []), path)
        assert path.read_text() == ""

    def test_road_graph_round_trips_exactly(self, road_graph, tmp_path):
        path = tmp_path / "g.el"
        write_edge_list(road_graph, path)
        back, labels = read_edge_list(path)
        # numeric IDs were assigned in first-appearance order already
        assert np.array_equal(back.I, road_graph.I)
        assert np.array_equal(back.J, road_graph.J)

    def test_provenance_round_trip(self, tmp_path):
        path = tmp_path / "g.el"
        write_edge_list(CooGraph(2, [0], [1]), path,
                        provenance=["generate:grid(rows=1,cols=2)", "randomize:seed=4"])
        assert read_provenance(path) == [
            "generate:grid(rows=1,cols=2)", "randomize:seed=4"]
        g, _ = read_edge_list(path)
        assert g.m == 1

    def test_weight_round_trip_is_exact(self, tmp_path):
        w = [0.1, 1 / 3, 2.5e-17]
        path = tmp_path / "g.el"
        write_edge_list(CooGraph(2, [0, 0, 1], [1, 1, 0], w), path)
        back, _ = read_edge_list(path)
        assert back.weights.tolist() == w


class TestRandomizeLabels:
    def test_single_vertex_identity(self):
        g = CooGraph(1, [0], [0])
        out, q = randomize_labels(g, 9)
        assert q.order.tolist() == [0]
        assert out.I.tolist() == [0]

    def test_deterministic(self):
        g = CooGraph(50, np.arange(49), np.arange(1, 50))
        a, qa = randomize_labels(g, 1234)
        b, qb = randomize_labels(g, 1234)
        assert np.array_equal(a.I, b.I) and np.array_equal(a.J, b.J)
        assert np.array_equal(qa.order, qb.order)

    def test_always_bijection(self):
        rng = np.random.default_rng(0)
        for seed in range(50):
            g = random_coo(rng, n_max=40)
            _, q = randomize_labels(g, seed)
            assert q.is_valid()

    def test_mean_displacement_near_a_third(self):
        # uniform permutations move a vertex n/3 positions on average
        n = 1000
        g = CooGraph(n, [], [])
        total = 0.0
        for seed in range(100):
            _, q = randomize_labels(g, seed)
            total += np.abs(q.order - np.arange(n)).mean()
        observed = total / 100
        expected = (n * n - 1) / (3 * n)
        assert abs(observed - expected) / expected < 0.10
