import heapq

import numpy as np
import pytest

from boba import (
    CooGraph,
    Permutation,
    apply_permutation,
    coo_to_csr,
    pagerank,
    sort_coo_by_destination,
    spmv_pull,
    spmv_push,
    sssp,
    symmetrize,
    triangle_count,
)
from conftest import random_coo


def rev_csr(g):
    return coo_to_csr(g.reverse())


def dense_matrix(g):
    A = np.zeros((g.n, g.n))
    w = g.effective_weights()
    np.add.at(A, (g.I, g.J), w)
    return A


def dijkstra(g, source):
    adj = [[] for _ in range(g.n)]
    w = g.effective_weights()
    for k in range(g.m):
        adj[int(g.I[k])].append((int(g.J[k]), float(w[k])))
    dist = np.full(g.n, np.inf)
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, wt in adj[u]:
            nd = d + wt
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def triangle_count_cubic(g):
    A = dense_matrix(symmetrize(g, drop_self_loops=True)) > 0
    n = g.n
    total = 0
    for a in range(n):
        for b in range(a + 1, n):
            if not A[a, b]:
                continue
            for c in range(b + 1, n):
                if A[a, c] and A[b, c]:
                    total += 1
    return total


def tc_ready(g):
    """Symmetrize, drop loops, and produce the sorted-row CSR."""
    return coo_to_csr(sort_coo_by_destination(symmetrize(g, drop_self_loops=True)))


class TestSpmv:
    def test_path(self):
        g = CooGraph(3, [0, 1], [1, 2])
        y = spmv_pull(rev_csr(g), [1.0, 2.0, 3.0])
        assert y.tolist() == [0.0, 1.0, 2.0]

    def test_empty(self):
        y = spmv_pull(rev_csr(CooGraph(4, [], [])), np.ones(4))
        assert y.tolist() == [0.0] * 4

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            spmv_pull(rev_csr(CooGraph(3, [0], [1])), np.ones(2))

    def test_against_dense_oracle(self):
        rng = np.random.default_rng(21)
        for _ in range(40):
            g = random_coo(rng, n_max=50, m_max=200, weighted=True)
            x = rng.normal(size=g.n)
            expected = dense_matrix(g).T @ x
            got = spmv_pull(rev_csr(g), x)
            assert np.allclose(got, expected, atol=1e-12, rtol=0)

    def test_pull_equals_push(self):
        rng = np.random.default_rng(33)
        for _ in range(40):
            g = random_coo(rng, n_max=40, m_max=150, weighted=True)
            x = rng.normal(size=g.n)
            pull = spmv_pull(rev_csr(g), x)
            push = spmv_push(coo_to_csr(g), x)
            assert np.allclose(pull, push, atol=1e-12, rtol=0)

    def test_bit_exact_equivariance_on_integer_weights(self):
        rng = np.random.default_rng(44)
        for _ in range(50):
            g = random_coo(rng, n_max=40, m_max=150, weighted=True)
            x = rng.integers(-5, 6, g.n).astype(float)
            p = Permutation(rng.permutation(g.n))
            y = spmv_pull(rev_csr(g), x)
            y_relabeled = spmv_pull(rev_csr(apply_permutation(g, p)), x[p.order])
            assert np.array_equal(y[p.order], y_relabeled)


class TestPageRank:
    def test_self_loop_absorbs(self):
        assert pagerank(coo_to_csr(CooGraph(1, [0], [0]))).tolist() == [1.0]

    def test_two_cycle_symmetric(self):
        pr = pagerank(coo_to_csr(CooGraph(2, [0, 1], [1, 0])))
        assert np.allclose(pr, [0.5, 0.5], atol=1e-12)

    def test_sums_to_one(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            g = random_coo(rng, n_max=40, m_max=120)
            if g.n == 0:
                continue
            pr = pagerank(coo_to_csr(g))
            assert abs(pr.sum() - 1.0) < 1e-9

    def test_against_dense_power_iteration(self):
        rng = np.random.default_rng(71)
        damping, tol, iters = 0.85, 1e-12, 300
        for _ in range(25):
            g = random_coo(rng, n_max=30, m_max=90, weighted=True)
            if g.n == 0:
                continue
            A = dense_matrix(g)
            out_w = A.sum(axis=1)
            P = np.divide(A, out_w[:, None], out=np.zeros_like(A),
                          where=out_w[:, None] > 0)
            x = np.full(g.n, 1.0 / g.n)
            for _ in range(iters):
                dangling = x[out_w == 0].sum() / g.n
                x_next = damping * (P.T @ x + dangling) + (1 - damping) / g.n
                if np.abs(x_next - x).sum() < tol:
                    x = x_next
                    break
                x = x_next
            got = pagerank(coo_to_csr(g), damping=damping, tol=tol, max_iters=iters)
            assert np.allclose(got, x, atol=1e-8, rtol=0)

    def test_invalid_damping(self):
        with pytest.raises(ValueError):
            pagerank(coo_to_csr(CooGraph(2, [0], [1])), damping=1.0)

    def test_equivariance_within_tolerance(self):
        rng = np.random.default_rng(90)
        for _ in range(25):
            g = random_coo(rng, n_max=30, m_max=100)
            if g.n == 0:
                continue
            p = Permutation(rng.permutation(g.n))
            pr = pagerank(coo_to_csr(g))
            pr_relabeled = pagerank(coo_to_csr(apply_permutation(g, p)))
            assert np.allclose(pr[p.order], pr_relabeled, atol=1e-9, rtol=0)


class TestTriangleCount:
    def test_k3(self):
        g = CooGraph(3, [0, 1, 2], [1, 2, 0])
        assert triangle_count(tc_ready(g)) == 1

    def test_k4(self):
        I, J = zip(*[(a, b) for a in range(4) for b in range(4) if a != b])
        assert triangle_count(tc_ready(CooGraph(4, list(I), list(J)))) == 4

    def test_erdos_renyi_against_cubic_oracle(self):
        rng = np.random.default_rng(14)
        n, p = 60, 0.1
        mask = rng.random((n, n)) < p
        I, J = np.nonzero(np.triu(mask, 1))
        g = CooGraph(n, I, J)
        assert triangle_count(tc_ready(g)) == triangle_count_cubic(g)

    def test_unsorted_rows_rejected(self):
        from boba import CsrGraph

        bad = CsrGraph(3, [0, 2, 3, 4], [2, 1, 2, 0])
        with pytest.raises(ValueError):
            triangle_count(bad)

    def test_invariance_under_relabeling(self):
        rng = np.random.default_rng(50)
        for _ in range(30):
            g = random_coo(rng, n_max=25, m_max=80)
            p = Permutation(rng.permutation(g.n))
            assert triangle_count(tc_ready(g)) == triangle_count(
                tc_ready(apply_permutation(g, p)))


class TestSssp:
    def test_path(self):
        g = CooGraph(3, [0, 1], [1, 2])
        assert sssp(coo_to_csr(g), 0).tolist() == [0.0, 1.0, 2.0]

    def test_unreachable_component(self):
        g = CooGraph(4, [0, 2], [1, 3])
        dist = sssp(coo_to_csr(g), 0)
        assert dist.tolist()[:2] == [0.0, 1.0]
        assert np.isinf(dist[2:]).all()

    def test_source_out_of_range(self):
        with pytest.raises(ValueError):
            sssp(coo_to_csr(CooGraph(2, [0], [1])), 5)

    def test_negative_weight_rejected(self):
        g = CooGraph(2, [0], [1], [-1.0])
        with pytest.raises(ValueError):
            sssp(coo_to_csr(g), 0)

    def test_against_dijkstra(self):
        rng = np.random.default_rng(61)
        for _ in range(25):
            g = random_coo(rng, n_max=100, m_max=400, weighted=True, n_min=2)
            source = int(rng.integers(0, g.n))
            got = sssp(coo_to_csr(g), source)
            assert np.array_equal(got, dijkstra(g, source))

    def test_distance_multiset_invariant_under_relabeling(self):
        rng = np.random.default_rng(72)
        for _ in range(30):
            g = random_coo(rng, n_max=40, m_max=150, weighted=True, n_min=1)
            p = Permutation(rng.permutation(g.n))
            src = int(rng.integers(0, g.n))
            a = sssp(coo_to_csr(g), src)
            b = sssp(coo_to_csr(apply_permutation(g, p)), int(p.label[src]))
            assert np.array_equal(a[p.order], b)
