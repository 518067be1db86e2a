import math

import numpy as np
import pytest
from numpy.linalg import eigvalsh

from ncwalk import (BudgetExceededError, ContractViolation, GramMatrix,
                    GraphKernelSpec, LabeledGraph, gram_matrix,
                    label_histogram_kernel, ncw_gram_grid, ncw_kernel,
                    ncw_unlabeled_fast, rw_gram_grid, rw_kernel, wl_gram_grid,
                    wl_subtree_kernel, write_gram_csv, write_gram_precomputed)
from helpers import path_graph, random_graph, triangle


def test_spec_validation():
    with pytest.raises(ContractViolation):
        GraphKernelSpec("nope", 1)
    with pytest.raises(ContractViolation):
        GraphKernelSpec("ncwwl", 0)
    with pytest.raises(ContractViolation):
        GraphKernelSpec("ncw", 1, beta=-0.5)
    with pytest.raises(ContractViolation):
        GraphKernelSpec("rw", 2, weights=(1.0, 1.0))  # needs length+1 weights


# -- fixed-length random walk kernel -----------------------------------------

def test_rw_p2_example():
    p2 = path_graph(2)
    assert rw_kernel(p2, p2, GraphKernelSpec("rw", 1)) == 8.0


def test_rw_length_zero_counts_matching_label_pairs():
    rng = np.random.default_rng(50)
    for _ in range(10):
        g, h = random_graph(rng), random_graph(rng)
        expected = sum(int(g.labels[u] == h.labels[v])
                       for u in range(g.node_count)
                       for v in range(h.node_count))
        assert rw_kernel(g, h, GraphKernelSpec("rw", 0)) == expected


def test_rw_triangle_example():
    assert rw_kernel(triangle(), triangle(), GraphKernelSpec("rw", 1)) == 45.0


def test_rw_custom_weights():
    spec = GraphKernelSpec("rw", 1, weights=(2.0, 0.5))
    assert rw_kernel(triangle(), triangle(), spec) == 2.0 * 9 + 0.5 * 36


def test_rw_symmetry():
    rng = np.random.default_rng(51)
    for _ in range(10):
        g, h = random_graph(rng), random_graph(rng)
        spec = GraphKernelSpec("rw", 3)
        assert rw_kernel(g, h, spec) == rw_kernel(h, g, spec)


# -- subtree kernel ------------------------------------------------------------

def test_wl_subtree_p3_example():
    assert wl_subtree_kernel(path_graph(3), path_graph(3), 1) == 14.0


def test_wl_subtree_iteration_zero_uniform():
    g = random_graph(np.random.default_rng(52), n_labels=1)
    assert wl_subtree_kernel(g, g, 0) == g.node_count**2


def test_wl_subtree_disjoint_alphabets():
    assert wl_subtree_kernel(triangle([0, 0, 0]), triangle([1, 1, 1]), 3) == 0.0


def test_wl_subtree_symmetry():
    rng = np.random.default_rng(53)
    g, h = random_graph(rng), random_graph(rng)
    assert wl_subtree_kernel(g, h, 2) == wl_subtree_kernel(h, g, 2)


# -- label histogram baselines --------------------------------------------------

def test_vl_el_examples():
    p3 = path_graph(3)
    assert label_histogram_kernel(p3, p3, "node") == 9.0
    p2 = path_graph(2)
    assert label_histogram_kernel(p2, p2, "edge") == 1.0
    assert label_histogram_kernel(triangle([0] * 3), triangle([1] * 3), "node") == 0.0
    with pytest.raises(ContractViolation):
        label_histogram_kernel(p2, p2, "vertex")


# -- node-centric walk kernel ----------------------------------------------------

def test_ncw_triangle_examples():
    tri = triangle()
    assert ncw_kernel(tri, tri, GraphKernelSpec("ncw", 1, alpha=0.0, beta=1.0)) == 45.0
    assert ncw_kernel(tri, tri, GraphKernelSpec("ncw", 1, alpha=1000.0, beta=0.0)) == 18.0


def test_ncw_disjoint_alphabets_zero():
    g = triangle([0, 0, 0])
    h = triangle([1, 1, 1])
    for beta in (0.0, 0.5, 1.0):
        spec = GraphKernelSpec("ncw", 2, alpha=0.1, beta=beta)
        assert ncw_kernel(g, h, spec) == 0.0


def test_ncw_equals_rw_for_alpha0_beta1():
    rng = np.random.default_rng(54)
    for _ in range(25):
        g, h = random_graph(rng), random_graph(rng)
        for l in (0, 1, 3):
            a = ncw_kernel(g, h, GraphKernelSpec("ncw", l, alpha=0.0, beta=1.0))
            b = rw_kernel(g, h, GraphKernelSpec("rw", l))
            assert a == b  # exact in the integer regime


def test_ncwwl_equals_wl_subtree():
    rng = np.random.default_rng(55)
    for _ in range(15):
        g, h = random_graph(rng), random_graph(rng)
        for l in (1, 2, 4):
            a = ncw_kernel(g, h, GraphKernelSpec("ncwwl", l, alpha=math.inf,
                                                 beta=0.0))
            assert a == wl_subtree_kernel(g, h, l)


def test_ncw_symmetry_and_nonnegativity():
    rng = np.random.default_rng(56)
    for _ in range(10):
        g, h = random_graph(rng), random_graph(rng)
        spec = GraphKernelSpec("ncw", 2, alpha=0.1, beta=0.5)
        k_gh = ncw_kernel(g, h, spec)
        assert k_gh >= 0.0
        assert k_gh == pytest.approx(ncw_kernel(h, g, spec), rel=1e-12)


# -- unlabeled fast path -----------------------------------------------------------

def test_fast_path_triangle():
    spec = GraphKernelSpec("ncw", 1, alpha=0.0, beta=1.0)
    assert ncw_unlabeled_fast(triangle(), triangle(), spec) == 45.0


def test_fast_path_single_node_graphs():
    g = LabeledGraph(1)
    for l in (0, 1, 3):
        assert ncw_unlabeled_fast(g, g, GraphKernelSpec("ncw", l, alpha=1.0,
                                                        beta=0.0)) == 1 + l
        assert ncw_unlabeled_fast(g, g, GraphKernelSpec("ncw", l, alpha=1.0,
                                                        beta=1.0)) == 1.0


def test_fast_path_matches_product_route():
    rng = np.random.default_rng(57)
    for _ in range(30):
        g = random_graph(rng, n_labels=1)
        h = random_graph(rng, n_labels=1)
        for alpha in (0.0, 0.1, 1000.0, math.inf):
            for beta in (0.0, 0.5, 1.0):
                spec = GraphKernelSpec("ncw", 4, alpha=alpha, beta=beta)
                fast = ncw_unlabeled_fast(g, h, spec)
                slow = ncw_kernel(g, h, spec)
                assert fast == pytest.approx(slow, rel=1e-9, abs=1e-12)


def test_fast_path_rejects_multiple_labels():
    g = path_graph(3, labels=[0, 1, 0])
    with pytest.raises(ContractViolation):
        ncw_unlabeled_fast(g, g, GraphKernelSpec("ncw", 1))
    h = path_graph(3, labels=[1, 1, 1])
    with pytest.raises(ContractViolation):
        ncw_unlabeled_fast(path_graph(3), h, GraphKernelSpec("ncw", 1))


# -- gram assembly -------------------------------------------------------------------

def test_gram_single_graph():
    tri = triangle()
    spec = GraphKernelSpec("ncw", 1, alpha=0.0, beta=1.0)
    gm = gram_matrix([tri], spec)
    assert gm.values.shape == (1, 1)
    assert gm.values[0, 0] == ncw_kernel(tri, tri, spec)


def test_gram_symmetric_and_matches_pairwise():
    rng = np.random.default_rng(58)
    graphs = [random_graph(rng) for _ in range(6)]
    spec = GraphKernelSpec("ncw", 2, alpha=0.1, beta=0.5)
    gm = gram_matrix(graphs, spec)
    assert np.array_equal(gm.values, gm.values.T)
    for i in range(6):
        for j in range(6):
            assert gm.values[i, j] == pytest.approx(
                ncw_kernel(graphs[i], graphs[j], spec), rel=1e-12)


def test_gram_thread_determinism():
    rng = np.random.default_rng(59)
    graphs = [random_graph(rng) for _ in range(8)]
    spec = GraphKernelSpec("ncw", 3, alpha=1.0, beta=1.0)
    a = gram_matrix(graphs, spec, threads=1)
    b = gram_matrix(graphs, spec, threads=4)
    assert np.array_equal(a.values, b.values)


def test_gram_memory_guard_names_pair():
    graphs = [random_graph(np.random.default_rng(60), max_nodes=6, n_labels=1)
              for _ in range(3)]
    with pytest.raises(BudgetExceededError, match=r"\(0, "):
        gram_matrix(graphs, GraphKernelSpec("ncw", 1), max_product_nodes=3)


def test_gram_grid_matches_single_specs():
    rng = np.random.default_rng(61)
    graphs = [random_graph(rng) for _ in range(5)]
    grid = ncw_gram_grid(graphs, "ncw", [0, 2], [0.1, math.inf], [0.0, 1.0])
    assert len(grid) == 8
    for (l, a, b), gm in grid.items():
        single = gram_matrix(graphs, GraphKernelSpec("ncw", l, alpha=a, beta=b))
        np.testing.assert_allclose(gm.values, single.values, rtol=1e-12)


def test_rw_wl_grids_match_pairwise():
    rng = np.random.default_rng(62)
    graphs = [random_graph(rng) for _ in range(5)]
    rw_grid = rw_gram_grid(graphs, [0, 1, 3])
    wl_grid = wl_gram_grid(graphs, [0, 2])
    for l, gm in rw_grid.items():
        for i in range(5):
            for j in range(5):
                assert gm.values[i, j] == rw_kernel(
                    graphs[i], graphs[j], GraphKernelSpec("rw", l))
    for l, gm in wl_grid.items():
        for i in range(5):
            for j in range(5):
                assert gm.values[i, j] == wl_subtree_kernel(graphs[i], graphs[j], l)


def test_gram_psd_small_collections():
    rng = np.random.default_rng(63)
    graphs = [random_graph(rng) for _ in range(10)]
    specs = [GraphKernelSpec("rw", 3), GraphKernelSpec("wl", 3),
             GraphKernelSpec("vl"), GraphKernelSpec("el"),
             GraphKernelSpec("ncw", 3, alpha=0.1, beta=0.0),
             GraphKernelSpec("ncw", 3, alpha=0.1, beta=1.0)]
    for spec in specs:
        gm = gram_matrix(graphs, spec)
        assert eigvalsh(gm.values).min() >= -1e-8


def test_gram_validate_probe():
    bad = GramMatrix(np.array([[1.0, 5.0], [5.0, 1.0]]), GraphKernelSpec("vl"))
    with pytest.raises(ContractViolation):
        bad.validate()
    asym = GramMatrix(np.array([[1.0, 2.0], [1.0, 1.0]]), GraphKernelSpec("vl"))
    with pytest.raises(ContractViolation):
        asym.validate()


# -- exports ------------------------------------------------------------------------

def test_write_gram_csv_roundtrip(tmp_path):
    rng = np.random.default_rng(64)
    graphs = [random_graph(rng) for _ in range(4)]
    gm = gram_matrix(graphs, GraphKernelSpec("wl", 2))
    out = tmp_path / "gram.csv"
    write_gram_csv(gm, out)
    lines = out.read_text().splitlines()
    assert lines[0] == "0,1,2,3"
    values = np.array([[float(x) for x in line.split(",")] for line in lines[1:]])
    np.testing.assert_array_equal(values, gm.values)


def test_write_gram_precomputed_format(tmp_path):
    graphs = [triangle(), path_graph(3)]
    gm = gram_matrix(graphs, GraphKernelSpec("rw", 1))
    out = tmp_path / "gram.txt"
    write_gram_precomputed(gm, np.array([1, -1]), out)
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    first = lines[0].split()
    assert first[0] == "1" and first[1] == "0:1"
    assert first[2] == "1:" + "%.17g" % gm.values[0, 0]
    second = lines[1].split()
    assert second[0] == "-1" and second[1] == "0:2"


def test_export_determinism(tmp_path):
    rng = np.random.default_rng(65)
    graphs = [random_graph(rng) for _ in range(4)]
    gm = gram_matrix(graphs, GraphKernelSpec("ncw", 2, alpha=0.1, beta=0.5))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_gram_csv(gm, a)
    write_gram_csv(gram_matrix(graphs, gm.spec), b)
    assert a.read_bytes() == b.read_bytes()
