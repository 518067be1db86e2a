import math

import numpy as np
import pytest

from ncwalk import (ContractViolation, NodeKernelParams, node_kernel_oracle,
                    node_partition_from_kernels, partitions_equal, refines,
                    walk_labels_oracle, walk_node_kernels, wl_refine)
from helpers import random_graph, star_graph, triangle


def test_params_validation():
    with pytest.raises(ContractViolation):
        NodeKernelParams(0, 1.0, wl_mode=True)
    with pytest.raises(ContractViolation):
        NodeKernelParams(2, -1.0)
    NodeKernelParams(2, math.inf)  # sentinel accepted


def test_triangle_all_pairs_khat_one():
    for alpha in (0.0, 0.1, 1000.0, math.inf):
        kernels = walk_node_kernels(triangle(), NodeKernelParams(3, alpha))
        for i in range(4):
            assert np.array_equal(kernels.series.khat[i], np.ones(9))


def test_star_center_leaf_value():
    g = star_graph(3)
    # oracle first: cumulative values 10 (center), 2 (leaf), 4 (cross)
    assert node_kernel_oracle(g, 0, 0, 1) == (9.0, 10.0)
    assert node_kernel_oracle(g, 1, 1, 1) == (1.0, 2.0)
    assert node_kernel_oracle(g, 0, 1, 1) == (3.0, 4.0)
    kernels = walk_node_kernels(g, NodeKernelParams(1, 0.1))
    assert kernels.khat_value(0, 1, 1) == pytest.approx(math.exp(-0.4), rel=1e-12)


def test_alpha_zero_gives_one_for_all_product_pairs():
    rng = np.random.default_rng(30)
    g = random_graph(rng)
    kernels = walk_node_kernels(g, NodeKernelParams(3, 0.0))
    for i in range(4):
        assert np.array_equal(kernels.series.khat[i],
                              np.ones(kernels.product.node_count))


def test_absent_pairs_read_zero():
    g = star_graph(2, labels=[0, 1, 1])
    kernels = walk_node_kernels(g, NodeKernelParams(2, 0.5))
    assert kernels.khat_value(0, 1, 2) == 0.0
    assert kernels.k_value(0, 1, 2) == 0.0


def test_oracle_equivalence_random():
    rng = np.random.default_rng(31)
    for _ in range(12):
        g = random_graph(rng, max_nodes=7)
        kernels = walk_node_kernels(g, NodeKernelParams(4, 1.0))
        for u in range(g.node_count):
            for v in range(u, g.node_count):
                for i in range(5):
                    k_i = kernels.k_value(u, v, i)
                    k_oracle, kplus_oracle = node_kernel_oracle(g, u, v, i)
                    if g.labels[u] != g.labels[v]:
                        assert k_i == 0.0
                        assert k_oracle == 0.0
                    else:
                        assert k_i == k_oracle
                        assert kernels.kplus_value(u, v, i) == kplus_oracle


def test_khat_one_iff_same_cumulative_walk_label():
    # khat = 1 <=> kernel distance 0 <=> equal cumulative walk labels
    rng = np.random.default_rng(32)
    for _ in range(10):
        g = random_graph(rng, max_nodes=7)
        kernels = walk_node_kernels(g, NodeKernelParams(3, 0.7))
        for i in range(4):
            oracle = walk_labels_oracle(g, i, cumulative=True)
            for pid, (u, v) in enumerate(kernels.product.node_pairs):
                same = oracle[u] == oracle[v]
                assert (kernels.series.khat[i][pid] == 1.0) == same
                assert (kernels.series.dist[i][pid] == 0.0) == same


def test_inf_alpha_image_is_zero_one():
    rng = np.random.default_rng(33)
    for _ in range(10):
        g = random_graph(rng)
        kernels = walk_node_kernels(g, NodeKernelParams(3, math.inf))
        for khat in kernels.series.khat:
            assert set(np.unique(khat).tolist()) <= {0.0, 1.0}


def test_wl_mode_partitions_match_color_refinement():
    rng = np.random.default_rng(34)
    for _ in range(10):
        g = random_graph(rng, max_nodes=10)
        kernels = walk_node_kernels(g, NodeKernelParams(5, math.inf, wl_mode=True))
        seq = wl_refine(g, max_iter=5)
        for i in range(6):
            expected = seq.steps[min(i, len(seq.steps) - 1)]
            got = node_partition_from_kernels(kernels, i)
            assert partitions_equal(got, expected)


def test_partition_iteration_zero_is_initial_labels():
    rng = np.random.default_rng(35)
    g = random_graph(rng)
    kernels = walk_node_kernels(g, NodeKernelParams(2, math.inf))
    assert partitions_equal(node_partition_from_kernels(kernels, 0), g.labels)


def test_star_partition_without_reencoding():
    # cumulative walk labels at i=2 still separate center from leaves
    kernels = walk_node_kernels(star_graph(3), NodeKernelParams(2, math.inf))
    labels = node_partition_from_kernels(kernels, 2)
    assert labels[1] == labels[2] == labels[3] != labels[0]


def test_khat_nonincreasing_in_alpha():
    rng = np.random.default_rng(36)
    g = random_graph(rng)
    alphas = [0.0, 0.01, 0.1, 1.0, 1000.0]
    stacked = [walk_node_kernels(g, NodeKernelParams(3, a)).series.khat
               for a in alphas]
    for i in range(4):
        for lo, hi in zip(stacked[1:], stacked[:-1]):
            assert (lo[i] <= hi[i] + 1e-15).all()


def test_cauchy_schwarz_bound():
    rng = np.random.default_rng(37)
    for _ in range(10):
        g = random_graph(rng)
        kernels = walk_node_kernels(g, NodeKernelParams(4, 1.0))
        for i in range(5):
            for pid, (u, v) in enumerate(kernels.product.node_pairs):
                kuv = kernels.series.k[i][pid]
                assert kuv * kuv <= (kernels.k_value(u, u, i)
                                     * kernels.k_value(v, v, i)) + 1e-9


def test_walk_vector_invariants():
    rng = np.random.default_rng(38)
    g = random_graph(rng)
    kernels = walk_node_kernels(g, NodeKernelParams(4, 0.5))
    prev = None
    for i in range(5):
        k, kplus, khat = (kernels.series.k[i], kernels.series.kplus[i],
                          kernels.series.khat[i])
        assert (k >= 0).all() and (kplus >= k).all()
        assert ((0.0 <= khat) & (khat <= 1.0)).all()
        if prev is not None:
            assert (kplus >= prev).all()
        prev = kplus
        for u in range(g.node_count):
            assert kernels.khat_value(u, u, i) == 1.0
        for pid, (u, v) in enumerate(kernels.product.node_pairs):
            assert khat[pid] == kernels.khat_value(v, u, i)


def test_non_transitive_relation_detected():
    # synthetic zero mask: 0~1 and 1~2 but not 0~2 must be rejected
    g = star_graph(2)  # product of size 9 over 3 uniform-label nodes
    kernels = walk_node_kernels(g, NodeKernelParams(1, math.inf))
    mask = np.zeros(kernels.product.node_count, dtype=bool)
    for u, v in [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (1, 2), (2, 1)]:
        mask[kernels.product.pair_id(u, v)] = True
    kernels.series.zero[1] = mask
    with pytest.raises(ContractViolation, match="alpha"):
        node_partition_from_kernels(kernels, 1)


def test_wl_mode_refines_previous_iteration():
    rng = np.random.default_rng(39)
    g = random_graph(rng, max_nodes=10)
    kernels = walk_node_kernels(g, NodeKernelParams(4, math.inf, wl_mode=True))
    parts = [node_partition_from_kernels(kernels, i) for i in range(5)]
    for later, earlier in zip(parts[1:], parts[:-1]):
        assert refines(later, earlier)
