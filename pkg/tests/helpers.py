"""Small graph builders and seeded random generators shared by the tests."""

from __future__ import annotations

import numpy as np
from scipy.sparse.csgraph import connected_components

from ncwalk import LabeledGraph


def path_graph(n: int, labels=None) -> LabeledGraph:
    return LabeledGraph(n, [(i, i + 1) for i in range(n - 1)], labels)


def cycle_graph(n: int, labels=None) -> LabeledGraph:
    return LabeledGraph(n, [(i, (i + 1) % n) for i in range(n)], labels)


def star_graph(leaves: int, labels=None) -> LabeledGraph:
    """K_{1,leaves}; node 0 is the center."""
    return LabeledGraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)], labels)


def triangle(labels=None) -> LabeledGraph:
    return LabeledGraph(3, [(0, 1), (1, 2), (0, 2)], labels)


def complete_graph(n: int, labels=None) -> LabeledGraph:
    return LabeledGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)],
                        labels)


def random_graph(rng: np.random.Generator, max_nodes: int = 8,
                 n_labels: int = 3, min_nodes: int = 1,
                 p: float | None = None) -> LabeledGraph:
    n = int(rng.integers(min_nodes, max_nodes + 1))
    if p is None:
        p = float(rng.uniform(0.2, 0.6))
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.random() < p]
    labels = rng.integers(0, n_labels, size=n)
    return LabeledGraph(n, edges, labels)


def random_connected_graph(rng: np.random.Generator, n: int,
                           p: float) -> LabeledGraph:
    """Rejection-sampled connected unlabeled graph."""
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < p]
        g = LabeledGraph(n, edges)
        if n == 1 or connected_components(g.adjacency, directed=False)[0] == 1:
            return g
