"""Direct product graphs and walk counting on them."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import ContractViolation, WalkCountOverflowWarning
from .graphs import LabeledGraph


@dataclass
class ProductGraph:
    """Graph on label-matched node pairs of two factor graphs.

    Product nodes are ordered lexicographically by (left node, right node).
    ((u,u'),(v,v')) is an edge iff (u,v) is an edge of the left factor and
    (u',v') an edge of the right factor.
    """

    left_nodes: np.ndarray   # left factor node per product node
    right_nodes: np.ndarray  # right factor node per product node
    adjacency: sp.csr_matrix
    _index: np.ndarray = field(repr=False)  # (n_left, n_right) -> product id or -1

    @property
    def node_count(self) -> int:
        return len(self.left_nodes)

    @property
    def node_pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.left_nodes.tolist(), self.right_nodes.tolist()))

    def pair_id(self, u: int, v: int) -> int:
        """Product node id of the pair (u, v), or -1 if labels mismatch."""
        return int(self._index[u, v])


def direct_product(g: LabeledGraph, h: LabeledGraph) -> ProductGraph:
    """Direct product of two graphs sharing a label dictionary.

    Construction iterates label-bucketed edges of both factors, never the
    full pair space: only label-compatible node pairs and edge pairs are
    ever touched. An empty product is a valid result.
    """
    # Label-matched node pairs, lexicographic by (u, v).
    match = g.labels[:, None] == h.labels[None, :]
    lefts, rights = np.nonzero(match)
    index = np.full((g.node_count, h.node_count), -1, dtype=np.int64)
    index[lefts, rights] = np.arange(len(lefts))

    # Directed edge lists (both orientations; self-loops once), bucketed by
    # endpoint-label pairs on the right factor.
    def directed(graph: LabeledGraph) -> tuple[np.ndarray, np.ndarray]:
        us, vs = [], []
        for a, b in graph.edges:
            us.append(a)
            vs.append(b)
            if a != b:
                us.append(b)
                vs.append(a)
        return np.array(us, dtype=np.int64), np.array(vs, dtype=np.int64)

    gu, gv = directed(g)
    hu, hv = directed(h)

    def bucket(us: np.ndarray, vs: np.ndarray, labels: np.ndarray) -> dict:
        out: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}
        pairs: dict[tuple[int, int], tuple[list, list]] = {}
        for i in range(len(us)):
            key = (int(labels[us[i]]), int(labels[vs[i]]))
            pairs.setdefault(key, ([], []))
            pairs[key][0].append(int(us[i]))
            pairs[key][1].append(int(vs[i]))
        for key, (a, b) in pairs.items():
            out[key] = (np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))
        return out

    g_buckets = bucket(gu, gv, g.labels)
    h_buckets = bucket(hu, hv, h.labels)

    rows_parts, cols_parts = [], []
    for key, (ga, gb) in g_buckets.items():
        if key not in h_buckets:
            continue
        ha, hb = h_buckets[key]
        p = index[ga[:, None], ha[None, :]].ravel()
        q = index[gb[:, None], hb[None, :]].ravel()
        rows_parts.append(p)
        cols_parts.append(q)

    n = len(lefts)
    if rows_parts:
        rows = np.concatenate(rows_parts)
        cols = np.concatenate(cols_parts)
    else:
        rows = np.empty(0, dtype=np.int64)
        cols = np.empty(0, dtype=np.int64)
    adjacency = sp.csr_matrix(
        (np.ones(len(rows), dtype=np.float64), (rows, cols)), shape=(n, n))
    return ProductGraph(lefts.astype(np.int64), rights.astype(np.int64),
                        adjacency, index)


def iterate_walk_vectors(adjacency: sp.spmatrix, w0: np.ndarray,
                         length: int) -> list[np.ndarray]:
    """Walk-count recursion w_k = A w_{k-1} from an initial vector.

    Extension hook for node-kernel-weighted products: pass a weighted
    adjacency and a kernel-valued initial vector. The library itself only
    instantiates the Dirac case (0/1 adjacency, all-ones start).
    """
    if length < 0:
        raise ContractViolation("walk length must be nonnegative")
    w = np.asarray(w0, dtype=np.float64)
    vectors = [w.copy()]
    warned = False
    for _ in range(length):
        w = adjacency @ w
        if not warned and w.size and w.max() > 2.0**52:
            warnings.warn("walk counts exceed 2^52; values may lose integer "
                          "exactness", WalkCountOverflowWarning, stacklevel=2)
            warned = True
        vectors.append(w.copy())
    return vectors


def count_walks(p: ProductGraph, length: int) -> tuple[list[np.ndarray], np.ndarray]:
    """Per-node walk counts w_k and their sums for k = 0..length."""
    vectors = iterate_walk_vectors(p.adjacency, np.ones(p.node_count), length)
    sums = np.array([v.sum() for v in vectors])
    return vectors, sums


def union_product_parts(
        g: LabeledGraph, h: LabeledGraph
) -> tuple[ProductGraph, ProductGraph, ProductGraph]:
    """The three distinct components of (g union h) x (g union h).

    Returns (g x g, g x h, h x h); the h x g component mirrors g x h and is
    omitted. Walk computations over the union product decompose exactly
    over the parts.
    """
    return direct_product(g, g), direct_product(g, h), direct_product(h, h)
