"""Labeled undirected graphs, dataset ingestion, and sparse adjacency operations."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import ContractViolation, ParseError, StructuralError


class LabeledGraph:
    """Undirected graph with integer node labels.

    Nodes are dense 0-based indices. Edges are stored once as unordered
    pairs; self-loops are allowed (stored once, adjacency weight 1).
    Instances are immutable after construction and safe to share.
    """

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] = (),
                 labels: Sequence[int] | np.ndarray | None = None):
        n = int(node_count)
        if n < 0:
            raise ContractViolation("node_count must be nonnegative")
        self.node_count = n

        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise StructuralError(f"edge ({u}, {v}) out of range for {n} nodes")
            seen.add((u, v) if u <= v else (v, u))
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))

        if labels is None:
            lab = np.zeros(n, dtype=np.int64)
        else:
            lab = np.asarray(labels, dtype=np.int64).copy()
            if lab.shape != (n,):
                raise ContractViolation(
                    f"labels must have exactly {n} entries, got shape {lab.shape}")
        lab.setflags(write=False)
        self.labels = lab

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def alphabet(self) -> frozenset[int]:
        return frozenset(np.unique(self.labels).tolist())

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """Sparse symmetric adjacency; a self-loop contributes a single 1 on the diagonal."""
        rows, cols = [], []
        for u, v in self.edges:
            rows.append(u)
            cols.append(v)
            if u != v:
                rows.append(v)
                cols.append(u)
        data = np.ones(len(rows), dtype=np.float64)
        return sp.csr_matrix((data, (rows, cols)),
                             shape=(self.node_count, self.node_count))

    def neighbors(self, u: int) -> np.ndarray:
        a = self.adjacency
        return a.indices[a.indptr[u]:a.indptr[u + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.adjacency.indptr)

    def __repr__(self) -> str:
        return (f"LabeledGraph(n={self.node_count}, m={self.edge_count}, "
                f"labels={len(self.alphabet)})")


@dataclass
class GraphCollection:
    """Ordered list of graphs with optional class labels and identifiers."""

    graphs: list[LabeledGraph]
    class_labels: np.ndarray | None = None
    names: list[str] | None = None
    label_map: dict[int, int] | None = None
    source_indices: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.class_labels is not None:
            self.class_labels = np.asarray(self.class_labels, dtype=np.int64)
            if len(self.class_labels) != len(self.graphs):
                raise ContractViolation(
                    "class_labels must align index-for-index with graphs")

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)

    def __getitem__(self, i: int) -> LabeledGraph:
        return self.graphs[i]


def adjacency_matvec(g: LabeledGraph, x: np.ndarray) -> np.ndarray:
    """result[u] = sum of x over neighbors of u, by sparse traversal."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.node_count,):
        raise ContractViolation(
            f"vector length {x.shape} does not match node count {g.node_count}")
    return g.adjacency @ x


def disjoint_union(g: LabeledGraph, h: LabeledGraph) -> tuple[LabeledGraph, int]:
    """Disjoint union of g and h; h's node i becomes offset + i with offset = |V(g)|."""
    offset = g.node_count
    edges = list(g.edges) + [(u + offset, v + offset) for u, v in h.edges]
    labels = np.concatenate([g.labels, h.labels])
    return LabeledGraph(offset + h.node_count, edges, labels), offset


def disjoint_union_all(graphs: Sequence[LabeledGraph]) -> tuple[LabeledGraph, list[int]]:
    """Disjoint union of many graphs; returns the union and each part's node offset."""
    offsets, edges, labels = [], [], []
    total = 0
    for g in graphs:
        offsets.append(total)
        edges.extend((u + total, v + total) for u, v in g.edges)
        labels.append(g.labels)
        total += g.node_count
    merged = np.concatenate(labels) if labels else np.zeros(0, dtype=np.int64)
    return LabeledGraph(total, edges, merged), offsets


def _read_lines(path: Path) -> list[str]:
    # LF or CRLF accepted; blank lines tolerated at EOF only (line numbers
    # are positional in the indicator and label files).
    with open(path, "r", encoding="ascii") as fh:
        raw = [line.strip() for line in fh]
    while raw and raw[-1] == "":
        raw.pop()
    return raw


def _parse_int(text: str, path: Path, lineno: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{path}:{lineno}: expected integer, got {text!r}") from None


def parse_tudataset(directory: str | Path, name: str) -> GraphCollection:
    """Load a dataset in the TUDataset text format.

    Requires ``<name>_A.txt`` and ``<name>_graph_indicator.txt`` in
    ``directory``; ``<name>_node_labels.txt`` and ``<name>_graph_labels.txt``
    are optional. Nodes are re-indexed per graph starting at 0, duplicate
    (reverse-direction) edges are merged, and raw node labels are interned
    to dense ids via a collection-wide dictionary. A missing node-label
    file yields the uniform label 0.
    """
    directory = Path(directory)
    a_path = directory / f"{name}_A.txt"
    ind_path = directory / f"{name}_graph_indicator.txt"
    for p in (a_path, ind_path):
        if not p.is_file():
            raise ParseError(f"required file not found: {p}")

    ind_lines = _read_lines(ind_path)
    node_graph = np.empty(len(ind_lines), dtype=np.int64)
    for i, line in enumerate(ind_lines):
        if line == "":
            raise ParseError(f"{ind_path}:{i + 1}: blank line")
        node_graph[i] = _parse_int(line, ind_path, i + 1)
    n_total = len(node_graph)
    if n_total == 0:
        raise ParseError(f"{ind_path}: empty indicator file")

    graph_ids = np.unique(node_graph)
    graph_of = {gid: k for k, gid in enumerate(graph_ids.tolist())}
    n_graphs = len(graph_ids)

    # global 1-based node id -> (graph index, local 0-based index)
    local_index = np.empty(n_total, dtype=np.int64)
    counts = np.zeros(n_graphs, dtype=np.int64)
    graph_idx = np.empty(n_total, dtype=np.int64)
    for i in range(n_total):
        k = graph_of[int(node_graph[i])]
        graph_idx[i] = k
        local_index[i] = counts[k]
        counts[k] += 1

    lab_path = directory / f"{name}_node_labels.txt"
    label_map: dict[int, int] | None = None
    if lab_path.is_file():
        lab_lines = _read_lines(lab_path)
        if len(lab_lines) != n_total:
            raise ParseError(
                f"{lab_path}: expected {n_total} node label lines, got {len(lab_lines)}")
        raw_labels = np.empty(n_total, dtype=np.int64)
        for i, line in enumerate(lab_lines):
            if line == "":
                raise ParseError(f"{lab_path}:{i + 1}: blank line")
            raw_labels[i] = _parse_int(line, lab_path, i + 1)
        label_map = {raw: k for k, raw in enumerate(sorted(set(raw_labels.tolist())))}
        node_labels = np.array([label_map[int(r)] for r in raw_labels], dtype=np.int64)
    else:
        node_labels = np.zeros(n_total, dtype=np.int64)

    edge_sets: list[set[tuple[int, int]]] = [set() for _ in range(n_graphs)]
    for lineno, line in enumerate(_read_lines(a_path), start=1):
        if line == "":
            raise ParseError(f"{a_path}:{lineno}: blank line")
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError(f"{a_path}:{lineno}: expected 'u, v', got {line!r}")
        u = _parse_int(parts[0].strip(), a_path, lineno)
        v = _parse_int(parts[1].strip(), a_path, lineno)
        if not (1 <= u <= n_total and 1 <= v <= n_total):
            raise StructuralError(
                f"{a_path}:{lineno}: node index out of range (1..{n_total})")
        gu, gv = graph_idx[u - 1], graph_idx[v - 1]
        if gu != gv:
            raise StructuralError(
                f"{a_path}:{lineno}: edge between different graphs "
                f"({int(graph_ids[gu])} and {int(graph_ids[gv])})")
        a, b = int(local_index[u - 1]), int(local_index[v - 1])
        edge_sets[gu].add((a, b) if a <= b else (b, a))

    graphs = []
    for k in range(n_graphs):
        mask = graph_idx == k
        graphs.append(LabeledGraph(int(counts[k]), edge_sets[k], node_labels[mask]))

    class_labels = None
    gl_path = directory / f"{name}_graph_labels.txt"
    if gl_path.is_file():
        gl_lines = _read_lines(gl_path)
        if len(gl_lines) != n_graphs:
            raise ParseError(
                f"{gl_path}: expected {n_graphs} graph label lines, got {len(gl_lines)}")
        class_labels = np.empty(n_graphs, dtype=np.int64)
        for i, line in enumerate(gl_lines):
            if line == "":
                raise ParseError(f"{gl_path}:{i + 1}: blank line")
            class_labels[i] = _parse_int(line, gl_path, i + 1)

    return GraphCollection(graphs, class_labels=class_labels, label_map=label_map)
