"""Combinatorial node-refinement algorithms.

Color refinement, Morgan's extended connectivity, walk partitions, exact
walk labelings by enumeration (test oracles), unfolding trees, and the
refinement partial order on labelings.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceededError, ContractViolation, WalkCountOverflowWarning
from .graphs import LabeledGraph, adjacency_matvec

DEFAULT_ENUM_BUDGET = 10**7

Labeling = np.ndarray  # one dense label id per node; only equality is meaningful


def intern_labels(keys: list) -> np.ndarray:
    """Assign dense ids 0..k-1 to per-node keys, deterministically (sorted key order)."""
    mapping = {key: i for i, key in enumerate(sorted(set(keys)))}
    return np.array([mapping[key] for key in keys], dtype=np.int64)


def refines(a: Labeling, b: Labeling) -> bool:
    """True iff a(u) = a(v) implies b(u) = b(v) for all node pairs."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ContractViolation(f"labeling lengths differ: {a.shape} vs {b.shape}")
    image: dict[int, int] = {}
    for la, lb in zip(a.tolist(), b.tolist()):
        if image.setdefault(la, lb) != lb:
            return False
    return True


def partitions_equal(a: Labeling, b: Labeling) -> bool:
    return refines(a, b) and refines(b, a)


@dataclass
class RefinementSequence:
    steps: list[np.ndarray]
    converged: bool

    def __len__(self) -> int:
        return len(self.steps)


def wl_refine(g: LabeledGraph, max_iter: int | None = None) -> RefinementSequence:
    """Weisfeiler-Leman color refinement.

    Each iteration relabels node v by the pair (old label, sorted multiset
    of neighbor labels), interned to fresh dense ids. Stops after max_iter
    iterations (None = unbounded) or when the partition stabilizes,
    whichever comes first.
    """
    cur = g.labels.astype(np.int64)
    steps = [cur.copy()]
    converged = False
    i = 0
    while max_iter is None or i < max_iter:
        keys = [(int(cur[v]), tuple(sorted(cur[g.neighbors(v)].tolist())))
                for v in range(g.node_count)]
        nxt = intern_labels(keys)
        steps.append(nxt)
        i += 1
        if partitions_equal(nxt, cur):
            converged = True
            break
        cur = nxt
    return RefinementSequence(steps, converged)


def wl_stable_labeling(g: LabeledGraph) -> np.ndarray:
    return wl_refine(g).steps[-1]


def morgan_ec(g: LabeledGraph) -> tuple[np.ndarray, list[np.ndarray]]:
    """Morgan's extended connectivity.

    ec1 = degree; ec_{i+1}(v) = sum of ec_i over neighbors. Iterates while
    the number of distinct values strictly increases; returns the last
    strictly-finer vector and the full history (which includes the first
    vector that failed to increase the class count).
    """
    ec = adjacency_matvec(g, np.ones(g.node_count))
    history = [ec.astype(np.int64)]
    while True:
        nxt = adjacency_matvec(g, ec)
        history.append(nxt.astype(np.int64))
        if len(np.unique(nxt)) > len(np.unique(ec)):
            ec = nxt
        else:
            return ec.astype(np.int64), history


@dataclass
class WalkPartitionMatrix:
    """Per-node counts of walks of length 0..l (columns of [1, A1, ..., A^l 1])."""

    rows: np.ndarray  # shape (n, l + 1), integer walk counts

    @property
    def labeling(self) -> np.ndarray:
        return intern_labels([tuple(row) for row in self.rows.tolist()])

    def truncated_labeling(self, l: int) -> np.ndarray:
        return intern_labels([tuple(row[: l + 1]) for row in self.rows.tolist()])


def walk_partition(g: LabeledGraph, l: int) -> WalkPartitionMatrix:
    if l < 0:
        raise ContractViolation("walk length must be nonnegative")
    cols = [np.ones(g.node_count)]
    for _ in range(l):
        cols.append(adjacency_matvec(g, cols[-1]))
    rows = np.stack(cols, axis=1)
    if rows.size and rows.max() > 2.0**52:
        warnings.warn("walk counts exceed 2^52; values may lose integer exactness",
                      WalkCountOverflowWarning, stacklevel=2)
    return WalkPartitionMatrix(rows.astype(np.int64))


def enumerate_walks(g: LabeledGraph, v: int, length: int,
                    budget: int = DEFAULT_ENUM_BUDGET) -> list[tuple[int, ...]]:
    """All walks of exactly `length` starting at v, as explicit node tuples."""
    walks = [(v,)]
    produced = 1
    for _ in range(length):
        nxt = []
        for w in walks:
            for u in g.neighbors(w[-1]).tolist():
                nxt.append(w + (u,))
                produced += 1
                if produced > budget:
                    raise BudgetExceededError(
                        f"walk enumeration exceeded budget of {budget}")
        walks = nxt
    return walks


def walk_label_multiset(g: LabeledGraph, v: int, length: int, cumulative: bool,
                        budget: int = DEFAULT_ENUM_BUDGET) -> Counter:
    """Multiset of label sequences of walks from v (length exactly, or up to, `length`)."""
    lengths = range(length + 1) if cumulative else (length,)
    out: Counter = Counter()
    for i in lengths:
        for w in enumerate_walks(g, v, i, budget):
            out[tuple(int(g.labels[x]) for x in w)] += 1
    return out


def walk_labels_oracle(g: LabeledGraph, length: int, cumulative: bool,
                       budget: int = DEFAULT_ENUM_BUDGET) -> np.ndarray:
    """Walk labeling by explicit enumeration (test oracle; cost Theta(max_deg^length) per node).

    Nodes receive equal ids iff their multisets of walk label sequences are
    equal; cumulative=True pools all lengths up to `length`.
    """
    if length < 0:
        raise ContractViolation("walk length must be nonnegative")
    keys = []
    for v in range(g.node_count):
        ms = walk_label_multiset(g, v, length, cumulative, budget)
        keys.append(tuple(sorted(ms.items())))
    return intern_labels(keys)


@dataclass
class UnfoldingTree:
    """Depth-n unrolling of the neighborhood of a node, preserving labels."""

    node: int
    label: int
    depth: int
    children: tuple["UnfoldingTree", ...]

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


def unfolding_tree(g: LabeledGraph, v: int, depth: int,
                   budget: int = DEFAULT_ENUM_BUDGET) -> UnfoldingTree:
    if depth < 0:
        raise ContractViolation("depth must be nonnegative")
    count = 0

    def build(node: int, d: int) -> UnfoldingTree:
        nonlocal count
        count += 1
        if count > budget:
            raise BudgetExceededError(f"unfolding tree exceeded budget of {budget}")
        if d == 0:
            children: tuple[UnfoldingTree, ...] = ()
        else:
            children = tuple(build(int(u), d - 1) for u in g.neighbors(node))
        return UnfoldingTree(node, int(g.labels[node]), d, children)

    return build(v, depth)


def tree_root_to_leaf_sequences(t: UnfoldingTree) -> Counter:
    """Multiset of label sequences along root-to-leaf paths reaching full depth.

    Paths cut short by a neighbor-less node are dropped; they correspond to
    no walk of the requested length.
    """
    if t.depth == 0:
        return Counter({(t.label,): 1})
    out: Counter = Counter()
    for child in t.children:
        for seq, cnt in tree_root_to_leaf_sequences(child).items():
            out[(t.label,) + seq] += cnt
    return out
