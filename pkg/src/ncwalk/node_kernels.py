"""Walk-based node kernels computed on direct product graphs.

The engine iterates the walk-count vectors w and w+ over a product-graph
part and turns kernel distances into Gaussian node similarities via the
kernel trick; the optional re-encoding step lifts the expressiveness to
that of color refinement.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, WalkCountOverflowWarning
from .graphs import LabeledGraph
from .product import ProductGraph, direct_product
from .refinement import DEFAULT_ENUM_BUDGET, intern_labels, walk_label_multiset

INF_ALPHA = math.inf  # exact-indicator sentinel: khat = [distance == 0]


@dataclass(frozen=True)
class NodeKernelParams:
    """Iteration count, Gaussian scale alpha (math.inf = exact indicator), re-encoding flag."""

    length: int
    alpha: float
    wl_mode: bool = False

    def __post_init__(self):
        if self.length < 0:
            raise ContractViolation("length must be nonnegative")
        if not (self.alpha >= 0):
            raise ContractViolation("alpha must be nonnegative")
        if self.wl_mode and self.length < 1:
            raise ContractViolation("wl_mode requires length >= 1")


@dataclass
class WalkVectors:
    """Current walk counts w and their running sum w+ over product nodes."""

    w: np.ndarray
    w_plus: np.ndarray


@dataclass
class WalkKernelSeries:
    """Per-iteration vectors over one product-graph part (index 0 = start state)."""

    k: list[np.ndarray]          # k_i values (w after i steps)
    kplus: list[np.ndarray]      # cumulative k+_i values
    khat: list[np.ndarray]       # Gaussian node kernel values
    zero: list[np.ndarray]       # boolean masks: kernel distance == 0
    dist: list[np.ndarray]       # kernel distances k+_uu + k+_vv - 2 k+_uv
    diag: np.ndarray | None      # (length+1, n) self-similarities, self parts only
    wl_mode: bool = False


def _zero_mask(dist: np.ndarray, self_l: np.ndarray, self_r: np.ndarray,
               exact: bool) -> np.ndarray:
    if exact:
        return dist == 0
    # after a finite-alpha re-encoding the vectors are no longer integral
    return dist <= 1e-9 * np.maximum(self_l + self_r, 1.0)


def walk_kernel_series(product: ProductGraph, length: int, alpha: float,
                       wl_mode: bool, *,
                       self_index: np.ndarray | None = None,
                       diag_left: np.ndarray | None = None,
                       diag_right: np.ndarray | None = None) -> WalkKernelSeries:
    """Run the iterated walk-kernel recursion on one product-graph part.

    For a product of a graph with itself pass `self_index` (node -> product
    id of the diagonal pair); self-similarities are then read off the
    evolving w+ vector and returned. For a cross part pass the
    per-iteration self-similarity tables `diag_left`/`diag_right` of the
    two factors, computed beforehand under the same (alpha, wl_mode).
    """
    self_mode = self_index is not None
    if not self_mode and (diag_left is None or diag_right is None):
        raise ContractViolation("cross parts need both factors' self-similarities")

    n = product.node_count
    adjacency = product.adjacency
    lefts, rights = product.left_nodes, product.right_nodes
    exact = (not wl_mode) or math.isinf(alpha)

    state = WalkVectors(w=np.ones(n), w_plus=np.ones(n))
    series = WalkKernelSeries(
        k=[state.w.copy()], kplus=[state.w_plus.copy()],
        khat=[np.ones(n)], zero=[np.ones(n, dtype=bool)],
        dist=[np.zeros(n)], diag=None, wl_mode=wl_mode)
    diag_rows = [np.ones(len(self_index))] if self_mode else None

    warned = False
    for i in range(1, length + 1):
        state.w = adjacency @ state.w
        if not warned and state.w.size and state.w.max() > 2.0**52:
            warnings.warn("walk counts exceed 2^52; values may lose integer "
                          "exactness", WalkCountOverflowWarning, stacklevel=2)
            warned = True
        state.w_plus = state.w_plus + state.w
        series.k.append(state.w.copy())
        series.kplus.append(state.w_plus.copy())

        if self_mode:
            row = state.w_plus[self_index]
            diag_rows.append(row.copy())
            self_l, self_r = row[lefts], row[rights]
        else:
            self_l = diag_left[i][lefts]
            self_r = diag_right[i][rights]
        dist = np.maximum(self_l + self_r - 2.0 * state.w_plus, 0.0)

        zero = _zero_mask(dist, self_l, self_r, exact)
        if math.isinf(alpha):
            khat = zero.astype(np.float64)
        else:
            khat = np.minimum(np.exp(-alpha * dist), 1.0)
        series.khat.append(khat)
        series.zero.append(zero)
        series.dist.append(dist)

        if wl_mode:
            state.w = khat.copy()

    if self_mode:
        series.diag = np.stack(diag_rows, axis=0)
    return series


@dataclass
class NodePairKernels:
    """Per-iteration node-pair kernel values over the product of a graph with itself.

    Entries for node pairs with unequal labels are absent from the product
    graph; they read as 0 by convention.
    """

    product: ProductGraph
    params: NodeKernelParams
    series: WalkKernelSeries

    @property
    def node_count(self) -> int:
        return self.series.diag.shape[1]

    @property
    def iterations(self) -> int:
        return len(self.series.k) - 1

    def _lookup(self, vectors: list[np.ndarray], u: int, v: int, i: int) -> float:
        pid = self.product.pair_id(u, v)
        return float(vectors[i][pid]) if pid >= 0 else 0.0

    def k_value(self, u: int, v: int, i: int) -> float:
        return self._lookup(self.series.k, u, v, i)

    def kplus_value(self, u: int, v: int, i: int) -> float:
        return self._lookup(self.series.kplus, u, v, i)

    def khat_value(self, u: int, v: int, i: int) -> float:
        return self._lookup(self.series.khat, u, v, i)


def walk_node_kernels(g: LabeledGraph, params: NodeKernelParams) -> NodePairKernels:
    """All-pairs walk node kernels of a graph (or disjoint union) per the product-graph recursion."""
    product = direct_product(g, g)
    self_index = np.array([product.pair_id(u, u) for u in range(g.node_count)],
                          dtype=np.int64)
    series = walk_kernel_series(product, params.length, params.alpha,
                                params.wl_mode, self_index=self_index)
    return NodePairKernels(product, params, series)


def node_kernel_oracle(g: LabeledGraph, u: int, v: int, length: int,
                       budget: int = DEFAULT_ENUM_BUDGET) -> tuple[float, float]:
    """(k_length, k+_length) for one node pair by explicit double walk enumeration.

    Dirac node kernel on labels: a pair of walks contributes 1 iff the
    label sequences coincide. Test oracle only.
    """
    total = 0.0
    k_last = 0.0
    for i in range(length + 1):
        cu = walk_label_multiset(g, u, i, cumulative=False, budget=budget)
        cv = walk_label_multiset(g, v, i, cumulative=False, budget=budget)
        k_last = float(sum(cnt * cv.get(seq, 0) for seq, cnt in cu.items()))
        total += k_last
    return k_last, total


def node_partition_from_kernels(kernels: NodePairKernels, i: int) -> np.ndarray:
    """Group nodes by khat = 1 at iteration i (zero kernel distance).

    Valid in the exact-indicator regime; with finite alpha the relation can
    fail transitivity, which raises and advises the infinity sentinel.
    """
    if not (0 <= i <= kernels.iterations):
        raise ContractViolation(f"iteration {i} not available (0..{kernels.iterations})")
    n = kernels.node_count
    zero = kernels.series.zero[i]
    partners: list[set[int]] = [set() for _ in range(n)]
    lefts = kernels.product.left_nodes
    rights = kernels.product.right_nodes
    for pid in np.nonzero(zero)[0].tolist():
        partners[int(lefts[pid])].add(int(rights[pid]))
    canon = [frozenset(s) for s in partners]
    for u in range(n):
        for v in partners[u]:
            if canon[v] != canon[u]:
                raise ContractViolation(
                    "khat = 1 is not an equivalence relation here; use "
                    "alpha = math.inf (exact indicator) for partitions")
    return intern_labels([tuple(sorted(s)) for s in partners])
