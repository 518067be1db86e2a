"""Graph-level kernels and Gram-matrix assembly.

Implements the node-centric walk kernel (with and without the
expressiveness re-encoding), the fixed-length random walk kernel, the
color-refinement subtree kernel, node/edge label histogram baselines, the
self-similarity-cached Gram computation, and the matrix export formats.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceededError, ContractViolation
from .graphs import GraphCollection, LabeledGraph, disjoint_union_all
from .node_kernels import WalkKernelSeries, walk_kernel_series
from .product import direct_product, iterate_walk_vectors
from .refinement import wl_refine

KERNEL_KINDS = ("ncw", "ncwwl", "rw", "wl", "vl", "el")
DEFAULT_MAX_PRODUCT_NODES = 1_000_000


@dataclass(frozen=True)
class GraphKernelSpec:
    """Kernel family and its parameters.

    alpha/beta apply to ncw/ncwwl only; weights (one per walk length,
    default all ones) apply to rw only. alpha may be math.inf for the
    exact-indicator regime.
    """

    kind: str
    length: int = 1
    alpha: float = 0.0
    beta: float = 1.0
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ContractViolation(f"unknown kernel kind {self.kind!r}")
        if self.length < 0:
            raise ContractViolation("length must be nonnegative")
        if not (self.alpha >= 0) or self.beta < 0:
            raise ContractViolation("alpha and beta must be nonnegative")
        if self.kind == "ncwwl" and self.length < 1:
            raise ContractViolation("ncwwl requires length >= 1")
        if self.weights is not None:
            if len(self.weights) != self.length + 1:
                raise ContractViolation("need one weight per walk length 0..l")
            if any(w < 0 for w in self.weights):
                raise ContractViolation("weights must be nonnegative")


@dataclass
class GramMatrix:
    values: np.ndarray
    spec: GraphKernelSpec

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)

    def validate(self) -> None:
        """Symmetry, nonnegative diagonal, and a 2x2-minor PSD probe.

        The minor probe is skipped for fractional beta: entrywise
        fractional powers do not preserve positive semidefiniteness, and
        real collections do produce (small) genuine violations there.
        """
        v = self.values
        if not np.array_equal(v, v.T):
            raise ContractViolation("gram matrix is not symmetric")
        d = np.diag(v)
        if (d < 0).any():
            raise ContractViolation("gram matrix has a negative diagonal entry")
        if self.spec.kind in ("ncw", "ncwwl") and self.spec.beta != int(self.spec.beta):
            return
        minors = np.outer(d, d) - v * v
        tol = 1e-9 * np.maximum(np.outer(d, d), 1.0)
        if (minors < -tol).any():
            raise ContractViolation("gram matrix failed the 2x2 minor probe")


# ---------------------------------------------------------------------------
# pairwise kernels

def rw_kernel(g: LabeledGraph, h: LabeledGraph, spec: GraphKernelSpec) -> float:
    """Fixed-length random walk kernel: weighted product-graph walk sums."""
    if spec.kind != "rw":
        raise ContractViolation("spec.kind must be 'rw'")
    product = direct_product(g, h)
    vectors = iterate_walk_vectors(product.adjacency, np.ones(product.node_count),
                                   spec.length)
    weights = spec.weights or (1.0,) * (spec.length + 1)
    return float(sum(w * vec.sum() for w, vec in zip(weights, vectors)))


def _joint_wl_histograms(graphs: Sequence[LabeledGraph],
                         length: int) -> list[list[Counter]]:
    """Per-iteration label histograms per graph, refined jointly for comparability."""
    union, offsets = disjoint_union_all(graphs)
    seq = wl_refine(union, max_iter=length)
    bounds = offsets + [union.node_count]
    out = []
    for i in range(length + 1):
        labels = seq.steps[min(i, len(seq.steps) - 1)]
        out.append([Counter(labels[bounds[k]:bounds[k + 1]].tolist())
                    for k in range(len(graphs))])
    return out


def wl_subtree_kernel(g: LabeledGraph, h: LabeledGraph, length: int) -> float:
    """Subtree kernel: per-iteration matching node pairs under joint color refinement."""
    hists = _joint_wl_histograms([g, h], length)
    total = 0.0
    for hg, hh in ((pair[0], pair[1]) for pair in hists):
        total += sum(cnt * hh.get(lab, 0) for lab, cnt in hg.items())
    return float(total)


def _edge_label_histogram(g: LabeledGraph) -> Counter:
    out: Counter = Counter()
    for u, v in g.edges:
        a, b = int(g.labels[u]), int(g.labels[v])
        out[(a, b) if a <= b else (b, a)] += 1
    return out


def label_histogram_kernel(g: LabeledGraph, h: LabeledGraph,
                           mode: str = "node") -> float:
    """Dot product of node label histograms (mode='node') or edge endpoint-label histograms (mode='edge')."""
    if mode == "node":
        cg, ch = Counter(g.labels.tolist()), Counter(h.labels.tolist())
    elif mode == "edge":
        cg, ch = _edge_label_histogram(g), _edge_label_histogram(h)
    else:
        raise ContractViolation(f"mode must be 'node' or 'edge', got {mode!r}")
    return float(sum(cnt * ch.get(key, 0) for key, cnt in cg.items()))


def _self_series(g: LabeledGraph, length: int, alpha: float,
                 wl_mode: bool) -> WalkKernelSeries:
    product = direct_product(g, g)
    self_index = np.array([product.pair_id(u, u) for u in range(g.node_count)],
                          dtype=np.int64)
    return walk_kernel_series(product, length, alpha, wl_mode,
                              self_index=self_index)


def _series_contributions(series: WalkKernelSeries, alpha: float,
                          beta: float) -> np.ndarray:
    """Per-iteration sums of khat_i * k_i^beta over one product part.

    For a re-encoded (wl_mode) series the stored khat is used and alpha
    must match the series; otherwise khat is evaluated from the stored
    distances, so one pass serves every alpha.
    """
    out = np.zeros(len(series.k))
    for i in range(len(series.k)):
        k = series.k[i]
        if k.size == 0:
            continue
        if series.wl_mode:
            khat = series.khat[i]
        elif math.isinf(alpha):
            khat = series.zero[i].astype(np.float64)
        else:
            khat = np.exp(-alpha * series.dist[i])
        out[i] = float(np.dot(khat, np.power(k, beta)))
    return out


def _cross_series(g: LabeledGraph, h: LabeledGraph, length: int, alpha: float,
                  wl_mode: bool, diag_g: np.ndarray,
                  diag_h: np.ndarray) -> WalkKernelSeries:
    product = direct_product(g, h)
    return walk_kernel_series(product, length, alpha, wl_mode,
                              diag_left=diag_g, diag_right=diag_h)


def ncw_kernel(g: LabeledGraph, h: LabeledGraph, spec: GraphKernelSpec) -> float:
    """Node-centric walk kernel: sum over node pairs of khat_i * k_i^beta, i = 0..l.

    Runs the walk-kernel recursion on the g x h part with self-similarities
    taken from the g x g and h x h parts of the union product.
    """
    if spec.kind not in ("ncw", "ncwwl"):
        raise ContractViolation("spec.kind must be 'ncw' or 'ncwwl'")
    wl_mode = spec.kind == "ncwwl"
    sg = _self_series(g, spec.length, spec.alpha, wl_mode)
    sh = _self_series(h, spec.length, spec.alpha, wl_mode)
    cross = _cross_series(g, h, spec.length, spec.alpha, wl_mode, sg.diag, sh.diag)
    return float(_series_contributions(cross, spec.alpha, spec.beta).sum())


def ncw_unlabeled_fast(g: LabeledGraph, h: LabeledGraph,
                       spec: GraphKernelSpec) -> float:
    """Node-centric walk kernel for uniformly labeled graphs, no product graph.

    Walk counts factorize over the tensor product, so k_i(u,v) is the
    product of the factors' per-node walk counts. Requires both graphs to
    carry one shared label; the re-encoded variant is unsupported here.
    """
    if spec.kind != "ncw":
        raise ContractViolation("fast path supports kind 'ncw' only")
    alphabet = g.alphabet | h.alphabet
    if len(alphabet) > 1:
        raise ContractViolation(
            "fast path requires a single shared node label; got "
            f"alphabet {sorted(alphabet)}")
    cg = iterate_walk_vectors(g.adjacency, np.ones(g.node_count), spec.length)
    ch = iterate_walk_vectors(h.adjacency, np.ones(h.node_count), spec.length)
    cross = np.zeros((g.node_count, h.node_count))
    self_g = np.zeros(g.node_count)
    self_h = np.zeros(h.node_count)
    total = 0.0
    for i in range(spec.length + 1):
        cross += np.outer(cg[i], ch[i])
        self_g += cg[i] ** 2
        self_h += ch[i] ** 2
        dist = np.maximum(self_g[:, None] + self_h[None, :] - 2.0 * cross, 0.0)
        if math.isinf(spec.alpha):
            khat = (dist == 0).astype(np.float64)
        else:
            khat = np.minimum(np.exp(-spec.alpha * dist), 1.0)
        total += float(np.sum(khat * np.power(np.outer(cg[i], ch[i]), spec.beta)))
    return total


# ---------------------------------------------------------------------------
# gram assembly

def _label_histograms(collection: Iterable[LabeledGraph]) -> list[Counter]:
    return [Counter(g.labels.tolist()) for g in collection]


def _guard_product(hist_i: Counter, hist_j: Counter, pair: tuple[int, int],
                   max_product_nodes: int) -> None:
    nodes = sum(cnt * hist_j.get(lab, 0) for lab, cnt in hist_i.items())
    if nodes > max_product_nodes:
        raise BudgetExceededError(
            f"product graph for pair {pair} would have {nodes} nodes "
            f"(budget {max_product_nodes}); raise max_product_nodes to force")


def _pair_map(n_graphs: int, worker, threads: int = 1):
    """Evaluate worker(i, j) over the upper triangle; yields (i, j, result)."""
    pairs = [(i, j) for i in range(n_graphs) for j in range(i, n_graphs)]
    if threads <= 1:
        for i, j in pairs:
            yield i, j, worker(i, j)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = pool.map(lambda p: worker(*p), pairs)
            for (i, j), res in zip(pairs, results):
                yield i, j, res


def ncw_gram_grid(collection: GraphCollection | Sequence[LabeledGraph],
                  kind: str,
                  lengths: Sequence[int],
                  alphas: Sequence[float],
                  betas: Sequence[float],
                  *, max_product_nodes: int = DEFAULT_MAX_PRODUCT_NODES,
                  threads: int = 1) -> dict[tuple[int, float, float], GramMatrix]:
    """Gram matrices for a whole (length, alpha, beta) grid in shared passes.

    Per-graph self-similarities are computed once (per alpha in the
    re-encoded variant, once overall otherwise); each graph pair is then
    visited once per pass and all grid values are read off the same
    walk-vector series.
    """
    if kind not in ("ncw", "ncwwl"):
        raise ContractViolation("grid supports kinds 'ncw' and 'ncwwl'")
    graphs = list(collection)
    lengths = sorted(set(int(x) for x in lengths))
    max_len = lengths[-1]
    wl_mode = kind == "ncwwl"
    if wl_mode and lengths[0] < 1:
        raise ContractViolation("ncwwl requires length >= 1")
    hists = _label_histograms(graphs)
    n = len(graphs)

    out: dict[tuple[int, float, float], GramMatrix] = {}
    passes = [(a,) for a in alphas] if wl_mode else [tuple(alphas)]
    for pass_alphas in passes:
        series_alpha = pass_alphas[0]  # evolution is alpha-independent unless wl_mode
        selves = []
        for idx, g in enumerate(graphs):
            _guard_product(hists[idx], hists[idx], (idx, idx), max_product_nodes)
            selves.append(_self_series(g, max_len, series_alpha, wl_mode))

        # (alpha, beta) -> (length+1, n, n) per-iteration contribution stack
        contrib = {(a, b): np.zeros((max_len + 1, n, n))
                   for a in pass_alphas for b in betas}

        def worker(i: int, j: int):
            if i == j:
                series = selves[i]
            else:
                _guard_product(hists[i], hists[j], (i, j), max_product_nodes)
                series = _cross_series(graphs[i], graphs[j], max_len,
                                       series_alpha, wl_mode,
                                       selves[i].diag, selves[j].diag)
            return [(a, b, _series_contributions(series, a, b))
                    for a in pass_alphas for b in betas]

        for i, j, results in _pair_map(n, worker, threads):
            for a, b, values in results:
                contrib[(a, b)][:, i, j] = values
                contrib[(a, b)][:, j, i] = values

        for (a, b), stack in contrib.items():
            cumulative = np.cumsum(stack, axis=0)
            for l in lengths:
                gm = GramMatrix(cumulative[l],
                                GraphKernelSpec(kind, l, alpha=a, beta=b))
                gm.validate()
                out[(l, a, b)] = gm
    return out


def rw_gram_grid(collection: GraphCollection | Sequence[LabeledGraph],
                 lengths: Sequence[int],
                 *, max_product_nodes: int = DEFAULT_MAX_PRODUCT_NODES,
                 threads: int = 1) -> dict[int, GramMatrix]:
    """Unit-weight random-walk Gram matrices for every requested length, one pass."""
    graphs = list(collection)
    lengths = sorted(set(int(x) for x in lengths))
    max_len = lengths[-1]
    hists = _label_histograms(graphs)
    n = len(graphs)
    sums = np.zeros((max_len + 1, n, n))

    def worker(i: int, j: int):
        _guard_product(hists[i], hists[j], (i, j), max_product_nodes)
        product = direct_product(graphs[i], graphs[j])
        vectors = iterate_walk_vectors(product.adjacency,
                                       np.ones(product.node_count), max_len)
        return np.array([v.sum() for v in vectors])

    for i, j, values in _pair_map(n, worker, threads):
        sums[:, i, j] = values
        sums[:, j, i] = values

    cumulative = np.cumsum(sums, axis=0)
    out = {}
    for l in lengths:
        gm = GramMatrix(cumulative[l], GraphKernelSpec("rw", l))
        gm.validate()
        out[l] = gm
    return out


def wl_gram_grid(collection: GraphCollection | Sequence[LabeledGraph],
                 lengths: Sequence[int]) -> dict[int, GramMatrix]:
    """Subtree-kernel Gram matrices for every requested iteration count."""
    graphs = list(collection)
    lengths = sorted(set(int(x) for x in lengths))
    hists = _joint_wl_histograms(graphs, lengths[-1])
    n = len(graphs)
    per_iter = np.zeros((lengths[-1] + 1, n, n))
    for i, hrow in enumerate(hists):
        alphabet = sorted(set().union(*[h.keys() for h in hrow])) if hrow else []
        pos = {lab: k for k, lab in enumerate(alphabet)}
        mat = np.zeros((n, len(alphabet)))
        for gi, h in enumerate(hrow):
            for lab, cnt in h.items():
                mat[gi, pos[lab]] = cnt
        per_iter[i] = mat @ mat.T
    cumulative = np.cumsum(per_iter, axis=0)
    out = {}
    for l in lengths:
        gm = GramMatrix(cumulative[l], GraphKernelSpec("wl", l))
        gm.validate()
        out[l] = gm
    return out


def gram_matrix(collection: GraphCollection | Sequence[LabeledGraph],
                spec: GraphKernelSpec,
                *, max_product_nodes: int = DEFAULT_MAX_PRODUCT_NODES,
                threads: int = 1) -> GramMatrix:
    """Gram matrix of a collection under one kernel spec.

    Self-similarities are cached per graph before the pairwise pass; values
    are deterministic and independent of evaluation order and thread count.
    """
    graphs = list(collection)
    n = len(graphs)
    if spec.kind in ("ncw", "ncwwl"):
        grid = ncw_gram_grid(graphs, spec.kind, [spec.length], [spec.alpha],
                             [spec.beta], max_product_nodes=max_product_nodes,
                             threads=threads)
        gm = grid[(spec.length, spec.alpha, spec.beta)]
        return GramMatrix(gm.values, spec)
    if spec.kind == "rw":
        if spec.weights is None:
            return GramMatrix(rw_gram_grid(
                graphs, [spec.length], max_product_nodes=max_product_nodes,
                threads=threads)[spec.length].values, spec)
        hists = _label_histograms(graphs)
        values = np.zeros((n, n))

        def worker(i: int, j: int) -> float:
            _guard_product(hists[i], hists[j], (i, j), max_product_nodes)
            return rw_kernel(graphs[i], graphs[j], spec)

        for i, j, val in _pair_map(n, worker, threads):
            values[i, j] = values[j, i] = val
        gm = GramMatrix(values, spec)
        gm.validate()
        return gm
    if spec.kind == "wl":
        return GramMatrix(wl_gram_grid(graphs, [spec.length])[spec.length].values,
                          spec)
    if spec.kind in ("vl", "el"):
        mode = "node" if spec.kind == "vl" else "edge"
        values = np.zeros((n, n))
        for i in range(n):
            for j in range(i, n):
                values[i, j] = values[j, i] = label_histogram_kernel(
                    graphs[i], graphs[j], mode)
        gm = GramMatrix(values, spec)
        gm.validate()
        return gm
    raise ContractViolation(f"unknown kernel kind {spec.kind!r}")


# ---------------------------------------------------------------------------
# export formats

def write_gram_csv(gram: GramMatrix, path: str | Path) -> None:
    """Dense CSV: header row of graph indices, then one row per graph."""
    v = gram.values
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(",".join(str(i) for i in range(v.shape[0])) + "\n")
        for row in v:
            fh.write(",".join("%.17g" % x for x in row) + "\n")


def write_gram_precomputed(gram: GramMatrix, class_labels: np.ndarray | None,
                           path: str | Path) -> None:
    """Precomputed-kernel text: `<class> 0:<row> 1:<K_1> ...` with 1-based rows."""
    v = gram.values
    n = v.shape[0]
    labels = class_labels if class_labels is not None else np.zeros(n, dtype=np.int64)
    if len(labels) != n:
        raise ContractViolation("class labels do not align with the gram matrix")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for i in range(n):
            fields = [str(int(labels[i])), f"0:{i + 1}"]
            fields += [f"{j + 1}:{'%.17g' % v[i, j]}" for j in range(n)]
            fh.write(" ".join(fields) + "\n")
