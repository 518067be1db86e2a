"""Expressiveness evaluation: isomorphism dedup, completeness ratio, normalization."""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceededError, ContractViolation
from .graphs import GraphCollection, LabeledGraph, disjoint_union, disjoint_union_all
from .graph_kernels import GramMatrix
from .refinement import wl_refine

DEFAULT_BACKTRACK_BUDGET = 10**6


@dataclass
class IsomorphismCertificate:
    """A claimed isomorphism between two collection members (mapping absent = not isomorphic)."""

    pair: tuple[int, int]
    mapping: np.ndarray | None


def certificate_is_valid(cert: IsomorphismCertificate, g: LabeledGraph,
                         h: LabeledGraph) -> bool:
    """Check a mapping edge-by-edge and label-by-label."""
    psi = cert.mapping
    if psi is None:
        return False
    if g.node_count != h.node_count or len(psi) != g.node_count:
        return False
    if len(set(psi.tolist())) != len(psi):
        return False
    if any(g.labels[v] != h.labels[psi[v]] for v in range(g.node_count)):
        return False
    mapped = {(min(int(psi[u]), int(psi[v])), max(int(psi[u]), int(psi[v])))
              for u, v in g.edges}
    return mapped == set(h.edges)


def find_isomorphism(g: LabeledGraph, h: LabeledGraph,
                     budget: int = DEFAULT_BACKTRACK_BUDGET) -> np.ndarray | None:
    """Exact isomorphism search seeded by stable joint refinement classes.

    Returns a node bijection as an array, or None. Raises
    BudgetExceededError when the backtracking step budget runs out.
    """
    n = g.node_count
    if n != h.node_count or g.edge_count != h.edge_count:
        return None
    if sorted(g.degrees().tolist()) != sorted(h.degrees().tolist()):
        return None

    union, offset = disjoint_union(g, h)
    stable = wl_refine(union).steps[-1]
    colors_g, colors_h = stable[:offset], stable[offset:]
    if Counter(colors_g.tolist()) != Counter(colors_h.tolist()):
        return None

    candidates = {c: np.nonzero(colors_h == c)[0].tolist()
                  for c in set(colors_g.tolist())}
    # most constrained first: rare colors, then high degree
    color_freq = Counter(colors_g.tolist())
    order = sorted(range(n), key=lambda v: (color_freq[int(colors_g[v])],
                                            -int(g.degrees()[v]), v))
    adj_g = [set(g.neighbors(v).tolist()) for v in range(n)]
    adj_h = [set(h.neighbors(v).tolist()) for v in range(n)]

    mapping = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=bool)
    steps = 0

    def extend(k: int) -> bool:
        nonlocal steps
        if k == n:
            return True
        u = order[k]
        for x in candidates[int(colors_g[u])]:
            if used[x]:
                continue
            steps += 1
            if steps > budget:
                raise BudgetExceededError(
                    f"isomorphism backtracking exceeded budget of {budget}")
            ok = True
            for v in range(n):
                if mapping[v] >= 0:
                    if (v in adj_g[u]) != (int(mapping[v]) in adj_h[x]):
                        ok = False
                        break
            if ok and ((u in adj_g[u]) == (x in adj_h[x])):
                mapping[u] = x
                used[x] = True
                if extend(k + 1):
                    return True
                mapping[u] = -1
                used[x] = False
        return False

    if extend(0):
        return mapping.copy()
    return None


def _invariant_key(g: LabeledGraph, stable_hist: tuple) -> tuple:
    return (g.node_count, g.edge_count, tuple(sorted(g.degrees().tolist())),
            stable_hist)


def dedup_isomorphic(collection: GraphCollection,
                     budget: int = DEFAULT_BACKTRACK_BUDGET,
                     return_certificates: bool = False):
    """Keep one representative per isomorphism class (first in input order).

    Graphs are bucketed by cheap invariants (size, degree sequence, stable
    joint-refinement label histogram); exact backtracking decides within
    buckets. When the backtracking budget is exhausted for a pair, the
    graph is conservatively kept and a warning is emitted.
    """
    graphs = collection.graphs
    union, offsets = disjoint_union_all(graphs)
    stable = wl_refine(union).steps[-1]
    bounds = offsets + [union.node_count]
    stable_hists = [tuple(sorted(Counter(
        stable[bounds[k]:bounds[k + 1]].tolist()).items()))
        for k in range(len(graphs))]

    kept: list[int] = []
    by_key: dict[tuple, list[int]] = {}
    certificates: list[IsomorphismCertificate] = []
    for idx, g in enumerate(graphs):
        key = _invariant_key(g, stable_hists[idx])
        duplicate = False
        for rep in by_key.get(key, []):
            try:
                mapping = find_isomorphism(graphs[rep], g, budget)
            except BudgetExceededError:
                warnings.warn(
                    f"isomorphism budget exceeded for graphs ({rep}, {idx}); "
                    "keeping both", stacklevel=2)
                continue
            if mapping is not None:
                certificates.append(IsomorphismCertificate((rep, idx), mapping))
                duplicate = True
                break
        if not duplicate:
            kept.append(idx)
            by_key.setdefault(key, []).append(idx)

    result = GraphCollection(
        [graphs[i] for i in kept],
        class_labels=(collection.class_labels[kept]
                      if collection.class_labels is not None else None),
        names=([collection.names[i] for i in kept]
               if collection.names is not None else None),
        label_map=collection.label_map,
        source_indices=np.array(kept, dtype=np.int64))
    if return_certificates:
        return result, certificates
    return result


def completeness_ratio(gram: GramMatrix, tol: float | None = None) -> float:
    """Fraction of graphs at positive kernel distance from every other graph.

    tol=None uses a relative threshold 1e-9 * max(K_ii + K_jj, 1) per pair;
    distances under discrete-label features are integers, so this default
    only filters rounding noise.
    """
    v = gram.values
    n = v.shape[0]
    if n == 0:
        return 1.0
    d = np.diag(v)
    dist2 = d[:, None] + d[None, :] - 2.0 * v
    if tol is None:
        thresh = 1e-9 * np.maximum(d[:, None] + d[None, :], 1.0)
    else:
        thresh = np.full((n, n), float(tol))
    distinguished = dist2 > thresh
    np.fill_diagonal(distinguished, True)
    return float(np.mean(distinguished.all(axis=1)))


def normalize_gram(gram: GramMatrix) -> GramMatrix:
    """Cosine normalization K_ij / sqrt(K_ii K_jj); requires a positive diagonal."""
    d = np.diag(gram.values)
    bad = np.nonzero(d <= 0)[0]
    if len(bad):
        raise ContractViolation(
            f"cannot normalize: graph {int(bad[0])} has diagonal {d[bad[0]]}")
    scale = np.sqrt(np.outer(d, d))
    return GramMatrix(gram.values / scale, gram.spec)
