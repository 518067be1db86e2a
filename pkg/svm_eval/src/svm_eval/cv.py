"""Nested cross-validation over precomputed kernel grids."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from sklearn.svm import SVC

from .gram_io import ExperimentGrid

Selection = tuple[str, float]  # (grid entry name, C)


def fold_assignment(seed: int, rep: int, n: int, folds: int) -> list[np.ndarray]:
    """Deterministic random fold split: a pure function of (seed, rep)."""
    rng = np.random.default_rng([seed, rep])
    return [np.sort(part) for part in np.array_split(rng.permutation(n), folds)]


def _accuracy(values: np.ndarray, y: np.ndarray, train: np.ndarray,
              test: np.ndarray, c: float) -> float:
    y_train = y[train]
    if len(np.unique(y_train)) < 2:
        prediction = np.full(len(test), y_train[0])
    else:
        clf = SVC(kernel="precomputed", C=c)
        clf.fit(values[np.ix_(train, train)], y_train)
        prediction = clf.predict(values[np.ix_(test, train)])
    return float(np.mean(prediction == y[test]))


def _select_parameters(grid: ExperimentGrid, train: np.ndarray,
                       seed_key: list[int]) -> Selection:
    """Pick (kernel file, C) by inner cross-validation on the training fold only."""
    rng = np.random.default_rng(seed_key)
    inner = [np.sort(part) for part in
             np.array_split(rng.permutation(train), grid.inner_folds)]
    best: tuple[float, int, int] | None = None  # (-score, entry idx, C idx)
    for e_idx, entry in enumerate(grid.entries):
        for c_idx, c in enumerate(grid.c_grid):
            scores = []
            for k in range(grid.inner_folds):
                val = inner[k]
                tr = np.concatenate([inner[j] for j in range(grid.inner_folds)
                                     if j != k])
                scores.append(_accuracy(entry.values, grid.labels, tr, val, c))
            candidate = (-float(np.mean(scores)), e_idx, c_idx)
            if best is None or candidate < best:
                best = candidate
    _, e_idx, c_idx = best
    return grid.entries[e_idx].name, grid.c_grid[c_idx]


def _run_repetition(grid: ExperimentGrid, rep: int):
    folds = fold_assignment(grid.seed, rep, len(grid.labels), grid.folds)
    entry_by_name = {e.name: e for e in grid.entries}
    accuracies: dict[int, float] = {}
    selections: dict[int, Selection] = {}
    for f in range(grid.folds):
        test = folds[f]
        train = np.concatenate([folds[j] for j in range(grid.folds) if j != f])
        name, c = _select_parameters(grid, train, [grid.seed, rep, f])
        accuracies[f] = _accuracy(entry_by_name[name].values, grid.labels,
                                  train, test, c)
        selections[f] = (name, c)
    return rep, accuracies, selections


@dataclass
class CVResult:
    """Fold-level accuracies (percent) and the per-fold parameter selections."""

    accuracies: dict[tuple[int, int], float]
    selections: dict[tuple[int, int], Selection]
    mean: float = field(init=False)
    std: float = field(init=False)
    rep_means: list[float] = field(init=False)

    def __post_init__(self):
        values = np.array([self.accuracies[key] for key in sorted(self.accuracies)])
        self.mean = float(values.mean())
        self.std = float(values.std())
        reps = sorted({rep for rep, _ in self.accuracies})
        self.rep_means = [float(np.mean([acc for (r, _), acc in
                                         self.accuracies.items() if r == rep]))
                          for rep in reps]


def nested_cv(grid: ExperimentGrid, jobs: int = 1) -> CVResult:
    """Outer k-fold per repetition; inner CV on each training fold selects
    (kernel file, C); accuracy is measured on the untouched outer test fold.

    Deterministic for a fixed seed regardless of `jobs`: fold assignment
    is a pure function of (seed, repetition), and results are reduced in
    sorted (repetition, fold) order.
    """
    reps = range(grid.repetitions)
    if jobs <= 1:
        outcomes = [_run_repetition(grid, rep) for rep in reps]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_repetition, [grid] * grid.repetitions,
                                     reps))
    accuracies: dict[tuple[int, int], float] = {}
    selections: dict[tuple[int, int], Selection] = {}
    for rep, accs, sels in sorted(outcomes):
        for f in sorted(accs):
            accuracies[(rep, f)] = accs[f] * 100.0
            selections[(rep, f)] = sels[f]
    return CVResult(accuracies, selections)
