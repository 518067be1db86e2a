"""Readers for the Gram-matrix export formats of the kernel library."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SYMMETRY_TOL = 1e-6


class GramFormatError(Exception):
    """A Gram file is malformed or inconsistent with its companions."""


def read_precomputed(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Read `<class> 0:<row> 1:<v1> ...` lines; returns (values, class labels).

    Row indices are 1-based; rows may appear in any order.
    """
    path = Path(path)
    lines = [line.strip() for line in path.read_text().splitlines()
             if line.strip()]
    n = len(lines)
    values = np.full((n, n), np.nan)
    labels = np.zeros(n, dtype=np.int64)
    for lineno, line in enumerate(lines, start=1):
        fields = line.split()
        if len(fields) != n + 2:
            raise GramFormatError(
                f"{path}:{lineno}: expected {n + 2} fields, got {len(fields)}")
        try:
            cls = int(fields[0])
            keys_values = [f.split(":", 1) for f in fields[1:]]
            pairs = [(int(k), float(v)) for k, v in keys_values]
        except ValueError as exc:
            raise GramFormatError(f"{path}:{lineno}: {exc}") from None
        if pairs[0][0] != 0:
            raise GramFormatError(f"{path}:{lineno}: first field must be 0:<row>")
        row = int(pairs[0][1]) - 1
        if not (0 <= row < n):
            raise GramFormatError(f"{path}:{lineno}: row index {row + 1} out of range")
        labels[row] = cls
        for key, value in pairs[1:]:
            if not (1 <= key <= n):
                raise GramFormatError(f"{path}:{lineno}: column {key} out of range")
            values[row, key - 1] = value
    if np.isnan(values).any():
        raise GramFormatError(f"{path}: missing entries")
    return values, labels


def read_csv(path: str | Path) -> np.ndarray:
    """Read the dense CSV export (header row of indices, one row per graph)."""
    path = Path(path)
    lines = [line for line in path.read_text().splitlines() if line.strip()]
    rows = [[float(x) for x in line.split(",")] for line in lines[1:]]
    values = np.array(rows)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise GramFormatError(f"{path}: matrix is not square: {values.shape}")
    return values


def read_labels(path: str | Path) -> np.ndarray:
    """One integer class label per line (TUDataset graph-label convention)."""
    return np.array([int(line.strip()) for line in
                     Path(path).read_text().splitlines() if line.strip()],
                    dtype=np.int64)


_PARAM_PATTERNS = {
    "l": re.compile(r"_l(\d+)"),
    "alpha": re.compile(r"_a(inf|[0-9.e+-]+)"),
    "beta": re.compile(r"_b([0-9.e+-]+)"),
}


def params_from_filename(path: str | Path) -> dict[str, float]:
    """Parse `_l<k>`, `_a<alpha>`, `_b<beta>` tokens out of an export filename."""
    stem = Path(path).stem
    out: dict[str, float] = {}
    for key, pattern in _PARAM_PATTERNS.items():
        match = pattern.search(stem)
        if match:
            text = match.group(1)
            out[key] = float("inf") if text == "inf" else float(text)
    return out


@dataclass
class GridEntry:
    """One hyperparameter combination: its Gram matrix and provenance."""

    name: str
    params: dict[str, float]
    values: np.ndarray


@dataclass
class ExperimentGrid:
    """Kernel files for one grid, the shared class labels, and CV settings."""

    entries: list[GridEntry]
    labels: np.ndarray
    c_grid: tuple[float, ...] = (1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3)
    folds: int = 10
    repetitions: int = 10
    inner_folds: int = 5
    seed: int = 0
    normalize: bool = False
    clip_eigenvalues: bool = False

    def __post_init__(self):
        if not self.entries:
            raise GramFormatError("grid has no kernel files")
        n = len(self.labels)
        for entry in self.entries:
            if entry.values.shape != (n, n):
                raise GramFormatError(
                    f"{entry.name}: shape {entry.values.shape} does not align "
                    f"with {n} class labels")
            asym = np.abs(entry.values - entry.values.T).max()
            if asym > SYMMETRY_TOL:
                raise GramFormatError(
                    f"{entry.name}: asymmetric by {asym:.2e} (tol {SYMMETRY_TOL})")
        if self.normalize:
            for entry in self.entries:
                d = np.sqrt(np.diag(entry.values))
                if (d <= 0).any():
                    raise GramFormatError(f"{entry.name}: nonpositive diagonal")
                entry.values = entry.values / np.outer(d, d)
        if self.clip_eigenvalues:
            for entry in self.entries:
                entry.values = _clip_negative_eigenvalues(entry.values)


def _clip_negative_eigenvalues(values: np.ndarray) -> np.ndarray:
    eigenvalues, vectors = np.linalg.eigh(values)
    eigenvalues = np.maximum(eigenvalues, 0.0)
    return (vectors * eigenvalues) @ vectors.T


def grid_from_files(paths, labels: np.ndarray | None = None,
                    **settings) -> ExperimentGrid:
    """Build a grid from precomputed-kernel files (or CSV files plus labels).

    Class labels are taken from the precomputed files and must agree
    across them; CSV files carry no labels, so `labels` is required.
    """
    entries = []
    shared: np.ndarray | None = None
    for path in sorted(Path(p) for p in paths):
        if path.suffix == ".csv":
            values = read_csv(path)
            file_labels = None
        else:
            values, file_labels = read_precomputed(path)
        if file_labels is not None:
            if shared is None:
                shared = file_labels
            elif not np.array_equal(shared, file_labels):
                raise GramFormatError(
                    f"{path}: class labels disagree with {entries[0].name}")
        entries.append(GridEntry(path.name, params_from_filename(path), values))
    if shared is None:
        if labels is None:
            raise GramFormatError("CSV grids need an explicit class-label file")
        shared = np.asarray(labels, dtype=np.int64)
    elif labels is not None and not np.array_equal(shared,
                                                   np.asarray(labels, np.int64)):
        raise GramFormatError("explicit labels disagree with file labels")
    return ExperimentGrid(entries, shared, **settings)
