"""Result tables: accuracy TSV, parameter-selection frequencies, optional chart."""

from __future__ import annotations

from collections import Counter
from pathlib import Path

from .cv import CVResult
from .gram_io import ExperimentGrid


def write_results_tsv(path: str | Path, dataset: str, kernel: str,
                      result: CVResult, append: bool = False) -> None:
    """One `(dataset, kernel, mean, std)` row; header written for new files."""
    path = Path(path)
    mode = "a" if append and path.exists() else "w"
    with open(path, mode, encoding="ascii", newline="\n") as fh:
        if mode == "w":
            fh.write("dataset\tkernel\tmean\tstd\n")
        fh.write(f"{dataset}\t{kernel}\t{result.mean:.1f}\t{result.std:.1f}\n")


def selection_frequencies(grid: ExperimentGrid, result: CVResult,
                          keys: tuple[str, ...]) -> dict[tuple, int]:
    """How often each combination of the given parameter keys was selected."""
    params_by_name = {e.name: e.params for e in grid.entries}
    counts: Counter = Counter()
    for name, _ in result.selections.values():
        params = params_by_name[name]
        counts[tuple(params.get(k) for k in keys)] += 1
    return dict(counts)


def write_selection_tsv(path: str | Path, grid: ExperimentGrid,
                        result: CVResult,
                        keys: tuple[str, ...] = ("alpha", "beta")) -> None:
    """Selection counts per parameter combination, sorted for determinism."""
    counts = selection_frequencies(grid, result, keys)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\t".join(keys) + "\tcount\n")
        for combo in sorted(counts, key=lambda c: tuple(
                (v is None, v) for v in c)):
            fields = ["" if v is None else f"{v:g}" for v in combo]
            fh.write("\t".join(fields) + f"\t{counts[combo]}\n")


def write_selection_chart(path: str | Path, grid: ExperimentGrid,
                          result: CVResult,
                          keys: tuple[str, ...] = ("alpha", "beta")) -> None:
    """Bar chart of selection frequencies (requires matplotlib)."""
    try:
        import matplotlib
    except ImportError as exc:
        raise RuntimeError(
            "matplotlib is required for charts; install svm-eval[chart]") from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    counts = selection_frequencies(grid, result, keys)
    combos = sorted(counts, key=lambda c: tuple((v is None, v) for v in c))
    labels = [", ".join("inf" if v == float("inf") else f"{v:g}"
                        for v in combo if v is not None) or "-"
              for combo in combos]
    fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(combos)), 3.2))
    ax.bar(range(len(combos)), [counts[c] for c in combos], color="#4878d0")
    ax.set_xticks(range(len(combos)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("times selected")
    ax.set_xlabel(", ".join(keys))
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
