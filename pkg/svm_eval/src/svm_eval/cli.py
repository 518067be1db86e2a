"""Command line: evaluate one kernel grid of precomputed Gram files."""

from __future__ import annotations

import argparse
import glob
import sys

from .cv import nested_cv
from .gram_io import GramFormatError, grid_from_files, read_labels
from .reporting import write_results_tsv, write_selection_chart, write_selection_tsv


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="svm-eval",
        description="Nested-CV accuracy for precomputed graph-kernel matrices.")
    parser.add_argument("files", nargs="+",
                        help="Gram files (precomputed text or CSV); globs allowed")
    parser.add_argument("--dataset", required=True)
    parser.add_argument("--kernel", required=True,
                        help="kernel name for the report row")
    parser.add_argument("--labels", default=None,
                        help="class label file (required for CSV matrices)")
    parser.add_argument("--c-grid", default="1e-3,1e-2,1e-1,1,1e1,1e2,1e3")
    parser.add_argument("--folds", type=int, default=10)
    parser.add_argument("--reps", type=int, default=10)
    parser.add_argument("--inner-folds", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--normalize", action="store_true",
                        help="cosine-normalize matrices before CV")
    parser.add_argument("--clip-eigenvalues", action="store_true",
                        help="zero out negative eigenvalues before CV")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--out", required=True, help="results TSV")
    parser.add_argument("--append", action="store_true",
                        help="append to an existing results TSV")
    parser.add_argument("--selection-out", default=None,
                        help="selection-frequency TSV")
    parser.add_argument("--selection-keys", default="alpha,beta")
    parser.add_argument("--chart", default=None,
                        help="selection-frequency bar chart PNG")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    paths: list[str] = []
    for pattern in args.files:
        expanded = sorted(glob.glob(pattern))
        paths.extend(expanded if expanded else [pattern])
    try:
        grid = grid_from_files(
            paths,
            labels=read_labels(args.labels) if args.labels else None,
            c_grid=tuple(float(c) for c in args.c_grid.split(",")),
            folds=args.folds, repetitions=args.reps,
            inner_folds=args.inner_folds, seed=args.seed,
            normalize=args.normalize, clip_eigenvalues=args.clip_eigenvalues)
    except (GramFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    result = nested_cv(grid, jobs=args.jobs)
    write_results_tsv(args.out, args.dataset, args.kernel, result,
                      append=args.append)
    keys = tuple(k for k in args.selection_keys.split(",") if k)
    if args.selection_out:
        write_selection_tsv(args.selection_out, grid, result, keys)
    if args.chart:
        write_selection_chart(args.chart, grid, result, keys)
    print(f"{args.dataset} {args.kernel}: {result.mean:.1f} +- {result.std:.1f} "
          f"(over {len(result.accuracies)} outer folds)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
