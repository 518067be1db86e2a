"""Command-line interface: gram, refine, node-kernel, completeness, dedup."""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import NcwalkError
from .evaluation import completeness_ratio, dedup_isomorphic, normalize_gram
from .graph_kernels import (DEFAULT_MAX_PRODUCT_NODES, GramMatrix,
                            GraphKernelSpec, gram_matrix, ncw_gram_grid,
                            rw_gram_grid, wl_gram_grid, write_gram_csv,
                            write_gram_precomputed)
from .graphs import GraphCollection, disjoint_union_all, parse_tudataset
from .node_kernels import NodeKernelParams, walk_node_kernels
from .refinement import (intern_labels, morgan_ec, walk_labels_oracle,
                         walk_partition, wl_refine)


@dataclass
class RunConfig:
    """One parsed invocation: dataset location, kernel parameters, outputs, budgets."""

    command: str
    dataset: str
    data_dir: Path
    kernel: str | None = None
    lengths: list[int] = field(default_factory=lambda: [1])
    alphas: list[float] = field(default_factory=lambda: [0.0])
    betas: list[float] = field(default_factory=lambda: [1.0])
    weights: tuple[float, ...] | None = None
    wl_mode: bool = False
    method: str | None = None
    graph_index: int = 0
    normalize: bool = False
    out_format: str = "csv"
    out: Path | None = None
    out_dir: Path | None = None
    threads: int = 1
    dedup: bool = False
    max_product_nodes: int = DEFAULT_MAX_PRODUCT_NODES
    enum_budget: int = 10**7

    @property
    def grid_mode(self) -> bool:
        return len(self.lengths) * len(self.alphas) * len(self.betas) > 1

    def kernel_spec(self) -> GraphKernelSpec:
        return GraphKernelSpec(self.kernel, self.lengths[0],
                               alpha=self.alphas[0], beta=self.betas[0],
                               weights=self.weights)


def _parse_alpha(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def _float_list(text: str) -> list[float]:
    return [_parse_alpha(t) for t in text.split(",") if t.strip() != ""]


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip() != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncwalk",
        description="Walk-based node refinement and graph kernels.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_dataset_args(p):
        p.add_argument("--dataset", required=True, help="dataset name prefix")
        p.add_argument("--data-dir", default=None,
                       help="directory with <name>_*.txt (default: data/<name>)")

    gram = sub.add_parser("gram", help="compute and export a Gram matrix")
    add_dataset_args(gram)
    gram.add_argument("--kernel", required=True,
                      choices=["ncw", "ncwwl", "rw", "wl", "vl", "el"])
    gram.add_argument("--l", default="1", help="walk length / iterations; "
                      "comma list computes a grid")
    gram.add_argument("--alpha", default="0", help="Gaussian scale, 'inf' for "
                      "the exact indicator; comma list computes a grid")
    gram.add_argument("--beta", default="1", help="walk-count exponent; comma "
                      "list computes a grid")
    gram.add_argument("--lambda", dest="weights", default=None,
                      help="comma-separated walk weights for kernel 'rw'")
    gram.add_argument("--normalize", action="store_true")
    gram.add_argument("--format", default="csv", choices=["csv", "precomputed"])
    gram.add_argument("--out", default=None, help="output file (single spec)")
    gram.add_argument("--out-dir", default=None, help="output directory (grid mode)")
    gram.add_argument("--threads", type=int, default=1)
    gram.add_argument("--dedup", action="store_true",
                      help="drop isomorphic duplicates first")
    gram.add_argument("--max-product-nodes", type=int,
                      default=DEFAULT_MAX_PRODUCT_NODES)

    refine = sub.add_parser("refine", help="emit per-iteration node labelings")
    add_dataset_args(refine)
    refine.add_argument("--method", required=True,
                        choices=["wl", "morgan", "walkp", "wc", "wcplus"])
    refine.add_argument("--iters", type=int, default=3)
    refine.add_argument("--enum-budget", type=int, default=10**7)
    refine.add_argument("--out", default=None, help="default: stdout")

    nk = sub.add_parser("node-kernel", help="emit node-pair kernel values")
    add_dataset_args(nk)
    nk.add_argument("--graph", type=int, default=0, help="graph index")
    nk.add_argument("--l", type=int, default=1)
    nk.add_argument("--alpha", default="0")
    nk.add_argument("--wl", action="store_true", help="re-encode each iteration")
    nk.add_argument("--out", default=None, help="default: stdout")

    comp = sub.add_parser("completeness", help="completeness ratios per length")
    add_dataset_args(comp)
    comp.add_argument("--kernel", required=True,
                      choices=["ncw", "ncwwl", "rw", "wl"])
    comp.add_argument("--l", type=int, default=5, help="maximum length")
    comp.add_argument("--alpha", default="1000")
    comp.add_argument("--beta", default="0")
    comp.add_argument("--dedup", action="store_true")
    comp.add_argument("--threads", type=int, default=1)
    comp.add_argument("--max-product-nodes", type=int,
                      default=DEFAULT_MAX_PRODUCT_NODES)
    comp.add_argument("--out", default=None, help="default: stdout")

    dd = sub.add_parser("dedup", help="list kept indices after isomorphism dedup")
    add_dataset_args(dd)
    dd.add_argument("--out", default=None, help="default: stdout")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Validate a parsed command line into a RunConfig (raises NcwalkError)."""
    cfg = RunConfig(
        command=args.command,
        dataset=args.dataset,
        data_dir=Path(args.data_dir) if args.data_dir else Path("data") / args.dataset)
    if args.command == "gram":
        cfg.kernel = args.kernel
        cfg.lengths = _int_list(args.l)
        cfg.alphas = _float_list(args.alpha)
        cfg.betas = _float_list(args.beta)
        cfg.weights = tuple(_float_list(args.weights)) if args.weights else None
        cfg.normalize = args.normalize
        cfg.out_format = args.format
        cfg.out = Path(args.out) if args.out else None
        cfg.out_dir = Path(args.out_dir) if args.out_dir else None
        cfg.threads = args.threads
        cfg.dedup = args.dedup
        cfg.max_product_nodes = args.max_product_nodes
        for l in cfg.lengths:
            for a in cfg.alphas:
                for b in cfg.betas:
                    GraphKernelSpec(cfg.kernel, l, alpha=a, beta=b,
                                    weights=cfg.weights if not cfg.grid_mode else None)
        if cfg.grid_mode and cfg.out_dir is None:
            raise NcwalkError("grid mode (comma lists) requires --out-dir")
        if not cfg.grid_mode and cfg.out is None:
            raise NcwalkError("--out is required")
        if cfg.grid_mode and cfg.kernel in ("vl", "el"):
            raise NcwalkError(f"grid mode is not supported for kernel {cfg.kernel!r}")
    elif args.command == "refine":
        cfg.method = args.method
        cfg.lengths = [args.iters]
        cfg.enum_budget = args.enum_budget
        cfg.out = Path(args.out) if args.out else None
    elif args.command == "node-kernel":
        cfg.graph_index = args.graph
        cfg.lengths = [args.l]
        cfg.alphas = [_parse_alpha(args.alpha)]
        cfg.wl_mode = args.wl
        cfg.out = Path(args.out) if args.out else None
        NodeKernelParams(args.l, cfg.alphas[0], wl_mode=args.wl)
    elif args.command == "completeness":
        cfg.kernel = args.kernel
        cfg.lengths = list(range(args.l + 1))
        cfg.alphas = [_parse_alpha(args.alpha)]
        cfg.betas = [float(args.beta)]
        cfg.dedup = args.dedup
        cfg.threads = args.threads
        cfg.max_product_nodes = args.max_product_nodes
        cfg.out = Path(args.out) if args.out else None
    elif args.command == "dedup":
        cfg.out = Path(args.out) if args.out else None
    return cfg


def _load(cfg: RunConfig) -> GraphCollection:
    return parse_tudataset(cfg.data_dir, cfg.dataset)


def _open_out(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="ascii", newline="\n"), True


def _cmd_gram(cfg: RunConfig) -> int:
    collection = _load(cfg)
    if cfg.dedup:
        collection = dedup_isomorphic(collection)

    def export(gm: GramMatrix, path: Path):
        if cfg.normalize:
            gm = normalize_gram(gm)
        if cfg.out_format == "csv":
            write_gram_csv(gm, path)
        else:
            write_gram_precomputed(gm, collection.class_labels, path)

    if not cfg.grid_mode:
        gm = gram_matrix(collection, cfg.kernel_spec(),
                         max_product_nodes=cfg.max_product_nodes,
                         threads=cfg.threads)
        export(gm, cfg.out)
        return 0

    if cfg.kernel in ("ncw", "ncwwl"):
        grid = ncw_gram_grid(collection, cfg.kernel, cfg.lengths, cfg.alphas,
                             cfg.betas, max_product_nodes=cfg.max_product_nodes,
                             threads=cfg.threads)
    elif cfg.kernel == "rw":
        grid = {(l, 0.0, 1.0): gm for l, gm in rw_gram_grid(
            collection, cfg.lengths, max_product_nodes=cfg.max_product_nodes,
            threads=cfg.threads).items()}
    elif cfg.kernel == "wl":
        grid = {(l, 0.0, 1.0): gm
                for l, gm in wl_gram_grid(collection, cfg.lengths).items()}
    else:
        raise NcwalkError(f"grid mode is not supported for kernel {cfg.kernel!r}")

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    ext = "csv" if cfg.out_format == "csv" else "txt"
    for (l, a, b), gm in sorted(grid.items()):
        if cfg.kernel in ("ncw", "ncwwl"):
            name = f"{cfg.dataset}_{cfg.kernel}_l{l}_a{a:g}_b{b:g}.{ext}"
        else:
            name = f"{cfg.dataset}_{cfg.kernel}_l{l}.{ext}"
        export(gm, cfg.out_dir / name)
    return 0


def _cmd_refine(cfg: RunConfig) -> int:
    collection = _load(cfg)
    union, _ = disjoint_union_all(collection.graphs)
    iters = cfg.lengths[0]
    steps: list[np.ndarray]
    if cfg.method == "wl":
        steps = wl_refine(union, max_iter=iters).steps
    elif cfg.method == "morgan":
        _, history = morgan_ec(union)
        steps = [intern_labels(h.tolist()) for h in history[:iters + 1]]
    elif cfg.method == "walkp":
        wp = walk_partition(union, iters)
        steps = [wp.truncated_labeling(i) for i in range(iters + 1)]
    else:
        cumulative = cfg.method == "wcplus"
        steps = [walk_labels_oracle(union, i, cumulative, cfg.enum_budget)
                 for i in range(iters + 1)]
    fh, close = _open_out(cfg.out)
    try:
        for i, labels in enumerate(steps):
            fh.write(f"# iteration {i}\n")
            for lab in labels.tolist():
                fh.write(f"{lab}\n")
    finally:
        if close:
            fh.close()
    return 0


def _cmd_node_kernel(cfg: RunConfig) -> int:
    collection = _load(cfg)
    if not (0 <= cfg.graph_index < len(collection)):
        raise NcwalkError(f"graph index {cfg.graph_index} out of range")
    params = NodeKernelParams(cfg.lengths[0], cfg.alphas[0], wl_mode=cfg.wl_mode)
    kernels = walk_node_kernels(collection[cfg.graph_index], params)
    lefts = kernels.product.left_nodes
    rights = kernels.product.right_nodes
    fh, close = _open_out(cfg.out)
    try:
        for i in range(kernels.iterations + 1):
            fh.write(f"# iteration {i}\n")
            khat = kernels.series.khat[i]
            for p in range(kernels.product.node_count):
                fh.write(f"{int(lefts[p])} {int(rights[p])} {'%.17g' % khat[p]}\n")
    finally:
        if close:
            fh.close()
    return 0


def _cmd_completeness(cfg: RunConfig) -> int:
    collection = _load(cfg)
    if cfg.dedup:
        collection = dedup_isomorphic(collection)
    if cfg.kernel in ("ncw", "ncwwl"):
        lengths = [l for l in cfg.lengths if cfg.kernel != "ncwwl" or l >= 1]
        grid = ncw_gram_grid(collection, cfg.kernel, lengths, cfg.alphas,
                             cfg.betas, max_product_nodes=cfg.max_product_nodes,
                             threads=cfg.threads)
        grams = {l: gm for (l, _, _), gm in grid.items()}
    elif cfg.kernel == "rw":
        grams = rw_gram_grid(collection, cfg.lengths,
                             max_product_nodes=cfg.max_product_nodes,
                             threads=cfg.threads)
    else:
        grams = wl_gram_grid(collection, cfg.lengths)
    fh, close = _open_out(cfg.out)
    try:
        for l in sorted(grams):
            ratio = completeness_ratio(grams[l])
            fh.write(f"{cfg.kernel}\t{l}\t{ratio:.6f}\n")
    finally:
        if close:
            fh.close()
    return 0


def _cmd_dedup(cfg: RunConfig) -> int:
    collection = _load(cfg)
    result = dedup_isomorphic(collection)
    fh, close = _open_out(cfg.out)
    try:
        for idx in result.source_indices.tolist():
            fh.write(f"{idx}\n")
    finally:
        if close:
            fh.close()
    print(f"kept {len(result)} of {len(collection)} graphs", file=sys.stderr)
    return 0


_COMMANDS = {
    "gram": _cmd_gram,
    "refine": _cmd_refine,
    "node-kernel": _cmd_node_kernel,
    "completeness": _cmd_completeness,
    "dedup": _cmd_dedup,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except NcwalkError as exc:
        parser.error(str(exc))  # exits 2
    try:
        return _COMMANDS[cfg.command](cfg)
    except NcwalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
