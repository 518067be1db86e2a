# Graph-level kernels and their parameter extremes: with alpha = 0 and
# beta = 1 the node-centric walk kernel IS the unit-weight random walk
# kernel; with the re-encoding, alpha = inf and beta = 0 it IS the
# subtree kernel of color refinement.

import math

from ncwalk import (GraphKernelSpec, LabeledGraph, label_histogram_kernel,
                    ncw_kernel, rw_kernel, wl_subtree_kernel)

g = LabeledGraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
                 labels=[0, 0, 1, 1, 0])
h = LabeledGraph(5, [(0, 1), (1, 2), (2, 3), (1, 4)],
                 labels=[0, 1, 1, 0, 0])

print("baselines:")
print("  VL =", label_histogram_kernel(g, h, "node"))
print("  EL =", label_histogram_kernel(g, h, "edge"))

for l in range(4):
    rw = rw_kernel(g, h, GraphKernelSpec("rw", l))
    ncw_as_rw = ncw_kernel(g, h, GraphKernelSpec("ncw", l, alpha=0.0, beta=1.0))
    wl = wl_subtree_kernel(g, h, l)
    ncw_as_wl = (ncw_kernel(g, h, GraphKernelSpec("ncwwl", l, alpha=math.inf,
                                                  beta=0.0))
                 if l >= 1 else None)
    print(f"\nlength {l}:")
    print(f"  rw = {rw:.0f},  ncw(alpha=0, beta=1) = {ncw_as_rw:.0f}")
    if ncw_as_wl is not None:
        print(f"  wl = {wl:.0f},  ncwwl(alpha=inf, beta=0) = {ncw_as_wl:.0f}")

print("\nbetween the extremes, alpha and beta tune the comparison:")
for alpha in (0.01, 0.1, 1.0, 1000.0):
    row = [ncw_kernel(g, h, GraphKernelSpec("ncw", 3, alpha=alpha, beta=beta))
           for beta in (0.0, 0.5, 1.0)]
    print(f"  alpha {alpha:>7}: " + "  ".join(f"beta {b}: {v:10.2f}"
                                              for b, v in zip((0.0, 0.5, 1.0), row)))
