# Export precomputed-kernel files for a classification harness: one file
# per hyperparameter combination, class labels inlined, ready for an SVM
# with a precomputed kernel.
#
# Equivalent CLI:
#   ncwalk gram --dataset MUTAG --data-dir data/MUTAG --kernel wl \
#       --l 0,1,2,3,4,5 --format precomputed --out-dir exports/

from pathlib import Path

from ncwalk import parse_tudataset, wl_gram_grid, write_gram_precomputed

mutag = parse_tudataset("data/MUTAG", "MUTAG")
out_dir = Path("exports")
out_dir.mkdir(exist_ok=True)

grid = wl_gram_grid(mutag, range(6))
for l, gm in sorted(grid.items()):
    path = out_dir / f"MUTAG_wl_l{l}.txt"
    write_gram_precomputed(gm, mutag.class_labels, path)
    print(f"wrote {path} ({gm.values.shape[0]} rows)")

print("\nfirst fields of the first row:")
first = (out_dir / "MUTAG_wl_l0.txt").read_text().splitlines()[0]
print(" ".join(first.split()[:4]), "...")
