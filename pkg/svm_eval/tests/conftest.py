import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

REPO_ROOT = Path(__file__).resolve().parents[2]
MUTAG_DIR = REPO_ROOT / "data" / "MUTAG"


def write_precomputed(path: Path, values: np.ndarray, labels: np.ndarray) -> None:
    n = values.shape[0]
    with open(path, "w") as fh:
        for i in range(n):
            fields = [str(int(labels[i])), f"0:{i + 1}"]
            fields += [f"{j + 1}:{'%.17g' % values[i, j]}" for j in range(n)]
            fh.write(" ".join(fields) + "\n")


@pytest.fixture()
def toy_gram(tmp_path):
    """Block-diagonal-by-class Gram: perfectly separable."""
    labels = np.array([1] * 20 + [-1] * 20)
    same = (labels[:, None] == labels[None, :]).astype(float)
    values = same * 2.0 + np.eye(40)
    path = tmp_path / "toy_sep_l1.txt"
    write_precomputed(path, values, labels)
    return path, values, labels


@pytest.fixture(scope="session")
def mutag_grids(tmp_path_factory):
    """All MUTAG Gram grids exported through the kernel library's CLI."""
    out_dir = tmp_path_factory.mktemp("mutag_grams")
    runs = [
        ["--kernel", "wl", "--l", "0,1,2,3,4,5"],
        ["--kernel", "rw", "--l", "0,1,2,3,4,5"],
        ["--kernel", "ncw", "--l", "0,1,2,3,4,5",
         "--alpha", "0.01,0.1,1,1000", "--beta", "0,0.5,1"],
    ]
    for extra in runs:
        cmd = [sys.executable, "-m", "ncwalk.cli", "gram",
               "--dataset", "MUTAG", "--data-dir", str(MUTAG_DIR),
               "--format", "precomputed", "--out-dir", str(out_dir)] + extra
        subprocess.run(cmd, check=True, capture_output=True, text=True)
    assert len(list(out_dir.glob("MUTAG_*.txt"))) == 84
    return out_dir
