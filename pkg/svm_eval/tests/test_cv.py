import numpy as np
import pytest

from svm_eval import grid_from_files, nested_cv
from svm_eval.cv import fold_assignment

from conftest import write_precomputed


def test_separable_gram_reaches_full_accuracy(toy_gram):
    path, _, _ = toy_gram
    grid = grid_from_files([path], repetitions=3, seed=4)
    result = nested_cv(grid)
    assert result.mean == 100.0
    assert result.std == 0.0


def test_random_labels_near_chance(tmp_path):
    rng = np.random.default_rng(5)
    n = 60
    features = rng.normal(size=(n, 8))
    values = features @ features.T
    labels = np.array([1, -1] * (n // 2))
    path = tmp_path / "noise_l0.txt"
    write_precomputed(path, values, labels)
    grid = grid_from_files([path], repetitions=3, seed=6)
    result = nested_cv(grid)
    assert 40.0 <= result.mean <= 60.0


def test_fold_assignment_is_seed_deterministic():
    a = fold_assignment(7, 0, 50, 10)
    b = fold_assignment(7, 0, 50, 10)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    c = fold_assignment(8, 0, 50, 10)
    assert any(not np.array_equal(x, y) for x, y in zip(a, c))
    # folds partition the index set
    assert sorted(np.concatenate(a).tolist()) == list(range(50))
    assert all(not np.intersect1d(a[i], a[j]).size
               for i in range(10) for j in range(i + 1, 10))


def test_rerun_reproduces_bit_for_bit(toy_gram, tmp_path):
    rng = np.random.default_rng(9)
    n = 40
    features = rng.normal(size=(n, 5))
    values = features @ features.T + np.eye(n)
    labels = np.array([1, -1] * (n // 2))
    path = tmp_path / "k_l0.txt"
    write_precomputed(path, values, labels)
    results = [nested_cv(grid_from_files([path], repetitions=2, seed=11))
               for _ in range(2)]
    assert results[0].accuracies == results[1].accuracies
    assert results[0].selections == results[1].selections


def test_parallel_jobs_match_serial(toy_gram, tmp_path):
    rng = np.random.default_rng(10)
    n = 30
    features = rng.normal(size=(n, 4))
    values = features @ features.T
    labels = np.array([1, -1] * (n // 2))
    path = tmp_path / "k_l0.txt"
    write_precomputed(path, values, labels)
    grid = grid_from_files([path], repetitions=3, seed=12)
    serial = nested_cv(grid, jobs=1)
    parallel = nested_cv(grid, jobs=3)
    assert serial.accuracies == parallel.accuracies
    assert serial.selections == parallel.selections


def test_selection_never_touches_test_labels(tmp_path):
    """Flipping the labels of one outer test fold must not change the
    parameters selected for that fold (selection uses training data only)."""
    rng = np.random.default_rng(13)
    n = 60
    features = rng.normal(size=(n, 6))
    labels = np.where(features[:, 0] + 0.7 * rng.normal(size=n) > 0, 1, -1)
    # two candidate kernels of different quality so selection is nontrivial
    good = features @ features.T
    noisy = good + 5.0 * rng.normal(size=(n, n))
    noisy = (noisy + noisy.T) / 2

    def build(mutated_labels):
        a = tmp_path / "good_l0.txt"
        b = tmp_path / "noisy_l1.txt"
        write_precomputed(a, good, mutated_labels)
        write_precomputed(b, noisy, mutated_labels)
        return grid_from_files([a, b], repetitions=1, seed=14)

    baseline = nested_cv(build(labels))
    test_fold = fold_assignment(14, 0, n, 10)[0]
    flipped = labels.copy()
    flipped[test_fold] = -flipped[test_fold]
    mutated = nested_cv(build(flipped))

    assert mutated.selections[(0, 0)] == baseline.selections[(0, 0)]
    assert mutated.accuracies[(0, 0)] != baseline.accuracies[(0, 0)]


def test_single_class_training_fold_guard(tmp_path):
    values = np.eye(8)
    labels = np.array([1, 1, 1, 1, 1, 1, 1, -1])
    path = tmp_path / "k_l0.txt"
    write_precomputed(path, values, labels)
    grid = grid_from_files([path], repetitions=1, seed=15, folds=4,
                           inner_folds=2)
    result = nested_cv(grid)  # must not raise despite one-class inner folds
    assert set(result.accuracies) == {(0, f) for f in range(4)}


def test_result_statistics_definition(toy_gram):
    path, _, _ = toy_gram
    grid = grid_from_files([path], repetitions=2, seed=16)
    result = nested_cv(grid)
    values = np.array([result.accuracies[k] for k in sorted(result.accuracies)])
    assert result.mean == pytest.approx(values.mean())
    assert result.std == pytest.approx(values.std())
    assert len(result.rep_means) == 2
