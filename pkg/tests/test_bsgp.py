import itertools

import numpy as np
import pytest

from biclustlab.algorithms import run_algorithm
from biclustlab.core import DomainError, ExpressionMatrix


def cut_weight(values, row_labels, col_labels):
    """Weight of edges crossing the co-partition."""
    total = 0.0
    for i in range(values.shape[0]):
        for j in range(values.shape[1]):
            if row_labels[i] != col_labels[j]:
                total += values[i, j]
    return total


def test_identity_example():
    m = ExpressionMatrix.from_values(np.eye(2))
    out = run_algorithm("bsgp", m, {"k": 2}, seed=0)
    assert {(b.rows, b.cols) for b in out.biclusters} == \
        {((0,), (0,)), ((1,), (1,))}


def test_partition_invariant():
    rng = np.random.default_rng(4)
    m = ExpressionMatrix.from_values(rng.uniform(0.1, 1.0, (15, 10)))
    out = run_algorithm("bsgp", m, {"k": 3}, seed=4)
    assert len(out) == 3
    rows = sorted(i for b in out.biclusters for i in b.rows)
    cols = sorted(j for b in out.biclusters for j in b.cols)
    assert rows == list(range(15))
    assert cols == list(range(10))


def test_block_diagonal_min_cut():
    """On a noisy block-diagonal matrix the recovered co-partition matches the
    exhaustive minimum-cut co-partition."""
    rng = np.random.default_rng(8)
    values = rng.uniform(0.0, 0.05, (6, 6))
    values[:3, :3] += 1.0
    values[3:, 3:] += 1.0
    m = ExpressionMatrix.from_values(values)
    out = run_algorithm("bsgp", m, {"k": 2}, seed=8)

    best = None
    for rl in itertools.product(range(2), repeat=6):
        if len(set(rl)) < 2:
            continue
        for cl in itertools.product(range(2), repeat=6):
            if len(set(cl)) < 2:
                continue
            w = cut_weight(values, rl, cl)
            if best is None or w < best[0]:
                best = (w, rl, cl)

    row_labels = np.empty(6, int)
    col_labels = np.empty(6, int)
    for c, b in enumerate(out.biclusters):
        row_labels[list(b.rows)] = c
        col_labels[list(b.cols)] = c
    got = cut_weight(values, row_labels, col_labels)
    assert abs(got - best[0]) < 1e-12


def test_rejects_negative():
    m = ExpressionMatrix.from_values(np.array([[1.0, -1.0], [0.0, 1.0]]))
    with pytest.raises(DomainError):
        run_algorithm("bsgp", m, {}, seed=0)
