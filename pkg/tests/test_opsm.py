import itertools

import numpy as np
import pytest

from biclustlab.algorithms import run_algorithm
from biclustlab.core import ExpressionMatrix


def brute_force_best(values, length):
    """Max row support over all strictly increasing column orders of a given
    length, by exhaustive permutation search."""
    n_cols = values.shape[1]
    best = 0
    for order in itertools.permutations(range(n_cols), length):
        sup = sum(all(values[i, a] < values[i, b]
                      for a, b in zip(order, order[1:]))
                  for i in range(values.shape[0]))
        best = max(best, sup)
    return best


def test_rows_support_the_returned_order():
    rng = np.random.default_rng(0)
    m = ExpressionMatrix.from_values(rng.standard_normal((20, 6)))
    out = run_algorithm("opsm", m, {"l": 10}, seed=0)
    assert len(out) >= 1
    for b, order in zip(out.biclusters, out.params["column_orders"]):
        assert sorted(order) == list(b.cols)
        for i in b.rows:
            vals = m.values[i, order]
            assert (np.diff(vals) > 0).all()


@pytest.mark.parametrize("seed", range(6))
def test_exhaustive_small_matrices(seed):
    """With a wide beam the top model's support matches brute force on 4x4."""
    rng = np.random.default_rng(seed)
    values = rng.standard_normal((4, 4))
    m = ExpressionMatrix.from_values(values)
    out = run_algorithm("opsm", m, {"l": 200}, seed=seed)
    oracle = brute_force_best(values, 4)
    if oracle == 0:
        return
    best = max(len(b.rows) for b, order in
               zip(out.biclusters, out.params["column_orders"])
               if len(order) == 4)
    assert best == oracle


def test_planted_order_recovered():
    rng = np.random.default_rng(3)
    values = rng.standard_normal((30, 8))
    base = np.sort(rng.standard_normal(5)) * 10
    values[:12, [1, 3, 4, 6, 7]] = base + 0.01 * rng.standard_normal((12, 5))
    m = ExpressionMatrix.from_values(values)
    out = run_algorithm("opsm", m, {"l": 20, "max_cols": 5}, seed=3)
    # the planted order survives the beam and carries all planted rows
    hits = [b for b, order in zip(out.biclusters, out.params["column_orders"])
            if order == [1, 3, 4, 6, 7]]
    assert hits and set(range(12)) <= set(hits[0].rows)


def test_single_column_matrix_yields_nothing():
    m = ExpressionMatrix.from_values(np.array([[1.0], [2.0]]))
    out = run_algorithm("opsm", m, {}, seed=0)
    assert len(out) == 0
