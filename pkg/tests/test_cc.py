import numpy as np
import pytest

from biclustlab.algorithms import run_algorithm
from biclustlab.core import ExpressionMatrix, ParameterError
from biclustlab.validation import msr


@pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
def test_delta_contract(seed):
    """Every returned bicluster satisfies MSR <= delta on the input matrix,
    not on the masked working copy."""
    rng = np.random.default_rng(seed)
    m = ExpressionMatrix.from_values(rng.standard_normal((30, 15)))
    delta = 0.5
    out = run_algorithm("cc", m, {"delta": delta, "n": 5}, seed=seed)
    assert len(out) >= 1
    for b in out.biclusters:
        assert msr(m, b) <= delta + 1e-12
        assert b.score is not None and b.score <= delta + 1e-12


def test_perfect_additive_matrix_returned_whole():
    a = np.add.outer(np.arange(8.0), np.arange(6.0) * 0.5) + 3.0
    m = ExpressionMatrix.from_values(a)
    out = run_algorithm("cc", m, {"delta": 1e-9, "n": 3}, seed=0)
    b = out.biclusters[0]
    assert b.rows == tuple(range(8))
    assert b.cols == tuple(range(6))
    assert msr(m, b) < 1e-18


def test_multiple_rounds_mask_previous():
    rng = np.random.default_rng(7)
    m = ExpressionMatrix.from_values(rng.standard_normal((40, 12)))
    out = run_algorithm("cc", m, {"delta": 0.3, "n": 4}, seed=7)
    assert len(out) == 4
    # rounds after the first are drawn from re-randomized cells, so the
    # earlier bicluster is not simply returned again
    assert len({(b.rows, b.cols) for b in out.biclusters}) == 4


def test_multiple_node_deletion_path():
    rng = np.random.default_rng(3)
    m = ExpressionMatrix.from_values(rng.standard_normal((150, 20)))
    out = run_algorithm("cc", m, {"delta": 0.4, "n": 1,
                                  "multi_deletion_min": 50}, seed=3)
    assert msr(m, out.biclusters[0]) <= 0.4 + 1e-12


def test_bad_delta():
    m = ExpressionMatrix.from_values(np.zeros((2, 2)))
    with pytest.raises(ParameterError):
        run_algorithm("cc", m, {"delta": -0.1}, seed=0)
