import numpy as np

from biclustlab import synth
from biclustlab.algorithms import run_algorithm
from biclustlab.core import Bicluster, BiclusterSet, ExpressionMatrix

LAYER1 = (tuple(range(0, 15)), tuple(range(0, 8)), 3.0)
LAYER2 = (tuple(range(20, 32)), tuple(range(12, 19)), 2.0)


def plaid_matrix(seed=0):
    """Flat background plus two disjoint additive layers, no noise."""
    rng = np.random.default_rng(seed)
    values = np.full((50, 30), 0.5)
    for rows, cols, level in (LAYER1, LAYER2):
        values[np.ix_(rows, cols)] += (
            level + rng.uniform(-0.5, 0.5, (len(rows), 1))
            + rng.uniform(-0.5, 0.5, (1, len(cols))))
    truth = BiclusterSet("planted", {}, seed,
                         [Bicluster(r, c) for r, c, _ in (LAYER1, LAYER2)])
    return ExpressionMatrix.from_values(values), truth


def test_noiseless_layers_recovered_exactly():
    m, truth = plaid_matrix(seed=0)
    out = run_algorithm("plaid", m, {}, seed=0)
    score = synth.recovery_score(out, truth)
    assert score["recovery"] == 1.0
    assert len(out) == 2


def test_backfit_residual_vanishes():
    """With the true memberships found, the fitted plaid model reproduces
    the noiseless matrix to machine precision."""
    m, _ = plaid_matrix(seed=1)
    out = run_algorithm("plaid", m, {}, seed=1)
    assert out.params["residual_ss"] < 1e-6


def test_background_only_matrix_yields_no_layers():
    rng = np.random.default_rng(5)
    values = 0.5 + np.add.outer(rng.uniform(-0.5, 0.5, 40),
                                rng.uniform(-0.5, 0.5, 25))
    m = ExpressionMatrix.from_values(values)
    out = run_algorithm("plaid", m, {}, seed=5)
    assert len(out) == 0


def test_layer_size_floor():
    m, _ = plaid_matrix(seed=2)
    out = run_algorithm("plaid", m, {"min_layer_rows": 3,
                                     "min_layer_cols": 3}, seed=2)
    for b in out.biclusters:
        assert len(b.rows) >= 3 and len(b.cols) >= 3
