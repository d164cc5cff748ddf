"""Large average submatrices: greedy alternating maximization of a
Bonferroni-corrected Gaussian significance score from random restarts,
with residualization between accepted biclusters."""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln
from scipy.stats import norm

from ..core import Bicluster, BiclusterSet, ParameterError, derive_seed, make_rng
from . import ParamSpec, register

PARAMS = (
    ParamSpec("score_threshold", "float", default=1.0,
              description="stop when the best significance score falls below this"),
    ParamSpec("max_biclusters", "int", default=20, min=1),
    ParamSpec("restarts", "int", default=1000, min=1),
    ParamSpec("search_iter", "int", default=50, min=1),
)


def _log_binom(n: int, k: np.ndarray) -> np.ndarray:
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def significance_score(n_rows: int, n_cols: int, k: int, l: int,
                       mean: float, sigma: float) -> float:
    """phi(D) = -log[ C(m,k) C(n,l) Phi-bar(sqrt(kl) mean / sigma) ]."""
    tail = norm.logsf(np.sqrt(k * l) * mean / sigma)
    return float(-(_log_binom(n_rows, np.array(k)) + _log_binom(n_cols, np.array(l)) + tail))


def _best_prefix(values: np.ndarray, other_count: int, my_count: int,
                 fixed_size: int, sigma: float):
    """Given scores per candidate line, pick the prefix count maximizing phi.

    values: per-line sums over the fixed index set, sorted descending.
    Returns (count, phi, order_indices).
    """
    order = np.argsort(-values, kind="stable")
    sums = np.cumsum(values[order])
    ks = np.arange(1, my_count + 1)
    means = sums / (ks * fixed_size)
    tail = norm.logsf(np.sqrt(ks * fixed_size) * means / sigma)
    phi = -(_log_binom(my_count, ks) + _log_binom(other_count, np.array(fixed_size)) + tail)
    best = int(np.argmax(phi))
    return best + 1, float(phi[best]), order[: best + 1]


def _search_once(values: np.ndarray, sigma: float, rng, search_iter: int):
    n_rows, n_cols = values.shape
    n_init = max(1, int(rng.integers(1, max(2, n_cols // 2 + 1))))
    cols = rng.choice(n_cols, size=n_init, replace=False)
    rows = np.arange(n_rows)
    phi = -np.inf
    for _ in range(search_iter):
        row_sums = values[:, cols].sum(axis=1)
        k, phi_rows, rows_new = _best_prefix(row_sums, n_cols, n_rows, len(cols), sigma)
        rows = np.sort(rows_new)
        col_sums = values[rows, :].sum(axis=0)
        l, phi_cols, cols_new = _best_prefix(col_sums, n_rows, n_cols, len(rows), sigma)
        cols_next = np.sort(cols_new)
        if np.array_equal(cols_next, np.sort(cols)) and abs(phi_cols - phi) < 1e-12:
            phi = phi_cols
            cols = cols_next
            break
        cols = cols_next
        phi = phi_cols
    return phi, rows, np.sort(cols)


@register("las", PARAMS, "large-average submatrix search under a Gaussian null")
def run(m, params, seed) -> BiclusterSet:
    if params["restarts"] < 1:
        raise ParameterError("restarts must be >= 1")
    residual = m.values.copy()
    biclusters = []
    for b in range(params["max_biclusters"]):
        sigma = float(residual.std())
        if sigma == 0:
            sigma = 1.0
        best = (-np.inf, None, None)
        for r in range(params["restarts"]):
            rng = make_rng(derive_seed(seed, b * params["restarts"] + r))
            phi, rows, cols = _search_once(residual, sigma, rng, params["search_iter"])
            if phi > best[0]:
                best = (phi, rows, cols)
        phi, rows, cols = best
        if rows is None or phi < params["score_threshold"]:
            break
        biclusters.append(Bicluster(tuple(rows), tuple(cols), float(phi)))
        block = residual[np.ix_(rows, cols)]
        residual[np.ix_(rows, cols)] = block - block.mean()
    return BiclusterSet("las", {}, seed, biclusters)
