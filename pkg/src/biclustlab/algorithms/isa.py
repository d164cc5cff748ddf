"""Iterative signature algorithm: alternate thresholded row/column signature
steps on row- and column-normalized matrices until a fixed point."""

from __future__ import annotations

import numpy as np

from ..core import Bicluster, BiclusterSet, ParameterError, derive_seed, make_rng
from ..validation import jaccard
from . import ParamSpec, register

PARAMS = (
    ParamSpec("t_g", "float", default=2.0, min=0.0,
              description="gene (row) score threshold in standard deviations"),
    ParamSpec("t_c", "float", default=2.0, min=0.0,
              description="condition (column) score threshold in standard deviations"),
    ParamSpec("n_seeds", "int", default=100, min=1),
    ParamSpec("max_iter", "int", default=50, min=1),
    ParamSpec("seed_size", "int", default=5, min=1,
              description="rows per random starting set"),
)


def _zscore(values: np.ndarray, axis: int) -> np.ndarray:
    mean = values.mean(axis=axis, keepdims=True)
    sd = values.std(axis=axis, keepdims=True)
    return np.where(sd > 0, (values - mean) / np.where(sd == 0, 1.0, sd), 0.0)


@register("isa", PARAMS, "fixed points of the thresholded signature iteration")
def run(m, params, seed) -> BiclusterSet:
    if params["max_iter"] < 1:
        raise ParameterError("max_iter must be >= 1")
    values = m.values
    n_rows, n_cols = values.shape
    e_rows = _zscore(values, axis=1)  # rows normalized, scores columns
    e_cols = _zscore(values, axis=0)  # columns normalized, scores rows
    t_g, t_c = params["t_g"], params["t_c"]

    biclusters = []
    for s in range(params["n_seeds"]):
        seed_rng = make_rng(derive_seed(seed, s))
        rows = np.zeros(n_rows, dtype=bool)
        rows[seed_rng.choice(n_rows, size=min(params["seed_size"], n_rows),
                             replace=False)] = True
        cols = np.zeros(n_cols, dtype=bool)
        prev = None
        for _ in range(params["max_iter"]):
            if not rows.any():
                break
            col_scores = e_rows[rows].mean(axis=0)
            sd = col_scores.std()
            cols = np.abs(col_scores) > t_c * sd if sd > 0 else np.zeros(n_cols, bool)
            if not cols.any():
                rows = np.zeros(n_rows, dtype=bool)
                break
            row_scores = e_cols[:, cols].mean(axis=1)
            sd = row_scores.std()
            rows = np.abs(row_scores) > t_g * sd if sd > 0 else np.zeros(n_rows, bool)
            state = (rows.tobytes(), cols.tobytes())
            if state == prev:
                break
            prev = state
        else:
            continue  # no fixed point within max_iter
        if rows.sum() >= 2 and cols.sum() >= 2:
            cand = Bicluster.from_sets(np.where(rows)[0], np.where(cols)[0])
            if not any(jaccard(cand, kept) > 0.9 for kept in biclusters):
                biclusters.append(cand)
    return BiclusterSet("isa", {}, seed, biclusters)
