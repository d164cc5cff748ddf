"""Delta-bicluster extraction by greedy node deletion/addition on the mean
squared residue, with random masking of discovered cells between rounds."""

from __future__ import annotations

import numpy as np

from ..core import Bicluster, BiclusterSet, ParameterError, make_rng
from . import ParamSpec, register

PARAMS = (
    ParamSpec("delta", "float", default=1.0, min=0.0,
              description="maximum allowed mean squared residue per bicluster"),
    ParamSpec("alpha", "float", default=1.2, min=1.0, min_exclusive=True,
              description="multiple-deletion threshold multiplier"),
    ParamSpec("n", "int", default=100, min=1,
              description="number of biclusters to extract"),
    ParamSpec("multi_deletion_min", "int", default=100, min=2,
              description="dimension size above which multiple node deletion is used"),
)


def _residues(sub: np.ndarray) -> np.ndarray:
    row_means = sub.mean(axis=1, keepdims=True)
    col_means = sub.mean(axis=0, keepdims=True)
    return sub - row_means - col_means + sub.mean()


def _msr(sub: np.ndarray) -> float:
    return float(np.mean(_residues(sub) ** 2))


def _find_bicluster(values: np.ndarray, delta: float, alpha: float,
                    multi_min: int) -> tuple:
    n_rows, n_cols = values.shape
    rows = np.arange(n_rows)
    cols = np.arange(n_cols)

    # multiple node deletion on large dimensions
    while True:
        sub = values[np.ix_(rows, cols)]
        h = _msr(sub)
        if h <= delta:
            break
        resid2 = _residues(sub) ** 2
        removed = False
        if len(rows) > multi_min:
            d = resid2.mean(axis=1)
            keep = d <= alpha * h
            if keep.sum() >= 1 and not keep.all():
                rows = rows[keep]
                removed = True
                sub = values[np.ix_(rows, cols)]
                h = _msr(sub)
                if h <= delta:
                    break
                resid2 = _residues(sub) ** 2
        if len(cols) > multi_min:
            e = resid2.mean(axis=0)
            keep = e <= alpha * h
            if keep.sum() >= 1 and not keep.all():
                cols = cols[keep]
                removed = True
        if not removed:
            break

    # single node deletion: drop the worst row or column until MSR <= delta
    while True:
        sub = values[np.ix_(rows, cols)]
        h = _msr(sub)
        if h <= delta or (len(rows) <= 1 and len(cols) <= 1):
            break
        resid2 = _residues(sub) ** 2
        d = resid2.mean(axis=1)
        e = resid2.mean(axis=0)
        best_row = int(np.argmax(d)) if len(rows) > 1 else -1
        best_col = int(np.argmax(e)) if len(cols) > 1 else -1
        row_score = d[best_row] if best_row >= 0 else -np.inf
        col_score = e[best_col] if best_col >= 0 else -np.inf
        if row_score >= col_score:
            rows = np.delete(rows, best_row)
        else:
            cols = np.delete(cols, best_col)

    # node addition; reverted if it pushes the residue above delta
    while True:
        before = (rows.copy(), cols.copy())
        sub = values[np.ix_(rows, cols)]
        h = _msr(sub)
        changed = False

        col_sub = values[rows, :]
        a_iJ = sub.mean(axis=1, keepdims=True)
        a_IJ = sub.mean()
        col_means_all = col_sub.mean(axis=0)
        resid_cols = col_sub - a_iJ - col_means_all[None, :] + a_IJ
        e_all = (resid_cols ** 2).mean(axis=0)
        add_cols = np.setdiff1d(np.where(e_all <= h)[0], cols)
        if add_cols.size:
            cols = np.sort(np.concatenate([cols, add_cols]))
            changed = True
            sub = values[np.ix_(rows, cols)]
            h = _msr(sub)

        row_sub = values[:, cols]
        a_Ij = sub.mean(axis=0)
        a_IJ = sub.mean()
        row_means_all = row_sub.mean(axis=1, keepdims=True)
        resid_rows = row_sub - row_means_all - a_Ij[None, :] + a_IJ
        d_all = (resid_rows ** 2).mean(axis=1)
        add_rows = np.setdiff1d(np.where(d_all <= h)[0], rows)
        if add_rows.size:
            rows = np.sort(np.concatenate([rows, add_rows]))
            changed = True

        if _msr(values[np.ix_(rows, cols)]) > delta:
            rows, cols = before
            break
        if not changed:
            break

    return rows, cols


@register("cc", PARAMS, "delta-biclusters by greedy mean-squared-residue node deletion")
def run(m, params, seed) -> BiclusterSet:
    delta = params["delta"]
    if delta < 0:
        raise ParameterError("delta must be >= 0")
    rng = make_rng(seed)
    values = m.values.copy()
    lo, hi = float(values.min()), float(values.max())
    biclusters = []
    for _ in range(params["n"]):
        rows, cols = _find_bicluster(values, delta, params["alpha"],
                                     params["multi_deletion_min"])
        # masked cells can re-enter later rounds; re-enforce delta on the
        # original values so the contract holds against the input matrix
        while _msr(m.values[np.ix_(rows, cols)]) > delta:
            sub = m.values[np.ix_(rows, cols)]
            resid2 = _residues(sub) ** 2
            d = resid2.mean(axis=1)
            e = resid2.mean(axis=0)
            if len(rows) > 1 and (len(cols) <= 1 or d.max() >= e.max()):
                rows = np.delete(rows, int(np.argmax(d)))
            else:
                cols = np.delete(cols, int(np.argmax(e)))
        score = _msr(m.values[np.ix_(rows, cols)])
        biclusters.append(Bicluster(tuple(rows), tuple(cols), score))
        if len(rows) == values.shape[0] and len(cols) == values.shape[1]:
            # whole matrix consumed; further rounds would only chase the mask
            break
        values[np.ix_(rows, cols)] = rng.uniform(lo, hi, size=(len(rows), len(cols)))
    return BiclusterSet("cc", {}, seed, biclusters)
