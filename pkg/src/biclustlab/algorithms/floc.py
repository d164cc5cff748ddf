"""Probabilistically seeded overlapping biclusters refined by single
row/column moves. The objective is the average delta-clipped mean squared
residue; moves that keep a bicluster under delta are accepted when they grow
its volume, so biclusters expand to maximal coherent regions instead of
collapsing."""

from __future__ import annotations

import numpy as np

from ..core import Bicluster, BiclusterSet, ParameterError, make_rng
from . import ParamSpec, register

PARAMS = (
    ParamSpec("k", "int", default=20, min=1, description="number of biclusters"),
    ParamSpec("delta", "float", default=0.1, min=0.0,
              description="target mean squared residue"),
    ParamSpec("init_row_prob", "float", default=0.5, min=0.0, max=1.0),
    ParamSpec("init_col_prob", "float", default=0.5, min=0.0, max=1.0),
    ParamSpec("max_iter", "int", default=50, min=1),
)

_TOL = 1e-15
_MIN_SIZE = 2  # single rows/columns have MSR 0 and would trap the search


def _msr(sub: np.ndarray) -> float:
    resid = (sub - sub.mean(axis=1, keepdims=True)
             - sub.mean(axis=0, keepdims=True) + sub.mean())
    return float(np.mean(resid ** 2))


def _bic_msr(values, rows, cols) -> float:
    return _msr(values[np.ix_(np.where(rows)[0], np.where(cols)[0])])


@register("floc", PARAMS, "overlapping biclusters via best single-node moves")
def run(m, params, seed, trace=None) -> BiclusterSet:
    k = params["k"]
    if k < 1:
        raise ParameterError("k must be >= 1")
    delta = params["delta"]
    values = m.values
    n_rows, n_cols = values.shape
    rng = make_rng(seed)

    rows = np.zeros((k, n_rows), dtype=bool)
    cols = np.zeros((k, n_cols), dtype=bool)
    for c in range(k):
        rows[c] = rng.random(n_rows) < params["init_row_prob"]
        cols[c] = rng.random(n_cols) < params["init_col_prob"]
        while rows[c].sum() < min(_MIN_SIZE, n_rows):
            rows[c, int(rng.integers(n_rows))] = True
        while cols[c].sum() < min(_MIN_SIZE, n_cols):
            cols[c, int(rng.integers(n_cols))] = True

    clipped = np.array([max(_bic_msr(values, rows[c], cols[c]), delta)
                        for c in range(k)])

    def try_toggle(axis_masks, other_masks, idx, c, axis_is_row):
        mask = axis_masks[c]
        adding = not mask[idx]
        if not adding and mask.sum() <= min(_MIN_SIZE, len(mask)):
            return None
        mask[idx] = not mask[idx]
        new_msr = (_bic_msr(values, axis_masks[c], other_masks[c]) if axis_is_row
                   else _bic_msr(values, other_masks[c], axis_masks[c]))
        mask[idx] = not mask[idx]
        new_clip = max(new_msr, delta)
        gain = clipped[c] - new_clip
        vol_delta = 1 if adding else -1
        if gain > _TOL or (gain >= -_TOL and vol_delta > 0):
            return gain, vol_delta, new_clip
        return None

    for _ in range(params["max_iter"]):
        moved = False
        for i in range(n_rows):
            best = None
            for c in range(k):
                res = try_toggle(rows, cols, i, c, axis_is_row=True)
                if res is not None and (best is None or res[:2] > best[0][:2]):
                    best = (res, c)
            if best is not None:
                (gain, _, new_clip), c = best
                rows[c, i] = not rows[c, i]
                clipped[c] = new_clip
                moved = True
        for j in range(n_cols):
            best = None
            for c in range(k):
                res = try_toggle(cols, rows, j, c, axis_is_row=False)
                if res is not None and (best is None or res[:2] > best[0][:2]):
                    best = (res, c)
            if best is not None:
                (gain, _, new_clip), c = best
                cols[c, j] = not cols[c, j]
                clipped[c] = new_clip
                moved = True
        if trace is not None:
            trace.append(float(clipped.mean()))
        if not moved:
            break

    biclusters = []
    for c in range(k):
        msr_c = _bic_msr(values, rows[c], cols[c])
        biclusters.append(Bicluster(tuple(np.where(rows[c])[0]),
                                    tuple(np.where(cols[c])[0]), msr_c))
    return BiclusterSet("floc", {}, seed, biclusters)
