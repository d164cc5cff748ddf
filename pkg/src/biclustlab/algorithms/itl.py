"""Information-theoretic co-clustering: alternating row/column reassignment
that never decreases the mutual information of the clustered distribution."""

from __future__ import annotations

import numpy as np

from ..core import Bicluster, BiclusterSet, DomainError, derive_seed, make_rng
from . import ParamSpec, register

PARAMS = (
    ParamSpec("k_rows", "int", default=2, min=1),
    ParamSpec("k_cols", "int", default=2, min=1),
    ParamSpec("max_iter", "int", default=100, min=1),
    ParamSpec("n_init", "int", default=10, min=1,
              description="independent restarts; best final objective kept"),
)


def clustered_mutual_information(p: np.ndarray, row_labels, col_labels,
                                 k_rows: int, k_cols: int) -> float:
    """Mutual information of the co-cluster-aggregated joint distribution."""
    joint = np.zeros((k_rows, k_cols))
    for a in range(k_rows):
        rm = row_labels == a
        if not rm.any():
            continue
        colsum = p[rm].sum(axis=0)
        for b in range(k_cols):
            joint[a, b] = colsum[col_labels == b].sum()
    pr = joint.sum(axis=1, keepdims=True)
    pc = joint.sum(axis=0, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = joint * (np.log(joint) - np.log(pr) - np.log(pc))
    return float(np.nansum(terms))


def _balanced_init(n: int, k: int, rng) -> np.ndarray:
    labels = np.arange(n) % k
    rng.shuffle(labels)
    return labels


def _coclust(p, k_rows, k_cols, max_iter, rng, trace=None):
    n_rows, n_cols = p.shape
    row_labels = _balanced_init(n_rows, k_rows, rng)
    col_labels = _balanced_init(n_cols, k_cols, rng)
    tiny = np.finfo(float).tiny

    for _ in range(max_iter):
        changed = False
        # row step: assign each row to the cluster minimizing its KL divergence
        col_group = np.zeros((n_cols, k_cols))
        for b in range(k_cols):
            col_group[col_labels == b, b] = 1.0
        p_row_by_ccl = p @ col_group  # p(x, y-hat)
        joint = np.zeros((k_rows, k_cols))
        for a in range(k_rows):
            rm = row_labels == a
            if rm.any():
                joint[a] = p_row_by_ccl[rm].sum(axis=0)
        prow_hat = joint.sum(axis=1, keepdims=True)
        q_cond = joint / np.maximum(prow_hat, tiny)  # p(y-hat | x-hat)
        px = p.sum(axis=1, keepdims=True)
        p_cond = p_row_by_ccl / np.maximum(px, tiny)  # p(y-hat | x)
        # 0*log(0) terms must vanish; -inf only when mass falls in a zero cluster
        logq = np.where(q_cond > 0, np.log(np.where(q_cond > 0, q_cond, 1.0)), 0.0)
        scores = p_cond @ logq.T  # cross-entropy term per (row, cluster)
        scores[(p_cond @ (q_cond <= 0).T.astype(float)) > 0] = -np.inf
        new_rows = np.argmax(scores, axis=1)
        keep = px.ravel() <= 0
        new_rows[keep] = row_labels[keep]  # empty rows stay put
        if (new_rows != row_labels).any():
            row_labels, changed = new_rows, True

        # column step, symmetric
        row_group = np.zeros((n_rows, k_rows))
        for a in range(k_rows):
            row_group[row_labels == a, a] = 1.0
        p_col_by_rcl = p.T @ row_group  # p(y, x-hat)
        joint = np.zeros((k_cols, k_rows))
        for b in range(k_cols):
            cm = col_labels == b
            if cm.any():
                joint[b] = p_col_by_rcl[cm].sum(axis=0)
        pcol_hat = joint.sum(axis=1, keepdims=True)
        q_cond = joint / np.maximum(pcol_hat, tiny)
        py = p.sum(axis=0)[:, None]
        p_cond = p_col_by_rcl / np.maximum(py, tiny)
        logq = np.where(q_cond > 0, np.log(np.where(q_cond > 0, q_cond, 1.0)), 0.0)
        scores = p_cond @ logq.T
        scores[(p_cond @ (q_cond <= 0).T.astype(float)) > 0] = -np.inf
        new_cols = np.argmax(scores, axis=1)
        keep = py.ravel() <= 0
        new_cols[keep] = col_labels[keep]
        if (new_cols != col_labels).any():
            col_labels, changed = new_cols, True

        if trace is not None:
            trace.append(clustered_mutual_information(p, row_labels, col_labels,
                                                      k_rows, k_cols))
        if not changed:
            break
    return row_labels, col_labels


@register("itl", PARAMS, "mutual-information-preserving co-clustering")
def run(m, params, seed, trace=None) -> BiclusterSet:
    a = m.values
    if (a < 0).any():
        raise DomainError("itl requires a nonnegative matrix")
    total = a.sum()
    if total <= 0:
        raise DomainError("itl requires a matrix with positive total mass")
    p = a / total
    k_rows = min(params["k_rows"], a.shape[0])
    k_cols = min(params["k_cols"], a.shape[1])

    best = None
    best_mi = -np.inf
    for r in range(params["n_init"]):
        rng = make_rng(derive_seed(seed, r))
        run_trace = [] if trace is not None else None
        rl, cl = _coclust(p, k_rows, k_cols, params["max_iter"], rng, run_trace)
        mi = clustered_mutual_information(p, rl, cl, k_rows, k_cols)
        if mi > best_mi + 1e-15:
            best, best_mi = (rl, cl), mi
            if trace is not None:
                trace.clear()
                trace.extend(run_trace)

    row_labels, col_labels = best
    biclusters = []
    for a_idx in range(k_rows):
        rows = np.where(row_labels == a_idx)[0]
        if not rows.size:
            continue
        for b_idx in range(k_cols):
            cols = np.where(col_labels == b_idx)[0]
            if not cols.size:
                continue
            biclusters.append(Bicluster(tuple(rows), tuple(cols)))
    return BiclusterSet("itl", {}, seed, biclusters)
