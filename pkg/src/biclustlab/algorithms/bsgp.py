"""Bipartite spectral graph partitioning: minimum-cut co-partition of rows
and columns via the scaled SVD embedding and k-means."""

from __future__ import annotations

import math

import numpy as np

from ..core import Bicluster, BiclusterSet, DomainError, make_rng
from ..kmeans import kmeans
from . import ParamSpec, register

PARAMS = (
    ParamSpec("k", "int", default=2, min=2, description="number of co-clusters"),
)


@register("bsgp", PARAMS, "minimum-cut bipartite co-partition via spectral embedding")
def run(m, params, seed) -> BiclusterSet:
    a = m.values
    if (a < 0).any():
        raise DomainError("bsgp requires a nonnegative matrix")
    k = params["k"]
    n_rows, n_cols = a.shape
    rng = make_rng(seed)

    eps = 1e-12
    d1 = np.maximum(a.sum(axis=1), eps)
    d2 = np.maximum(a.sum(axis=0), eps)
    an = a / np.sqrt(d1)[:, None] / np.sqrt(d2)[None, :]
    u, s, vt = np.linalg.svd(an, full_matrices=False)
    n_vec = max(1, math.ceil(math.log2(k)))
    # skip the trivial leading singular pair when there is room for it
    start = 1 if len(s) > 1 else 0
    n_vec = min(n_vec, len(s) - start)
    zu = u[:, start:start + n_vec] / np.sqrt(d1)[:, None]
    zv = vt[start:start + n_vec, :].T / np.sqrt(d2)[:, None]
    z = np.vstack([zu, zv])
    labels = kmeans(z, k, rng)
    row_labels = labels[:n_rows]
    col_labels = labels[n_rows:]

    # every cluster must own at least one row and one column
    dists = None
    for c in range(k):
        if not (row_labels == c).any():
            counts = np.bincount(row_labels, minlength=k)
            donor_rows = np.where(counts[row_labels] > 1)[0]
            if dists is None:
                centers = np.array([z[labels == cc].mean(axis=0) for cc in range(k)])
                dists = ((z[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
            move = donor_rows[int(np.argmin(dists[donor_rows, c]))]
            row_labels[move] = c
        if not (col_labels == c).any():
            counts = np.bincount(col_labels, minlength=k)
            donor_cols = np.where(counts[col_labels] > 1)[0]
            if dists is None:
                centers = np.array([z[labels == cc].mean(axis=0) for cc in range(k)])
                dists = ((z[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
            move = donor_cols[int(np.argmin(dists[n_rows + donor_cols, c]))]
            col_labels[move] = c

    biclusters = []
    for c in range(k):
        rows = np.where(row_labels == c)[0]
        cols = np.where(col_labels == c)[0]
        biclusters.append(Bicluster(tuple(rows), tuple(cols)))
    return BiclusterSet("bsgp", {}, seed, biclusters)
