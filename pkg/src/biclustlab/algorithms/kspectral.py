"""Checkerboard biclustering: normalize, take singular vectors, k-means the
row and column projections separately, return all row-cluster x column-cluster
cross products."""

from __future__ import annotations

import numpy as np

from ..core import Bicluster, BiclusterSet, DomainError, derive_seed, make_rng
from ..kmeans import kmeans
from ..preprocess import bistochastize as _bistochastize
from ..preprocess import independent_rescale as _rescale
from . import ParamSpec, register

PARAMS = (
    ParamSpec("k_rows", "int", default=2, min=1),
    ParamSpec("k_cols", "int", default=2, min=1),
    ParamSpec("normalization", "str", default="bistochastize",
              choices=("bistochastize", "independent_rescale", "log_interactions")),
    ParamSpec("n_singular_vectors", "int", default=3, min=1),
)


def _log_interactions(values: np.ndarray) -> np.ndarray:
    if (values <= 0).any():
        raise DomainError("log-interactions normalization requires a positive matrix")
    l = np.log(values)
    return l - l.mean(axis=1, keepdims=True) - l.mean(axis=0, keepdims=True) + l.mean()


@register("kspectral", PARAMS, "checkerboard structure via SVD of a normalized matrix")
def run(m, params, seed) -> BiclusterSet:
    values = m.values
    kind = params["normalization"]
    if kind == "bistochastize":
        norm = _bistochastize(values)
        skip_first = True
    elif kind == "independent_rescale":
        norm = _rescale(values)
        skip_first = True
    else:
        norm = _log_interactions(values)
        skip_first = False

    u, s, vt = np.linalg.svd(norm, full_matrices=False)
    start = 1 if (skip_first and len(s) > 1) else 0
    p = min(params["n_singular_vectors"], len(s) - start)
    p = max(p, 1) if len(s) > start else 0
    row_emb = u[:, start:start + p] * s[start:start + p]
    col_emb = vt[start:start + p, :].T * s[start:start + p]

    k_rows = min(params["k_rows"], values.shape[0])
    k_cols = min(params["k_cols"], values.shape[1])
    row_labels = kmeans(row_emb, k_rows, make_rng(derive_seed(seed, 0)))
    col_labels = kmeans(col_emb, k_cols, make_rng(derive_seed(seed, 1)))

    biclusters = []
    for a in range(k_rows):
        rows = np.where(row_labels == a)[0]
        for b in range(k_cols):
            cols = np.where(col_labels == b)[0]
            biclusters.append(Bicluster(tuple(rows), tuple(cols)))
    return BiclusterSet("kspectral", {}, seed, biclusters)
