"""Modular SVD biclustering: tile the matrix into equal blocks (ragged edges
padded by reflection), project each block's rows onto its leading singular
directions, and k-means the projections."""

from __future__ import annotations

import math

import numpy as np

from ..core import Bicluster, BiclusterSet, ParameterError, derive_seed, make_rng
from ..kmeans import kmeans
from . import ParamSpec, register

PARAMS = (
    ParamSpec("block_rows", "int", default=None, min=1,
              description="rows per block; default ceil(|I|/4)"),
    ParamSpec("block_cols", "int", default=None, min=1,
              description="columns per block; default ceil(|J|/2)"),
    ParamSpec("n_eigen", "int", default=2, min=1),
    ParamSpec("k", "int", default=4, min=1),
)


def _reflect_pad(block: np.ndarray, rows: int, cols: int) -> np.ndarray:
    # np.pad(symmetric) caps the pad width at the axis length, so pad in
    # rounds until the target shape is reached
    while block.shape[0] < rows or block.shape[1] < cols:
        pad_r = min(rows - block.shape[0], block.shape[0])
        pad_c = min(cols - block.shape[1], block.shape[1])
        block = np.pad(block, ((0, pad_r), (0, pad_c)), mode="symmetric")
    return block


@register("msvd", PARAMS, "blockwise SVD projection + k-means row clustering")
def run(m, params, seed) -> BiclusterSet:
    values = m.values
    n_rows, n_cols = values.shape
    block_rows = params["block_rows"] or math.ceil(n_rows / 4)
    block_cols = params["block_cols"] or math.ceil(n_cols / 2)
    block_rows = min(block_rows, n_rows)
    block_cols = min(block_cols, n_cols)
    n_eigen = params["n_eigen"]
    if n_eigen > min(block_rows, block_cols):
        raise ParameterError(
            f"n_eigen={n_eigen} exceeds the smallest block dimension "
            f"{min(block_rows, block_cols)}"
        )
    k = params["k"]

    biclusters = []
    block_index = 0
    for r0 in range(0, n_rows, block_rows):
        r1 = min(r0 + block_rows, n_rows)
        for c0 in range(0, n_cols, block_cols):
            c1 = min(c0 + block_cols, n_cols)
            block = _reflect_pad(values[r0:r1, c0:c1], block_rows, block_cols)
            u, s, vt = np.linalg.svd(block, full_matrices=False)
            proj = u[:, :n_eigen] * s[:n_eigen]
            proj = proj[: r1 - r0]  # drop padded rows
            rng = make_rng(derive_seed(seed, block_index))
            labels = kmeans(proj, min(k, r1 - r0), rng)
            cols = tuple(range(c0, c1))
            for c in range(labels.max() + 1):
                rows = np.where(labels == c)[0] + r0
                if rows.size:
                    biclusters.append(Bicluster(tuple(rows), cols))
            block_index += 1
    return BiclusterSet("msvd", {}, seed, biclusters)
