"""Inclusion-maximal all-ones submatrix enumeration on binary matrices.

Two modes returning identical sets: a recursive divide-and-conquer style
depth-first enumeration of closed column sets, and an iterative fixpoint
over pairwise column-set intersections that needs no recursion.
Column sets are bitmasks throughout.
"""

from __future__ import annotations

import numpy as np

from ..core import Bicluster, BiclusterSet, DomainError, ParameterError

from . import ParamSpec, register

PARAMS = (
    ParamSpec("min_rows", "int", default=2, min=1),
    ParamSpec("min_cols", "int", default=2, min=1),
    ParamSpec("mode", "str", default="recursive", choices=("recursive", "iterative")),
    ParamSpec("max_biclusters", "int", default=100, min=1),
)


def _row_masks(values: np.ndarray) -> list:
    masks = []
    for row in values:
        mask = 0
        for j, v in enumerate(row):
            if v:
                mask |= 1 << j
        masks.append(mask)
    return masks


def _support(masks, col_mask: int) -> list:
    return [i for i, s in enumerate(masks) if s & col_mask == col_mask]


def _closure(masks, rows) -> int:
    out = -1
    for i in rows:
        out &= masks[i]
    return out


def _enumerate_recursive(masks, n_cols: int) -> list:
    """LCM-style prefix-preserving closed-set enumeration."""
    found = []

    def emit(rows, col_mask):
        if col_mask and rows:
            found.append((tuple(rows), col_mask))

    def rec(col_mask, rows, next_col):
        emit(rows, col_mask)
        for j in range(next_col, n_cols):
            bit = 1 << j
            if col_mask & bit:
                continue
            rows2 = [i for i in rows if masks[i] & bit]
            if not rows2:
                continue
            closed = _closure(masks, rows2)
            # prefix test: reject extensions that sneak in a column before j
            if closed & ((1 << j) - 1) != col_mask & ((1 << j) - 1):
                continue
            rec(closed, rows2, j + 1)

    rows0 = [i for i, s in enumerate(masks) if s]
    if rows0:
        rec(_closure(masks, rows0), rows0, 0)
    return found


def _enumerate_iterative(masks, n_cols: int) -> list:
    """Fixpoint closure of row supports under pairwise intersection."""
    candidates = {s for s in masks if s}
    while True:
        new = set()
        cand = sorted(candidates)
        for a_idx, a in enumerate(cand):
            for b in cand[a_idx + 1:]:
                c = a & b
                if c and c not in candidates:
                    new.add(c)
        if not new:
            break
        candidates |= new
    found = []
    for col_mask in candidates:
        rows = _support(masks, col_mask)
        if rows and _closure(masks, rows) == col_mask:
            found.append((tuple(rows), col_mask))
    return found


def _mask_to_cols(mask: int) -> tuple:
    cols = []
    j = 0
    while mask:
        if mask & 1:
            cols.append(j)
        mask >>= 1
        j += 1
    return tuple(cols)


@register("bimax", PARAMS, "all inclusion-maximal all-ones submatrices of a binary matrix")
def run(m, params, seed) -> BiclusterSet:
    values = m.values
    if not np.isin(values, (0.0, 1.0)).all():
        raise DomainError("bimax requires a binary matrix; run binarize first")
    if params["min_rows"] < 1 or params["min_cols"] < 1:
        raise ParameterError("min_rows and min_cols must be >= 1")
    masks = _row_masks(values)
    n_cols = values.shape[1]
    if params["mode"] == "recursive":
        found = _enumerate_recursive(masks, n_cols)
    else:
        found = _enumerate_iterative(masks, n_cols)
    biclusters = []
    for rows, col_mask in found:
        cols = _mask_to_cols(col_mask)
        if len(rows) >= params["min_rows"] and len(cols) >= params["min_cols"]:
            biclusters.append(Bicluster(tuple(sorted(rows)), cols))
    biclusters.sort(key=lambda b: (-b.n_cells, b.rows, b.cols))
    return BiclusterSet("bimax", {}, seed, biclusters[: params["max_biclusters"]])
