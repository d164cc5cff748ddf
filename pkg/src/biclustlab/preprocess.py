"""Preprocessing: filtering, binarization, discretization, normalization.

All operations are pure functions of (matrix, parameters) returning a new
:class:`ExpressionMatrix`; the input is never modified.
"""

from __future__ import annotations

import warnings

import numpy as np

from .core import (
    DomainError,
    ExpressionMatrix,
    IncompleteDataError,
    ParameterError,
    ValidationError,
    ConvergenceError,
)


def _rebuild(m: ExpressionMatrix, values: np.ndarray, mask=None) -> ExpressionMatrix:
    if mask is None:
        mask = np.zeros_like(values, dtype=bool)
    return ExpressionMatrix(m.row_ids, m.col_ids, values, mask)


def filter_missing(m: ExpressionMatrix, max_missing_frac: float = 0.5,
                   impute: str = "row_mean") -> ExpressionMatrix:
    """Drop rows then columns whose missing fraction exceeds the threshold,
    then impute whatever is left per policy."""
    if not 0.0 <= max_missing_frac <= 1.0:
        raise ParameterError("max_missing_frac must be in [0, 1]")
    if impute not in ("row_mean", "col_mean", "none"):
        raise ParameterError(f"unknown impute policy {impute!r}")
    mask = m.missing_mask
    row_keep = mask.mean(axis=1) <= max_missing_frac
    if not row_keep.any():
        raise ValidationError("filtering dropped every row")
    mask2 = mask[row_keep]
    col_keep = mask2.mean(axis=0) <= max_missing_frac
    if not col_keep.any():
        raise ValidationError("filtering dropped every column")
    values = m.values[np.ix_(row_keep.nonzero()[0], col_keep.nonzero()[0])].copy()
    mask3 = mask2[:, col_keep].copy()
    row_ids = tuple(r for r, k in zip(m.row_ids, row_keep) if k)
    col_ids = tuple(c for c, k in zip(m.col_ids, col_keep) if k)
    if mask3.any():
        if impute == "none":
            raise IncompleteDataError(
                "missing values remain after filtering and impute policy is 'none'"
            )
        if impute == "row_mean":
            axis, other = 1, 0
        else:
            axis, other = 0, 1
        with np.errstate(invalid="ignore"):
            means = np.where(mask3, np.nan, values).astype(float)
            means = np.nanmean(means, axis=axis)
        if np.isnan(means).any():
            # a fully-missing line survived the threshold; fall back to global mean
            global_mean = values[~mask3].mean()
            means = np.where(np.isnan(means), global_mean, means)
        fill = np.expand_dims(means, axis=axis)
        values = np.where(mask3, np.broadcast_to(fill, values.shape), values)
        mask3 = np.zeros_like(mask3)
    return ExpressionMatrix(row_ids, col_ids, values, mask3)


def binarize(m: ExpressionMatrix, threshold: str | float = "median") -> ExpressionMatrix:
    """Map each cell to 1 iff value > threshold (global); ties map to 0."""
    m.require_complete("binarize")
    if threshold == "median":
        t = float(np.median(m.values))
    elif threshold == "mean":
        t = float(np.mean(m.values))
    elif isinstance(threshold, (int, float)) and not isinstance(threshold, bool):
        t = float(threshold)
    else:
        raise ParameterError(f"threshold must be 'median', 'mean' or a number, got {threshold!r}")
    out = (m.values > t).astype(float)
    if out.max(initial=0.0) == 0.0 and np.ptp(m.values) == 0.0:
        warnings.warn("binarize: constant matrix maps to all zeros", stacklevel=2)
    return _rebuild(m, out)


def discretize(m: ExpressionMatrix, levels: int = 3,
               scheme: str = "equal_width") -> ExpressionMatrix:
    """Quantize values into integer levels 0..levels-1."""
    m.require_complete("discretize")
    if not isinstance(levels, int) or levels < 2:
        raise ParameterError("levels must be an integer >= 2")
    v = m.values
    lo, hi = float(v.min()), float(v.max())
    if scheme == "equal_width":
        if hi == lo:
            out = np.zeros_like(v)
        else:
            out = np.floor((v - lo) / (hi - lo) * levels)
            out = np.minimum(out, levels - 1)  # max maps to top bin
    elif scheme == "equal_frequency":
        if hi == lo:
            warnings.warn("discretize: constant matrix maps to a single bin", stacklevel=2)
            out = np.zeros_like(v)
        else:
            qs = np.quantile(v, np.linspace(0, 1, levels + 1)[1:-1])
            # ties at a boundary fall in the lower bin
            out = np.searchsorted(qs, v.ravel(), side="left").reshape(v.shape).astype(float)
    else:
        raise ParameterError(f"unknown discretization scheme {scheme!r}")
    return _rebuild(m, out)


def shift_to_positive(m: ExpressionMatrix) -> ExpressionMatrix:
    """Convenience step: subtract the minimum and add 1, making all values >= 1."""
    m.require_complete("shift_to_positive")
    return _rebuild(m, m.values - m.values.min() + 1.0)


def _zscore(values: np.ndarray, axis) -> np.ndarray:
    mean = values.mean(axis=axis, keepdims=True)
    sd = values.std(axis=axis, keepdims=True)
    out = np.where(sd > 0, (values - mean) / np.where(sd == 0, 1.0, sd), 0.0)
    return out


def _minmax(values: np.ndarray, axis) -> np.ndarray:
    lo = values.min(axis=axis, keepdims=True)
    hi = values.max(axis=axis, keepdims=True)
    span = hi - lo
    return np.where(span > 0, (values - lo) / np.where(span == 0, 1.0, span), 0.0)


def bistochastize(values: np.ndarray, tol: float = 1e-6, max_iter: int = 1000) -> np.ndarray:
    """Repeated row/column rescaling until all row and column means equal 1."""
    if (values <= 0).any():
        raise DomainError("bistochastization requires a strictly positive matrix")
    v = values.astype(float).copy()
    for _ in range(max_iter):
        v = v / v.mean(axis=1, keepdims=True)
        v = v / v.mean(axis=0, keepdims=True)
        resid = max(np.abs(v.mean(axis=1) - 1.0).max(), np.abs(v.mean(axis=0) - 1.0).max())
        if resid <= tol:
            return v
    raise ConvergenceError(
        f"bistochastization did not reach tol={tol} within {max_iter} iterations",
        residual=resid,
    )


def independent_rescale(values: np.ndarray) -> np.ndarray:
    """One pass dividing rows by sqrt(row sum) and columns by sqrt(column sum)."""
    if (values <= 0).any():
        raise DomainError("independent rescaling requires a strictly positive matrix")
    r = np.sqrt(values.sum(axis=1, keepdims=True))
    c = np.sqrt(values.sum(axis=0, keepdims=True))
    return values / r / c


def normalize(m: ExpressionMatrix, kind: str = "log2", tol: float = 1e-6,
              max_iter: int = 1000, per_row: bool = True) -> ExpressionMatrix:
    """Normalization family: log2 | zscore_rows | minmax_rows | bistochastize |
    independent_rescale. zscore/minmax act per row by default, globally with
    per_row=False."""
    m.require_complete("normalize")
    v = m.values
    if kind == "log2":
        if (v <= 0).any():
            raise DomainError("log2 requires all values > 0")
        out = np.log2(v)
    elif kind == "zscore_rows":
        out = _zscore(v, axis=1 if per_row else None)
    elif kind == "minmax_rows":
        out = _minmax(v, axis=1 if per_row else None)
    elif kind == "bistochastize":
        out = bistochastize(v, tol=tol, max_iter=max_iter)
    elif kind == "independent_rescale":
        out = independent_rescale(v)
    else:
        raise ParameterError(f"unknown normalization kind {kind!r}")
    return _rebuild(m, out)


STEP_FUNCTIONS = {
    "filter": filter_missing,
    "binarize": binarize,
    "discretize": discretize,
    "normalize": normalize,
    "shift_to_positive": shift_to_positive,
}


def apply_steps(m: ExpressionMatrix, steps: list) -> ExpressionMatrix:
    """Apply an ordered list of {'op': name, ...params} preprocessing steps."""
    out = m
    for step in steps:
        step = dict(step)
        op = step.pop("op", None)
        if op not in STEP_FUNCTIONS:
            raise ParameterError(
                f"unknown preprocessing step {op!r}; valid: {sorted(STEP_FUNCTIONS)}"
            )
        out = STEP_FUNCTIONS[op](out, **step)
    return out
