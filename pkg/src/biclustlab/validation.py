"""The six bicluster validation indices plus report assembly.

Indices: mean squared residue (MSR), constant variance, sign variance,
Jaccard index, Hausdorff distance, and overall MSE of a bicluster set.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import (
    Bicluster,
    BiclusterSet,
    ExpressionMatrix,
    UndefinedIndexError,
    extract_submatrix,
)


@dataclass(frozen=True)
class BiclusterMeans:
    """Row means a_iJ, column means a_Ij and overall mean a_IJ of a submatrix."""

    row_means: np.ndarray
    col_means: np.ndarray
    overall_mean: float

    @classmethod
    def of(cls, sub: np.ndarray) -> "BiclusterMeans":
        return cls(sub.mean(axis=1), sub.mean(axis=0), float(sub.mean()))


def msr(m: ExpressionMatrix, b: Bicluster) -> float:
    """Mean squared residue: (1/|I||J|) sum (a_ij - a_iJ - a_Ij + a_IJ)^2."""
    sub = extract_submatrix(m, b)
    means = BiclusterMeans.of(sub)
    resid = sub - means.row_means[:, None] - means.col_means[None, :] + means.overall_mean
    return float(np.mean(resid ** 2))


def constant_variance(m: ExpressionMatrix, b: Bicluster, normalized: bool = True) -> float:
    """Variance around the bicluster mean: sum (a_ij - a_IJ)^2, size-normalized
    by default so differently sized biclusters stay comparable."""
    sub = extract_submatrix(m, b)
    ss = float(((sub - sub.mean()) ** 2).sum())
    return ss / sub.size if normalized else ss


def sign_matrix(sub: np.ndarray) -> np.ndarray:
    """Signs of consecutive column differences, values in {-1, 0, 1}."""
    return np.sign(np.diff(sub, axis=1))


def sign_variance(m: ExpressionMatrix, b: Bicluster, normalized: bool = True) -> float:
    """Constant variance of the sign matrix of consecutive column differences.
    Single-column biclusters have no transitions and score 0."""
    sub = extract_submatrix(m, b)
    if sub.shape[1] < 2:
        return 0.0
    s = sign_matrix(sub)
    ss = float(((s - s.mean()) ** 2).sum())
    return ss / s.size if normalized else ss


def jaccard(b1: Bicluster, b2: Bicluster) -> float:
    """Cell-set Jaccard index |cells1 & cells2| / |cells1 | cells2|."""
    ri = len(set(b1.rows) & set(b2.rows))
    ci = len(set(b1.cols) & set(b2.cols))
    inter = ri * ci
    union = b1.n_cells + b2.n_cells - inter
    return inter / union if union else 0.0


def jaccard_matrix(s1: BiclusterSet, s2: BiclusterSet) -> np.ndarray:
    out = np.zeros((len(s1), len(s2)))
    for i, b1 in enumerate(s1.biclusters):
        for j, b2 in enumerate(s2.biclusters):
            out[i, j] = jaccard(b1, b2)
    return out


def best_match_jaccard(s1: BiclusterSet, s2: BiclusterSet) -> float:
    """Mean over s1 of the best Jaccard against s2 (max-normalized comparison)."""
    if len(s1) == 0 or len(s2) == 0:
        raise UndefinedIndexError("best-match Jaccard undefined for empty sets")
    return float(jaccard_matrix(s1, s2).max(axis=1).mean())


def hausdorff(m: ExpressionMatrix, b1: Bicluster, b2: Bicluster) -> float:
    """Symmetric Hausdorff distance between the cell-value sets of two
    biclusters, with d = absolute difference."""
    v1 = np.sort(extract_submatrix(m, b1).ravel())
    v2 = np.sort(extract_submatrix(m, b2).ravel())

    def directed(a, b):
        idx = np.searchsorted(b, a)
        left = np.where(idx > 0, np.abs(a - b[np.maximum(idx - 1, 0)]), np.inf)
        right = np.where(idx < len(b), np.abs(a - b[np.minimum(idx, len(b) - 1)]), np.inf)
        return float(np.minimum(left, right).max())

    return max(directed(v1, v2), directed(v2, v1))


def hausdorff_matrix(m: ExpressionMatrix, s1: BiclusterSet, s2: BiclusterSet) -> np.ndarray:
    out = np.zeros((len(s1), len(s2)))
    for i, b1 in enumerate(s1.biclusters):
        for j, b2 in enumerate(s2.biclusters):
            out[i, j] = hausdorff(m, b1, b2)
    return out


def _pairwise_correlations(sub: np.ndarray) -> tuple:
    """Mean pairwise Pearson correlation (T) and mean absolute pairwise
    correlation (Q) over the rows of a submatrix. Zero-variance rows give
    zero correlations with a warning."""
    n = sub.shape[0]
    sd = sub.std(axis=1)
    if (sd == 0).any():
        warnings.warn("zero-variance gene row; its correlations treated as 0", stacklevel=3)
    centered = sub - sub.mean(axis=1, keepdims=True)
    safe_sd = np.where(sd == 0, 1.0, sd)
    z = centered / safe_sd[:, None]
    corr = z @ z.T / sub.shape[1]
    corr[sd == 0, :] = 0.0
    corr[:, sd == 0] = 0.0
    iu = np.triu_indices(n, k=1)
    vals = corr[iu]
    return float(vals.mean()), float(np.abs(vals).mean())


@dataclass(frozen=True)
class SbComponents:
    t1: float
    t2: float
    q1: float
    q2: float
    omega: float

    def score(self) -> float:
        num = max(self.t1 + self.omega, self.q1 + self.omega)
        den = max(self.t2 + self.omega, self.q2 + self.omega)
        return float(np.log(num / den))


def sb_components(m: ExpressionMatrix, b: Bicluster,
                  reference_cols: Optional[tuple] = None,
                  omega: float = 1.0) -> SbComponents:
    if omega <= 0:
        raise UndefinedIndexError("omega must be positive")
    if len(b.rows) < 2:
        raise UndefinedIndexError("SB score needs at least 2 gene rows")
    set1 = tuple(b.cols)
    if reference_cols is not None:
        set2 = tuple(sorted(set(int(j) for j in reference_cols)))
    else:
        set2 = tuple(j for j in range(m.shape[1]) if j not in set(b.cols))
    if len(set1) < 2 or len(set2) < 2:
        raise UndefinedIndexError("both condition sets need at least 2 columns")
    rows = np.array(b.rows)
    t1, q1 = _pairwise_correlations(m.values[np.ix_(rows, np.array(set1))])
    t2, q2 = _pairwise_correlations(m.values[np.ix_(rows, np.array(set2))])
    return SbComponents(t1, t2, q1, q2, omega)


def sb_score(m: ExpressionMatrix, b: Bicluster,
             reference_cols: Optional[tuple] = None, omega: float = 1.0) -> float:
    """Differential co-expression log-ratio between the bicluster's condition
    set and a reference condition set (default: its complement)."""
    return sb_components(m, b, reference_cols, omega).score()


def overall_mse(m: ExpressionMatrix, s: BiclusterSet) -> float:
    """Mean of the per-bicluster MSR values."""
    if len(s) == 0:
        raise UndefinedIndexError("overall MSE undefined for an empty bicluster set")
    return float(np.mean([msr(m, b) for b in s.biclusters]))


@dataclass
class ValidationReport:
    """Per-bicluster and aggregate index values for a bicluster set."""

    per_bicluster: list = field(default_factory=list)
    aggregates: dict = field(default_factory=dict)
    overall_mse: Optional[float] = None
    jaccard: Optional[np.ndarray] = None
    hausdorff: Optional[np.ndarray] = None
    best_match_jaccard: Optional[float] = None

    def to_dict(self) -> dict:
        out = {
            "per_bicluster": self.per_bicluster,
            "aggregates": self.aggregates,
            "overall_mse": self.overall_mse,
        }
        if self.jaccard is not None:
            out["jaccard"] = self.jaccard.tolist()
            out["best_match_jaccard"] = self.best_match_jaccard
        if self.hausdorff is not None:
            out["hausdorff"] = self.hausdorff.tolist()
        return out


PER_BICLUSTER_INDICES = ("msr", "constant_variance", "sign_variance", "sb_score")


def validate_set(m: ExpressionMatrix, s: BiclusterSet,
                 reference: Optional[BiclusterSet] = None,
                 indices: tuple = ("all",)) -> ValidationReport:
    """Assemble a validation report for a bicluster set against a matrix."""
    want = set(indices)
    if "all" in want:
        want = set(PER_BICLUSTER_INDICES) | {"jaccard", "hausdorff", "mse"}
    report = ValidationReport()
    for b in s.biclusters:
        entry = {}
        if "msr" in want:
            entry["msr"] = msr(m, b)
        if "constant_variance" in want:
            entry["constant_variance"] = constant_variance(m, b)
        if "sign_variance" in want:
            entry["sign_variance"] = sign_variance(m, b)
        if "sb_score" in want:
            try:
                entry["sb_score"] = sb_score(m, b)
            except UndefinedIndexError:
                entry["sb_score"] = None
        report.per_bicluster.append(entry)
    if report.per_bicluster:
        keys = [k for k in PER_BICLUSTER_INDICES if k in report.per_bicluster[0]]
        for k in keys:
            vals = [e[k] for e in report.per_bicluster if e[k] is not None]
            report.aggregates[k] = float(np.mean(vals)) if vals else None
    if "mse" in want and len(s) > 0:
        report.overall_mse = overall_mse(m, s)
    ref = reference if reference is not None else s
    if "jaccard" in want and len(s) > 0 and len(ref) > 0:
        report.jaccard = jaccard_matrix(s, ref)
        report.best_match_jaccard = best_match_jaccard(s, ref)
    if "hausdorff" in want and len(s) > 0 and len(ref) > 0:
        report.hausdorff = hausdorff_matrix(m, s, ref)
    return report
