"""Synthetic planted-bicluster data generation and recovery scoring.

Plants are *added* onto i.i.d. Gaussian background noise, so overlapping
plants superpose like layers. Checkerboard plants instead define a full
row/column partition with one level per block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import Bicluster, BiclusterSet, ExpressionMatrix, ValidationError, make_rng
from .validation import jaccard


@dataclass(frozen=True)
class Plant:
    rows: tuple
    cols: tuple
    kind: str = "constant"  # constant | additive | multiplicative
    level: float = 1.0
    mu: float = 0.0
    row_effects: Optional[tuple] = None
    col_effects: Optional[tuple] = None
    u: Optional[tuple] = None
    v: Optional[tuple] = None


@dataclass(frozen=True)
class Checkerboard:
    row_partition: tuple  # tuple of row-index tuples tiling all rows
    col_partition: tuple
    levels: tuple  # levels[a][b] = block value


@dataclass
class PlantedSpec:
    shape: tuple
    noise_sd: float = 1.0
    plants: list = field(default_factory=list)
    checkerboard: Optional[Checkerboard] = None

    def validate(self):
        n, m = self.shape
        if n < 1 or m < 1:
            raise ValidationError("shape must be at least 1x1")
        if self.noise_sd < 0:
            raise ValidationError("noise_sd must be nonnegative")
        for p in self.plants:
            if not p.rows or not p.cols:
                raise ValidationError("plant index sets must be nonempty")
            if max(p.rows) >= n or max(p.cols) >= m:
                raise ValidationError("plant indices out of shape bounds")
        if self.checkerboard is not None:
            if self.plants:
                raise ValidationError("checkerboard cannot be combined with other plants")
            cb = self.checkerboard
            rows = sorted(i for part in cb.row_partition for i in part)
            cols = sorted(j for part in cb.col_partition for j in part)
            if rows != list(range(n)) or cols != list(range(m)):
                raise ValidationError("checkerboard partitions must tile the matrix")


def _plant_signal(p: Plant, shape) -> np.ndarray:
    rows = np.array(sorted(set(p.rows)))
    cols = np.array(sorted(set(p.cols)))
    sig = np.zeros(shape)
    if p.kind == "constant":
        sig[np.ix_(rows, cols)] = p.level
    elif p.kind == "additive":
        a = np.zeros(len(rows)) if p.row_effects is None else np.asarray(p.row_effects, float)
        b = np.zeros(len(cols)) if p.col_effects is None else np.asarray(p.col_effects, float)
        if len(a) != len(rows) or len(b) != len(cols):
            raise ValidationError("additive plant effect lengths must match index sets")
        sig[np.ix_(rows, cols)] = p.mu + a[:, None] + b[None, :]
    elif p.kind == "multiplicative":
        u = np.asarray(p.u, float)
        v = np.asarray(p.v, float)
        if len(u) != len(rows) or len(v) != len(cols):
            raise ValidationError("multiplicative plant u/v lengths must match index sets")
        sig[np.ix_(rows, cols)] = np.outer(u, v)
    else:
        raise ValidationError(f"unknown plant kind {p.kind!r}")
    return sig


def generate(spec: PlantedSpec, seed: int) -> tuple:
    """Background noise plus superposed plant signals, with ground truth."""
    spec.validate()
    rng = make_rng(seed)
    values = rng.standard_normal(spec.shape) * spec.noise_sd
    truth = []
    if spec.checkerboard is not None:
        cb = spec.checkerboard
        for a, rpart in enumerate(cb.row_partition):
            for b, cpart in enumerate(cb.col_partition):
                values[np.ix_(sorted(rpart), sorted(cpart))] += cb.levels[a][b]
                truth.append(Bicluster.from_sets(rpart, cpart))
    for p in spec.plants:
        values += _plant_signal(p, spec.shape)
        truth.append(Bicluster.from_sets(p.rows, p.cols))
    m = ExpressionMatrix.from_values(values)
    return m, BiclusterSet("planted", {}, int(seed), truth)


def recovery_score(found: BiclusterSet, truth: BiclusterSet) -> dict:
    """recovery: mean best Jaccard from truth into found;
    relevance: mean best Jaccard from found into truth."""

    def mean_best(src, dst):
        if len(src) == 0:
            return 0.0
        if len(dst) == 0:
            return 0.0
        return float(np.mean([
            max(jaccard(a, b) for b in dst.biclusters) for a in src.biclusters
        ]))

    return {"recovery": mean_best(truth, found), "relevance": mean_best(found, truth)}
