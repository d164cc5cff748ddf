"""Shared seeded k-means used by the spectral and SVD-based algorithms.

Farthest-point initialization from a seeded RNG, deterministic tie-breaking
(lowest index wins), empty clusters reseeded with the farthest point.
"""

from __future__ import annotations

import numpy as np

from .core import ParameterError


def kmeans(points: np.ndarray, k: int, rng: np.random.Generator,
           max_iter: int = 50, tol: float = 1e-8) -> np.ndarray:
    """Cluster rows of `points` into k groups; returns integer labels."""
    points = np.asarray(points, dtype=float)
    n = points.shape[0]
    if k < 1:
        raise ParameterError("k must be >= 1")
    if k >= n:
        return np.arange(n) % k if n else np.zeros(0, dtype=int)

    # farthest-point init: random first center, then argmax distance
    centers = np.empty((k, points.shape[1]))
    first = int(rng.integers(n))
    centers[0] = points[first]
    d2 = ((points - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        idx = int(np.argmax(d2))
        centers[c] = points[idx]
        d2 = np.minimum(d2, ((points - centers[c]) ** 2).sum(axis=1))

    labels = np.full(n, -1, dtype=int)
    for _ in range(max_iter):
        dists = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_labels = np.argmin(dists, axis=1)
        for c in range(k):
            if not (new_labels == c).any():
                far = int(np.argmax(dists[np.arange(n), new_labels]))
                new_labels[far] = c
        shift = 0.0
        for c in range(k):
            center_c = points[new_labels == c].mean(axis=0)
            shift = max(shift, float(np.abs(center_c - centers[c]).max()))
            centers[c] = center_c
        converged = (new_labels == labels).all() and shift <= tol
        labels = new_labels
        if converged:
            break
    return labels
