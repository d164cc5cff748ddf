"""Order-preserving submatrices: grow column orderings from size 2 upward,
keeping the best partial models by supporting-row count."""

from __future__ import annotations

import numpy as np

from ..core import Bicluster, BiclusterSet
from ..validation import jaccard
from . import ParamSpec, register

PARAMS = (
    ParamSpec("l", "int", default=10, min=1,
              description="number of partial models kept per growth round"),
    ParamSpec("max_cols", "int", default=None, min=2,
              description="largest column-order length; default |J|"),
)


def _support(values: np.ndarray, order: tuple) -> np.ndarray:
    ok = np.ones(values.shape[0], dtype=bool)
    for a, b in zip(order, order[1:]):
        ok &= values[:, a] < values[:, b]
    return ok


@register("opsm", PARAMS, "strictly increasing column-order submatrices")
def run(m, params, seed) -> BiclusterSet:
    values = m.values
    n_rows, n_cols = values.shape
    l = params["l"]
    max_cols = min(params["max_cols"] or n_cols, n_cols)
    if n_cols < 2 or max_cols < 2:
        return BiclusterSet("opsm", {}, seed, [])

    # seed models: every ordered column pair with at least one supporting row
    models = []
    for j1 in range(n_cols):
        for j2 in range(n_cols):
            if j1 == j2:
                continue
            sup = int(_support(values, (j1, j2)).sum())
            if sup > 0:
                models.append(((j1, j2), sup))
    models.sort(key=lambda t: (-t[1], t[0]))
    models = models[:l]
    if not models:
        return BiclusterSet("opsm", {}, seed, [])

    while models and len(models[0][0]) < max_cols:
        grown = {}
        for order, _ in models:
            used = set(order)
            for j in range(n_cols):
                if j in used:
                    continue
                for pos in range(len(order) + 1):
                    cand = order[:pos] + (j,) + order[pos:]
                    if cand in grown:
                        continue
                    sup = int(_support(values, cand).sum())
                    if sup > 0:
                        grown[cand] = sup
        if not grown:
            break
        models = sorted(grown.items(), key=lambda t: (-t[1], t[0]))[:l]

    biclusters = []
    orders = []
    for order, _ in models:
        rows = np.where(_support(values, order))[0]
        cand = Bicluster.from_sets(rows, order)
        if any(jaccard(cand, kept) > 0.9 for kept in biclusters):
            continue
        biclusters.append(cand)
        orders.append(list(order))
    out = BiclusterSet("opsm", {}, seed, biclusters)
    out.params["column_orders"] = orders
    return out
