"""Conserved expression motifs on discretized matrices: random seed columns
and determinant column sets propose motifs; the best motif per round (by row
count, subject to a minimum column fraction) is kept and its rows removed."""

from __future__ import annotations

import numpy as np

from ..core import Bicluster, BiclusterSet, DomainError, make_rng
from . import ParamSpec, register

PARAMS = (
    ParamSpec("n_seeds", "int", default=10, min=1),
    ParamSpec("n_determinants", "int", default=100, min=1),
    ParamSpec("determinant_size", "int", default=7, min=1),
    ParamSpec("alpha", "float", default=0.05, min=0.0, max=1.0, min_exclusive=True,
              description="minimum fraction of columns a motif must span"),
    ParamSpec("max_motifs", "int", default=100, min=1),
)


@register("xmotif", PARAMS, "conserved per-gene states across a column subset")
def run(m, params, seed) -> BiclusterSet:
    values = m.values
    if not np.allclose(values, np.round(values)):
        raise DomainError("xmotif requires a discretized (integer-level) matrix; "
                          "run discretize first")
    states = values.astype(int)
    n_rows, n_cols = states.shape
    rng = make_rng(seed)
    min_cols = max(1, int(np.ceil(params["alpha"] * n_cols)))
    s_d = min(params["determinant_size"], max(n_cols - 1, 1))

    alive = np.ones(n_rows, dtype=bool)
    biclusters = []
    while len(biclusters) < params["max_motifs"] and alive.sum() > 0:
        best = None  # (n_rows, rows, cols)
        sub = states[alive]
        alive_idx = np.where(alive)[0]
        for _ in range(params["n_seeds"]):
            c = int(rng.integers(n_cols))
            others = np.delete(np.arange(n_cols), c)
            for _ in range(params["n_determinants"]):
                det = rng.choice(others, size=min(s_d, len(others)), replace=False)
                witness = np.concatenate([[c], det])
                genes = (sub[:, witness] == sub[:, [c]]).all(axis=1)
                if not genes.any():
                    continue
                motif_states = sub[genes, c]
                cols_ok = (sub[np.ix_(genes, np.arange(n_cols))]
                           == motif_states[:, None]).all(axis=0)
                n_motif_cols = int(cols_ok.sum())
                if n_motif_cols < min_cols:
                    continue
                cand = (int(genes.sum()), n_motif_cols)
                if best is None or cand > best[0]:
                    best = (cand, alive_idx[genes], np.where(cols_ok)[0])
        if best is None:
            break
        _, rows, cols = best
        biclusters.append(Bicluster(tuple(rows), tuple(cols)))
        alive[rows] = False
    return BiclusterSet("xmotif", {}, seed, biclusters)
