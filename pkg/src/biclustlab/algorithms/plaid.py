"""Plaid model fitting: greedy layer extraction on the residual matrix with
binary least-squares membership updates, a shuffle-based significance gate,
and full backfitting of all accepted layers."""

from __future__ import annotations

import numpy as np

from ..core import Bicluster, BiclusterSet, derive_seed, make_rng
from . import ParamSpec, register

PARAMS = (
    ParamSpec("max_layers", "int", default=5, min=0),
    ParamSpec("backfit_iter", "int", default=10, min=1),
    ParamSpec("min_layer_rows", "int", default=2, min=1),
    ParamSpec("min_layer_cols", "int", default=2, min=1),
    ParamSpec("release_threshold", "float", default=0.5, min=0.0, max=1.0,
              description="membership projection cutoff"),
    ParamSpec("n_init", "int", default=8, min=1,
              description="random membership restarts per layer"),
    ParamSpec("significance_margin", "float", default=1.5, min=1.0,
              description="layer SS must exceed margin x best shuffled SS"),
    ParamSpec("n_shuffles", "int", default=3, min=1),
)


def _additive_fit(z: np.ndarray) -> np.ndarray:
    mu = z.mean()
    alpha = z.mean(axis=1, keepdims=True) - mu
    beta = z.mean(axis=0, keepdims=True) - mu
    return mu + alpha + beta


def _median_polish(a: np.ndarray, iters: int = 10) -> np.ndarray:
    """Robust two-way background fit; minority layers do not drag the
    row/column effects the way least squares does."""
    resid = a.copy()
    fit = np.zeros_like(a)
    for _ in range(iters):
        rm = np.median(resid, axis=1, keepdims=True)
        resid -= rm
        fit += rm
        cm = np.median(resid, axis=0, keepdims=True)
        resid -= cm
        fit += cm
        if (np.abs(rm) < 1e-12).all() and (np.abs(cm) < 1e-12).all():
            break
    return fit


def _layer_theta(z: np.ndarray, rows: np.ndarray, cols: np.ndarray):
    """Two-way effects (mu, alpha for all rows, beta for all cols) estimated
    from the member submatrix but extended to every row/column."""
    sub = z[np.ix_(np.where(rows)[0], np.where(cols)[0])]
    mu = sub.mean()
    beta_all = z[rows, :].mean(axis=0) - mu
    alpha_all = (z[:, cols] - beta_all[cols][None, :]).mean(axis=1) - mu
    return mu, alpha_all, beta_all


def _svd_init(z: np.ndarray):
    """Membership guess from the leading rank-1 structure of the residual."""
    u, s, vt = np.linalg.svd(z, full_matrices=False)
    u1, v1 = u[:, 0], vt[0]
    su = np.sign(u1[np.argmax(np.abs(u1))]) or 1.0
    sv = np.sign(v1[np.argmax(np.abs(v1))]) or 1.0
    rows = su * u1 >= 0.5 * (su * u1).max()
    cols = sv * v1 >= 0.5 * (sv * v1).max()
    return rows, cols


def _fit_layer(z: np.ndarray, rng, backfit_iter: int, thresh: float,
               min_rows: int, min_cols: int, init=None):
    n_rows, n_cols = z.shape
    if init is not None:
        rows, cols = init[0].copy(), init[1].copy()
    else:
        rows = rng.random(n_rows) < 0.5
        cols = rng.random(n_cols) < 0.5
    if not rows.any():
        rows[int(rng.integers(n_rows))] = True
    if not cols.any():
        cols[int(rng.integers(n_cols))] = True
    for _ in range(backfit_iter):
        mu, alpha, beta = _layer_theta(z, rows, cols)
        # non-members carry no row effect: they must match mu + beta to join
        alpha_m = np.where(rows, alpha, 0.0)
        theta_cols = mu + alpha_m[:, None] + beta[None, cols]  # all rows x member cols
        denom = (theta_cols ** 2).sum(axis=1)
        proj = np.where(denom > 0, (theta_cols * z[:, cols]).sum(axis=1)
                        / np.where(denom == 0, 1.0, denom), 0.0)
        new_rows = proj >= thresh
        if not new_rows.any():
            return None
        rows = new_rows
        mu, alpha, beta = _layer_theta(z, rows, cols)
        beta_m = np.where(cols, beta, 0.0)
        theta_rows = mu + alpha[rows][:, None] + beta_m[None, :]  # member rows x all cols
        denom = (theta_rows ** 2).sum(axis=0)
        proj = np.where(denom > 0, (theta_rows * z[rows, :]).sum(axis=0)
                        / np.where(denom == 0, 1.0, denom), 0.0)
        new_cols = proj >= thresh
        if not new_cols.any():
            return None
        if (new_cols == cols).all() and (new_rows == rows).all():
            cols = new_cols
            break
        cols = new_cols
    # release members the layer model explains poorly, so loose fits
    # collapse to their coherent core before layers are compared by SS
    while True:
        if rows.sum() < min_rows or cols.sum() < min_cols:
            return None
        mu, alpha, beta = _layer_theta(z, rows, cols)
        theta = mu + alpha[rows][:, None] + beta[None, cols]
        sub = z[np.ix_(np.where(rows)[0], np.where(cols)[0])]
        err = (sub - theta) ** 2
        tot_r = np.maximum((sub ** 2).sum(axis=1), 1e-300)
        tot_c = np.maximum((sub ** 2).sum(axis=0), 1e-300)
        keep_r = 1.0 - err.sum(axis=1) / tot_r >= thresh
        keep_c = 1.0 - err.sum(axis=0) / tot_c >= thresh
        if keep_r.all() and keep_c.all():
            break
        new_rows = rows.copy()
        new_rows[np.where(rows)[0][~keep_r]] = False
        new_cols = cols.copy()
        new_cols[np.where(cols)[0][~keep_c]] = False
        rows, cols = new_rows, new_cols
    # explained SS, not raw theta SS: penalizes fits whose model leaves
    # interaction structure behind (e.g. two disjoint layers merged)
    ss = float((sub ** 2).sum() - ((sub - theta) ** 2).sum())
    return rows, cols, ss


def _best_layer(z, seed_base, n_init, backfit_iter, thresh, min_rows, min_cols):
    best = None
    for r in range(n_init):
        rng = make_rng(derive_seed(seed_base, r))
        init = _svd_init(z) if r == 0 else None
        fit = _fit_layer(z, rng, backfit_iter, thresh, min_rows, min_cols, init=init)
        if fit is not None and (best is None or fit[2] > best[2]):
            best = fit
    return best


def _backfit_all(a: np.ndarray, layers: list, cycles: int = 1000, tol: float = 1e-15):
    """Re-estimate background and every layer's effects with memberships fixed
    until the total residual stops improving."""
    background = np.zeros_like(a)
    thetas = [np.zeros((int(r.sum()), int(c.sum()))) for r, c in layers]
    prev_ss = np.inf
    for _ in range(cycles):
        model = background.copy()
        for (rows, cols), th in zip(layers, thetas):
            model[np.ix_(np.where(rows)[0], np.where(cols)[0])] += th
        background = background + _additive_fit(a - model)
        for idx, (rows, cols) in enumerate(layers):
            model = background.copy()
            for jdx, ((r2, c2), th) in enumerate(zip(layers, thetas)):
                if jdx != idx:
                    model[np.ix_(np.where(r2)[0], np.where(c2)[0])] += th
            resid = (a - model)[np.ix_(np.where(rows)[0], np.where(cols)[0])]
            thetas[idx] = _additive_fit(resid)
        model = background.copy()
        for (rows, cols), th in zip(layers, thetas):
            model[np.ix_(np.where(rows)[0], np.where(cols)[0])] += th
        ss = float(((a - model) ** 2).sum())
        if prev_ss - ss <= tol:
            break
        prev_ss = ss
    return model


@register("plaid", PARAMS, "superposed additive layers fitted on residuals")
def run(m, params, seed) -> BiclusterSet:
    a = m.values
    background = _median_polish(a)
    residual = a - background
    layers = []
    thresh = params["release_threshold"]
    ss_floor = 1e-9 * max(float((residual ** 2).sum()), 1.0)
    for k in range(params["max_layers"]):
        best = _best_layer(residual, derive_seed(seed, 1000 + k), params["n_init"],
                           params["backfit_iter"], thresh,
                           params["min_layer_rows"], params["min_layer_cols"])
        if best is None:
            break
        rows, cols, ss = best
        if ss <= ss_floor:
            break
        # significance: the layer must beat fits on row-shuffled residuals
        shuffle_rng = make_rng(derive_seed(seed, 2000 + k))
        shuffled_best = 0.0
        for s in range(params["n_shuffles"]):
            shuffled = residual.copy()
            for i in range(shuffled.shape[0]):
                shuffle_rng.shuffle(shuffled[i])
            fit = _best_layer(shuffled, derive_seed(seed, 3000 + k * 10 + s),
                              params["n_init"], params["backfit_iter"], thresh,
                              params["min_layer_rows"], params["min_layer_cols"])
            if fit is not None:
                shuffled_best = max(shuffled_best, fit[2])
        if ss <= params["significance_margin"] * shuffled_best:
            break
        layers.append((rows, cols))
        mu, alpha, beta = _layer_theta(residual, rows, cols)
        theta = mu + alpha[rows][:, None] + beta[None, cols]
        residual[np.ix_(np.where(rows)[0], np.where(cols)[0])] -= theta
    if layers:
        model = _backfit_all(a, layers)
        residual_ss = float(((a - model) ** 2).sum())
    else:
        residual_ss = float(((a - background) ** 2).sum())
    biclusters = [
        Bicluster(tuple(np.where(rows)[0]), tuple(np.where(cols)[0]))
        for rows, cols in layers
    ]
    out = BiclusterSet("plaid", {}, seed, biclusters)
    out.params["residual_ss"] = residual_ss
    return out
