"""SVG renderers: heat map, gene plot (parallel-coordinate profiles) and a
membership-rectangle cluster plot. Output is plain text SVG built with fixed
number formatting, so identical inputs give byte-identical documents."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape

import numpy as np

from .core import Bicluster, BiclusterSet, ExpressionMatrix, ValidationError

COLOR_MAPS = ("diverging", "grayscale")


@dataclass(frozen=True)
class RenderSpec:
    kind: str = "heatmap"  # heatmap | gene_plot | cluster_plot
    target: Optional[int] = None  # bicluster index, or None for whole matrix
    color_map: str = "diverging"
    width: int = 640
    height: int = 480
    highlight: bool = False

    def validate(self, n_biclusters: Optional[int] = None):
        if self.width <= 0 or self.height <= 0:
            raise ValidationError("render dimensions must be positive")
        if self.color_map not in COLOR_MAPS:
            raise ValidationError(f"unknown color map {self.color_map!r}")
        if self.target is not None and n_biclusters is not None:
            if not 0 <= self.target < n_biclusters:
                raise ValidationError(
                    f"bicluster index {self.target} out of range (set has {n_biclusters})")


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _hex(r: float, g: float, b: float) -> str:
    c = [int(round(max(0.0, min(1.0, v)) * 255)) for v in (r, g, b)]
    return "#{:02x}{:02x}{:02x}".format(*c)


def cell_color(value: float, lo: float, hi: float, center: float,
               color_map: str = "diverging") -> str:
    """Linear value-to-color map on [lo, hi]; diverging is blue-white-red
    centered at `center` (the matrix mean by default)."""
    if hi <= lo:
        t = 0.5
    else:
        t = (value - lo) / (hi - lo)
    if color_map == "grayscale":
        return _hex(t, t, t)
    if value <= center:
        span = center - lo
        u = 0.0 if span <= 0 else max(0.0, (center - value) / span)
        return _hex(1.0 - u, 1.0 - u, 1.0)  # white -> blue
    span = hi - center
    u = 0.0 if span <= 0 else max(0.0, (value - center) / span)
    return _hex(1.0, 1.0 - u, 1.0 - u)  # white -> red


def _document(width: int, height: int, body: list) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">')
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _reorder_for_highlight(m: ExpressionMatrix, b: Bicluster):
    rows = list(b.rows) + [i for i in range(len(m.row_ids)) if i not in set(b.rows)]
    cols = list(b.cols) + [j for j in range(len(m.col_ids)) if j not in set(b.cols)]
    return rows, cols


def render_heatmap(m: ExpressionMatrix, s: Optional[BiclusterSet] = None,
                   spec: RenderSpec = RenderSpec()) -> str:
    if len(m.row_ids) == 0 or len(m.col_ids) == 0:
        raise ValidationError("cannot render an empty matrix")
    spec.validate(None if s is None else len(s))
    values = m.values
    n_rows, n_cols = values.shape
    if spec.highlight and spec.target is not None and s is not None:
        row_order, col_order = _reorder_for_highlight(m, s.biclusters[spec.target])
    else:
        row_order, col_order = list(range(n_rows)), list(range(n_cols))
    lo, hi = float(np.nanmin(values)), float(np.nanmax(values))
    center = float(np.nanmean(values))
    cw = spec.width / n_cols
    ch = spec.height / n_rows
    body = []
    for p, i in enumerate(row_order):
        for q, j in enumerate(col_order):
            color = cell_color(float(values[i, j]), lo, hi, center, spec.color_map)
            body.append(
                f'<rect class="cell" data-row="{escape(m.row_ids[i])}" '
                f'data-col="{escape(m.col_ids[j])}" x="{_fmt(q * cw)}" '
                f'y="{_fmt(p * ch)}" width="{_fmt(cw)}" height="{_fmt(ch)}" '
                f'fill="{color}"/>')
    if spec.highlight and spec.target is not None and s is not None:
        b = s.biclusters[spec.target]
        body.append(
            f'<rect class="bicluster-outline" x="0.00" y="0.00" '
            f'width="{_fmt(len(b.cols) * cw)}" height="{_fmt(len(b.rows) * ch)}" '
            f'fill="none" stroke="#000000" stroke-width="2"/>')
    return _document(spec.width, spec.height, body)


def render_gene_plot(m: ExpressionMatrix, b: Bicluster,
                     spec: RenderSpec = RenderSpec(kind="gene_plot")) -> str:
    spec.validate()
    b.validate_against(m)
    sub = m.values[np.ix_(b.rows, b.cols)]
    n_rows, n_cols = sub.shape
    margin = 30.0
    iw = spec.width - 2 * margin
    ih = spec.height - 2 * margin
    lo, hi = float(sub.min()), float(sub.max())
    span = hi - lo if hi > lo else 1.0

    def x_at(q):
        return margin + (iw * q / (n_cols - 1) if n_cols > 1 else iw / 2)

    def y_at(v):
        return margin + ih * (1.0 - (v - lo) / span)

    body = []
    for q, j in enumerate(b.cols):
        body.append(
            f'<text class="axis-label" x="{_fmt(x_at(q))}" '
            f'y="{_fmt(spec.height - 8.0)}" text-anchor="middle" '
            f'font-size="10">{escape(m.col_ids[j])}</text>')
    for p, i in enumerate(b.rows):
        pts = " ".join(f"{_fmt(x_at(q))},{_fmt(y_at(float(sub[p, q])))}"
                       for q in range(n_cols))
        body.append(
            f'<polyline class="gene" data-row="{escape(m.row_ids[i])}" '
            f'points="{pts}" fill="none" stroke="#1f6fb4" stroke-width="1"/>')
    return _document(spec.width, spec.height, body)


def render_cluster_plot(m: ExpressionMatrix, s: BiclusterSet,
                        spec: RenderSpec = RenderSpec(kind="cluster_plot")) -> str:
    if len(m.row_ids) == 0 or len(m.col_ids) == 0:
        raise ValidationError("cannot render an empty matrix")
    spec.validate(len(s))
    n_rows, n_cols = m.values.shape
    legend_w = 140.0
    iw = spec.width - legend_w
    ih = float(spec.height)
    cw = iw / n_cols
    ch = ih / n_rows
    body = [f'<rect class="silhouette" x="0.00" y="0.00" width="{_fmt(iw)}" '
            f'height="{_fmt(ih)}" fill="#f2f2f2" stroke="#808080"/>']
    extents = []
    for idx, b in enumerate(s.biclusters):
        x0, x1 = min(b.cols) * cw, (max(b.cols) + 1) * cw
        y0, y1 = min(b.rows) * ch, (max(b.rows) + 1) * ch
        extents.append((x0, y0, x1, y1))
        body.append(
            f'<rect class="bicluster" data-index="{idx}" x="{_fmt(x0)}" '
            f'y="{_fmt(y0)}" width="{_fmt(x1 - x0)}" height="{_fmt(y1 - y0)}" '
            f'fill="#1f6fb4" fill-opacity="0.35" stroke="#1f6fb4"/>')
    for a in range(len(extents)):
        for b_idx in range(a + 1, len(extents)):
            ax0, ay0, ax1, ay1 = extents[a]
            bx0, by0, bx1, by1 = extents[b_idx]
            ox0, oy0 = max(ax0, bx0), max(ay0, by0)
            ox1, oy1 = min(ax1, bx1), min(ay1, by1)
            cells_a = s.biclusters[a].cells()
            if ox0 < ox1 and oy0 < oy1 and cells_a & s.biclusters[b_idx].cells():
                body.append(
                    f'<rect class="overlap" data-biclusters="{a},{b_idx}" '
                    f'x="{_fmt(ox0)}" y="{_fmt(oy0)}" width="{_fmt(ox1 - ox0)}" '
                    f'height="{_fmt(oy1 - oy0)}" fill="#b41f1f" '
                    f'fill-opacity="0.25" stroke="none"/>')
    for idx, b in enumerate(s.biclusters):
        body.append(
            f'<text class="legend" x="{_fmt(iw + 10.0)}" '
            f'y="{_fmt(16.0 + 14.0 * idx)}" font-size="11">'
            f'{idx}: {len(b.rows)}x{len(b.cols)}</text>')
    return _document(spec.width, spec.height, body)


def render(m: ExpressionMatrix, s: BiclusterSet, spec: RenderSpec) -> str:
    """Dispatch on spec.kind; gene plots require a bicluster target."""
    if spec.kind == "heatmap":
        return render_heatmap(m, s, spec)
    if spec.kind == "gene_plot":
        if spec.target is None:
            raise ValidationError("gene_plot requires a bicluster target")
        spec.validate(len(s))
        return render_gene_plot(m, s.biclusters[spec.target], spec)
    if spec.kind == "cluster_plot":
        return render_cluster_plot(m, s, spec)
    raise ValidationError(f"unknown render kind {spec.kind!r}")
