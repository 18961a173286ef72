"""Self-contained SVG emission: parallel-coordinate plots and boxplots.

No plotting dependency; files are plain SVG 1.1 with inline styling.  The
``best`` CSS class marks highlighted elements for downstream styling.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

WIDTH = 720
HEIGHT = 480
MARGIN = 60


def _svg_header(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        "<style>text{font-family:sans-serif;font-size:11px;} "
        ".axis{stroke:#333;stroke-width:1;} "
        ".poly{fill:none;stroke:#1f77b4;stroke-width:0.8;stroke-opacity:0.45;} "
        ".box{fill:#9ecae1;stroke:#333;} .median{stroke:#d62728;stroke-width:2;} "
        ".whisker{stroke:#333;} .outlier{fill:#d62728;} .best{stroke:#2ca02c;}</style>",
        f"<title>{title}</title>",
        f'<text x="{WIDTH / 2}" y="20" text-anchor="middle" font-size="14">{title}</text>',
    ]


def _fmt_tick(value: float) -> str:
    return f"{value:.4g}"


def parallel_coordinates_svg(points: np.ndarray, path, title: str = "",
                             axis_labels=None) -> Path:
    """One polyline per solution across m labelled vertical axes.

    Axes carry their own min/max ticks, so differently scaled objectives stay
    readable.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[0] == 0:
        raise ValueError("parallel coordinates need a non-empty point matrix")
    n, m = points.shape
    if axis_labels is None:
        axis_labels = [f"obj_{k}" for k in range(m)]
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    span = np.where(hi - lo == 0.0, 1.0, hi - lo)
    xs = np.linspace(MARGIN, WIDTH - MARGIN, m)
    top, bottom = MARGIN, HEIGHT - MARGIN
    out = _svg_header(title)
    for k in range(m):
        x = xs[k]
        out.append(f'<line class="axis" x1="{x:.1f}" y1="{top}" x2="{x:.1f}" y2="{bottom}"/>')
        out.append(f'<text x="{x:.1f}" y="{bottom + 28}" text-anchor="middle">{axis_labels[k]}</text>')
        out.append(f'<text x="{x:.1f}" y="{top - 8}" text-anchor="middle">{_fmt_tick(hi[k])}</text>')
        out.append(f'<text x="{x:.1f}" y="{bottom + 14}" text-anchor="middle">{_fmt_tick(lo[k])}</text>')
    for row in points:
        ys = bottom - (row - lo) / span * (bottom - top)
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))
        out.append(f'<polyline class="poly" points="{pts}"/>')
    out.append("</svg>")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(out) + "\n")
    return path


def boxplot_svg(groups: dict[str, np.ndarray], path, title: str = "",
                best: str | None = None) -> Path:
    """Median/quartile boxes with 1.5-IQR whiskers and outlier dots per group."""
    if not groups:
        raise ValueError("boxplot needs at least one group")
    labels = list(groups)
    data = [np.asarray(groups[k], dtype=np.float64) for k in labels]
    allvals = np.concatenate(data)
    lo, hi = float(allvals.min()), float(allvals.max())
    if hi == lo:
        hi = lo + 1.0
    top, bottom = MARGIN, HEIGHT - MARGIN

    def y_of(v: float) -> float:
        return bottom - (v - lo) / (hi - lo) * (bottom - top)

    slot = (WIDTH - 2 * MARGIN) / len(labels)
    box_w = min(60.0, slot * 0.5)
    out = _svg_header(title)
    out.append(f'<line class="axis" x1="{MARGIN}" y1="{top}" x2="{MARGIN}" y2="{bottom}"/>')
    out.append(f'<text x="{MARGIN - 6}" y="{y_of(hi):.1f}" text-anchor="end">{_fmt_tick(hi)}</text>')
    out.append(f'<text x="{MARGIN - 6}" y="{y_of(lo):.1f}" text-anchor="end">{_fmt_tick(lo)}</text>')
    for i, (label, values) in enumerate(zip(labels, data)):
        cx = MARGIN + slot * (i + 0.5)
        q1, med, q3 = np.percentile(values, [25, 50, 75])
        iqr = q3 - q1
        lo_w = values[values >= q1 - 1.5 * iqr].min()
        hi_w = values[values <= q3 + 1.5 * iqr].max()
        cls = "box best" if label == best else "box"
        out.append(f'<line class="whisker" x1="{cx:.1f}" y1="{y_of(lo_w):.1f}" '
                   f'x2="{cx:.1f}" y2="{y_of(q1):.1f}"/>')
        out.append(f'<line class="whisker" x1="{cx:.1f}" y1="{y_of(q3):.1f}" '
                   f'x2="{cx:.1f}" y2="{y_of(hi_w):.1f}"/>')
        for w in (lo_w, hi_w):
            out.append(f'<line class="whisker" x1="{cx - box_w / 4:.1f}" y1="{y_of(w):.1f}" '
                       f'x2="{cx + box_w / 4:.1f}" y2="{y_of(w):.1f}"/>')
        out.append(f'<rect class="{cls}" x="{cx - box_w / 2:.1f}" y="{y_of(q3):.1f}" '
                   f'width="{box_w:.1f}" height="{max(y_of(q1) - y_of(q3), 0.0):.1f}"/>')
        out.append(f'<line class="median" x1="{cx - box_w / 2:.1f}" y1="{y_of(med):.1f}" '
                   f'x2="{cx + box_w / 2:.1f}" y2="{y_of(med):.1f}"/>')
        for v in values[(values < q1 - 1.5 * iqr) | (values > q3 + 1.5 * iqr)]:
            out.append(f'<circle class="outlier" cx="{cx:.1f}" cy="{y_of(v):.1f}" r="2.5"/>')
        out.append(f'<text x="{cx:.1f}" y="{bottom + 20}" text-anchor="middle">{label}</text>')
    out.append("</svg>")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(out) + "\n")
    return path


def emit_plot(kind: str, data, path, title: str = "", **kwargs) -> Path:
    """Dispatch by kind: 'parallel_coordinates' (point matrix) or 'boxplot' (groups)."""
    if kind == "parallel_coordinates":
        return parallel_coordinates_svg(np.asarray(data), path, title=title, **kwargs)
    if kind == "boxplot":
        return boxplot_svg(data, path, title=title, **kwargs)
    raise ValueError(f"unknown plot kind '{kind}'")
