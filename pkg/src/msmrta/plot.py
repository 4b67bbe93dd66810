"""Static SVG charts of sweep results: planning time vs victims, one series per robot count."""
from __future__ import annotations

from collections import defaultdict
from pathlib import Path
from xml.sax.saxutils import escape

PANEL_W, PANEL_H = 360, 240
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 16, 36, 44
PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]
ALGORITHMS = ("MSMRTA", "MRGA")


def _nice_max(value: float) -> float:
    if value <= 0:
        return 1.0
    mag = 10 ** len(str(int(value))) / 10
    for step in (1, 2, 2.5, 5, 10):
        if step * mag >= value:
            return step * mag
    return 10 * mag


def _collect(rows):
    """map -> algorithm -> N -> sorted [(M, median ms)]"""
    data = defaultdict(lambda: defaultdict(lambda: defaultdict(list)))
    for row in rows:
        if row.get("algorithm") not in ALGORITHMS or row.get("median_time_us") in ("", None):
            continue
        ms = float(row["median_time_us"]) / 1000.0
        data[row["map_id"]][row["algorithm"]][int(row["N"])].append((int(row["M"]), ms))
    for per_alg in data.values():
        for per_n in per_alg.values():
            for pts in per_n.values():
                pts.sort()
    return data


def _panel(x0, y0, title, series, colors, x_max) -> tuple[list[str], float]:
    out = []
    pw = PANEL_W - MARGIN_L - MARGIN_R
    ph = PANEL_H - MARGIN_T - MARGIN_B
    y_top = _nice_max(max((ms for pts in series.values() for _, ms in pts), default=1.0))
    x_min = min((m for pts in series.values() for m, _ in pts), default=0)
    x_span = max(x_max - x_min, 1)

    def sx(m):
        return x0 + MARGIN_L + (m - x_min) / x_span * pw

    def sy(ms):
        return y0 + MARGIN_T + ph - ms / y_top * ph

    out.append(f'<text x="{x0 + PANEL_W / 2:.1f}" y="{y0 + 20}" text-anchor="middle" '
               f'font-size="13" font-weight="bold">{escape(title)}</text>')
    left, bottom = x0 + MARGIN_L, y0 + MARGIN_T + ph
    out.append(f'<line x1="{left}" y1="{y0 + MARGIN_T}" x2="{left}" y2="{bottom}" stroke="black"/>')
    out.append(f'<line x1="{left}" y1="{bottom}" x2="{left + pw}" y2="{bottom}" stroke="black"/>')
    for i in range(5):
        val = y_top * i / 4
        y = sy(val)
        out.append(f'<line x1="{left - 4}" y1="{y:.1f}" x2="{left}" y2="{y:.1f}" stroke="black"/>')
        out.append(f'<text x="{left - 6}" y="{y + 4:.1f}" text-anchor="end" font-size="10">{val:g}</text>')
    ticks = sorted({m for pts in series.values() for m, _ in pts})
    for m in ticks:
        out.append(f'<text x="{sx(m):.1f}" y="{bottom + 14}" text-anchor="middle" font-size="10">{m}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{bottom + 32}" text-anchor="middle" '
               f'font-size="11">victims (M)</text>')
    out.append(f'<text x="{x0 + 14}" y="{y0 + MARGIN_T + ph / 2:.1f}" text-anchor="middle" font-size="11" '
               f'transform="rotate(-90 {x0 + 14} {y0 + MARGIN_T + ph / 2:.1f})">planning time (ms)</text>')
    for n, pts in sorted(series.items()):
        color = colors[n]
        coords = " ".join(f"{sx(m):.1f},{sy(ms):.1f}" for m, ms in pts)
        out.append(f'<polyline class="series" data-robots="{n}" fill="none" stroke="{color}" '
                   f'stroke-width="1.5" points="{coords}"/>')
        for m, ms in pts:
            out.append(f'<circle cx="{sx(m):.1f}" cy="{sy(ms):.1f}" r="2" fill="{color}"/>')
    return out, y_top


def render_svg(rows) -> str:
    data = _collect(rows)
    if not data:
        raise ValueError("no MSMRTA/MRGA timing rows to plot")
    robot_counts = sorted({n for per_alg in data.values() for per_n in per_alg.values() for n in per_n})
    colors = {n: PALETTE[i % len(PALETTE)] for i, n in enumerate(robot_counts)}
    legend_h = 24
    width = PANEL_W * len(ALGORITHMS)
    height = legend_h + PANEL_H * len(data)
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
             f'viewBox="0 0 {width} {height}" font-family="sans-serif">',
             f'<rect width="{width}" height="{height}" fill="white"/>']
    for i, n in enumerate(robot_counts):
        x = 10 + i * 70
        parts.append(f'<rect x="{x}" y="8" width="12" height="12" fill="{colors[n]}"/>')
        parts.append(f'<text x="{x + 16}" y="18" font-size="11">N={n}</text>')
    for row_i, map_id in enumerate(sorted(data)):
        x_max = max(m for per_n in data[map_id].values() for pts in per_n.values() for m, _ in pts)
        for col_i, alg in enumerate(ALGORITHMS):
            panel, _ = _panel(col_i * PANEL_W, legend_h + row_i * PANEL_H, f"{alg} / {map_id}",
                              data[map_id].get(alg, {}), colors, x_max)
            parts.append(f'<g class="panel" data-map="{escape(map_id)}" data-algorithm="{alg}">')
            parts.extend(panel)
            parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_plot(rows, path) -> Path:
    path = Path(path)
    path.write_text(render_svg(rows))
    return path
