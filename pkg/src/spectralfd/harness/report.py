"""Tabular experiment reports and their CSV / JSON / SVG renderings.

CSV is the canonical format: metadata rides in leading ``#`` comment lines,
floats carry 17 significant digits so byte-level determinism is checkable,
and the generation timestamp is isolated in the single ``# generated:``
line.  The SVG writer is a small hand-rolled polyline plotter (axes, ticks,
optional log scales, one polyline per series) so plots stay deterministic
and dependency-free.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

__all__ = [
    "ExperimentReport",
    "PlotSpec",
    "UnknownColumnError",
    "emit_csv",
    "emit_json",
    "emit_svg",
]


class UnknownColumnError(ValueError):
    """Plot specification names a column the report does not have."""


@dataclass
class ExperimentReport:
    """Rectangular named-column rows plus config echo metadata."""

    experiment: str
    columns: tuple[str, ...]
    rows: list[tuple]
    config_lines: tuple[str, ...]
    tool_version: str
    generated: str = field(
        default_factory=lambda: datetime.now(timezone.utc)
        .strftime("%Y-%m-%dT%H:%M:%SZ")
    )

    def __post_init__(self) -> None:
        if len(set(self.columns)) != len(self.columns):
            raise ValueError("column names must be unique")
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("rows must match the column count")

    def column(self, name: str) -> list:
        try:
            idx = self.columns.index(name)
        except ValueError:
            raise UnknownColumnError(f"no column named {name!r}") from None
        return [row[idx] for row in self.rows]


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def emit_csv(report: ExperimentReport, path) -> None:
    """Write the report as CSV with a commented metadata header."""
    lines = [f"# experiment: {report.experiment}",
             f"# tool_version: {report.tool_version}"]
    lines.extend(f"# config: {line}" for line in report.config_lines)
    lines.append(f"# generated: {report.generated}")
    lines.append(",".join(report.columns))
    for row in report.rows:
        lines.append(",".join(_format_cell(v) for v in row))
    with open(path, "w") as handle:
        handle.write("\n".join(lines) + "\n")


def emit_json(report: ExperimentReport, path) -> None:
    """Write the report as JSON mirroring rows and metadata."""
    payload = {
        "experiment": report.experiment,
        "tool_version": report.tool_version,
        "config": list(report.config_lines),
        "generated": report.generated,
        "columns": list(report.columns),
        "rows": [list(row) for row in report.rows],
    }
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


@dataclass(frozen=True)
class PlotSpec:
    """Which columns to draw: one polyline per y column (or per group)."""

    x: str
    y: tuple[str, ...]
    logx: bool = False
    logy: bool = False
    group_by: tuple[str, ...] = ()
    title: str = ""


_SVG_W, _SVG_H = 640, 480
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 30, 40, 50
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#17becf", "#7f7f7f")


def _usable(value, log: bool) -> bool:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        return False
    if not math.isfinite(value):
        return False
    return value > 0.0 if log else True


def _series_points(report: ExperimentReport,
                   spec: PlotSpec) -> list[tuple[str, list[tuple[float, float]]]]:
    for name in (spec.x, *spec.y, *spec.group_by):
        if name not in report.columns:
            raise UnknownColumnError(f"no column named {name!r}")
    xi = report.columns.index(spec.x)
    series: list[tuple[str, list[tuple[float, float]]]] = []
    if spec.group_by:
        gidx = [report.columns.index(g) for g in spec.group_by]
        keys: list[tuple] = []
        for row in report.rows:
            key = tuple(row[i] for i in gidx)
            if key not in keys:
                keys.append(key)
        for key in keys:
            for y_name in spec.y:
                yi = report.columns.index(y_name)
                pts = [(row[xi], row[yi]) for row in report.rows
                       if tuple(row[i] for i in gidx) == key]
                label = " ".join(str(part) for part in key)
                if len(spec.y) > 1:
                    label = f"{label} {y_name}"
                series.append((label, pts))
    else:
        for y_name in spec.y:
            yi = report.columns.index(y_name)
            series.append((y_name, [(row[xi], row[yi]) for row in report.rows]))
    cleaned = []
    for label, pts in series:
        kept = [(float(x), float(y)) for x, y in pts
                if _usable(x, spec.logx) and _usable(y, spec.logy)]
        cleaned.append((label, kept))
    return cleaned


def _ticks(lo: float, hi: float, log: bool, n: int = 5) -> list[float]:
    if log:
        lo_e, hi_e = math.floor(math.log10(lo)), math.ceil(math.log10(hi))
        step = max(1, (hi_e - lo_e) // n)
        return [10.0**e for e in range(lo_e, hi_e + 1, step)]
    if hi == lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    step = min(s * mag for s in (1, 2, 5, 10) if s * mag >= raw)
    start = math.ceil(lo / step) * step
    out = []
    t = start
    while t <= hi + 1e-12 * abs(step):
        out.append(t)
        t += step
    return out


def emit_svg(report: ExperimentReport, spec: PlotSpec, path) -> None:
    """Write a polyline plot of the named columns."""
    series = _series_points(report, spec)
    points = [pt for _, pts in series for pt in pts]
    if points:
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        x_lo, x_hi = min(xs), max(xs)
        y_lo, y_hi = min(ys), max(ys)
    else:
        x_lo = x_hi = y_lo = y_hi = 1.0

    def expand(lo: float, hi: float, log: bool) -> tuple[float, float]:
        if log:
            if lo == hi:
                return lo / 10.0, hi * 10.0
            return lo / 1.2, hi * 1.2
        if lo == hi:
            pad = abs(lo) * 0.1 or 1.0
            return lo - pad, hi + pad
        pad = (hi - lo) * 0.05
        return lo - pad, hi + pad

    x_lo, x_hi = expand(x_lo, x_hi, spec.logx)
    y_lo, y_hi = expand(y_lo, y_hi, spec.logy)

    def to_px(x: float, y: float) -> tuple[float, float]:
        if spec.logx:
            fx = (math.log10(x) - math.log10(x_lo)) / (math.log10(x_hi) - math.log10(x_lo))
        else:
            fx = (x - x_lo) / (x_hi - x_lo)
        if spec.logy:
            fy = (math.log10(y) - math.log10(y_lo)) / (math.log10(y_hi) - math.log10(y_lo))
        else:
            fy = (y - y_lo) / (y_hi - y_lo)
        px = _MARGIN_L + fx * (_SVG_W - _MARGIN_L - _MARGIN_R)
        py = _SVG_H - _MARGIN_B - fy * (_SVG_H - _MARGIN_T - _MARGIN_B)
        return px, py

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" '
        f'height="{_SVG_H}" viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
    ]
    title = spec.title or report.experiment
    parts.append(
        f'<text x="{_SVG_W / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>'
    )
    # axes
    x_axis_y = _SVG_H - _MARGIN_B
    parts.append(
        f'<line x1="{_MARGIN_L}" y1="{x_axis_y}" x2="{_SVG_W - _MARGIN_R}" '
        f'y2="{x_axis_y}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T}" x2="{_MARGIN_L}" '
        f'y2="{x_axis_y}" stroke="black"/>'
    )
    for t in _ticks(x_lo, x_hi, spec.logx):
        px, _ = to_px(t, y_hi)
        parts.append(
            f'<line x1="{px:.1f}" y1="{x_axis_y}" x2="{px:.1f}" '
            f'y2="{x_axis_y + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{px:.1f}" y="{x_axis_y + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{t:.4g}</text>'
        )
    for t in _ticks(y_lo, y_hi, spec.logy):
        _, py = to_px(x_hi, t)
        parts.append(
            f'<line x1="{_MARGIN_L - 5}" y1="{py:.1f}" x2="{_MARGIN_L}" '
            f'y2="{py:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_L - 8}" y="{py + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{t:.4g}</text>'
        )
    # axis labels
    parts.append(
        f'<text x="{(_MARGIN_L + _SVG_W - _MARGIN_R) / 2:.1f}" '
        f'y="{_SVG_H - 12}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="13">{spec.x}{" (log)" if spec.logx else ""}</text>'
    )
    y_label = ", ".join(spec.y)
    parts.append(
        f'<text x="16" y="{(_MARGIN_T + x_axis_y) / 2:.1f}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 16 {(_MARGIN_T + x_axis_y) / 2:.1f})">'
        f'{y_label}{" (log)" if spec.logy else ""}</text>'
    )
    # polylines + legend
    for i, (label, pts) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        if pts:
            coords = " ".join(f"{to_px(x, y)[0]:.2f},{to_px(x, y)[1]:.2f}"
                              for x, y in pts)
            parts.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" '
                f'stroke-width="1.5"/>'
            )
        legend_y = _MARGIN_T + 14 * i + 4
        parts.append(
            f'<line x1="{_SVG_W - _MARGIN_R - 130}" y1="{legend_y}" '
            f'x2="{_SVG_W - _MARGIN_R - 110}" y2="{legend_y}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{_SVG_W - _MARGIN_R - 105}" y="{legend_y + 4}" '
            f'font-family="sans-serif" font-size="11">{label}</text>'
        )
    parts.append("</svg>")
    with open(path, "w") as handle:
        handle.write("\n".join(parts) + "\n")
