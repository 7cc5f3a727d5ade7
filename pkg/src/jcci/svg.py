"""Minimal deterministic SVG charts.

Line and grouped-bar charts with axes, ticks, optional shaded x-ranges,
and a legend. No external renderer: the output is assembled from
template strings with fixed float formatting, so the same inputs always
produce the same bytes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
)
SHADE_COLOR = "#2ca02c"


@dataclass(frozen=True)
class Series:
    label: str
    xs: tuple[float, ...]
    ys: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.xs) != len(self.ys):
            raise InputError(
                f"series '{self.label}': {len(self.xs)} x values vs {len(self.ys)} y values"
            )
        if not self.xs:
            raise InputError(f"series '{self.label}': empty")
        for value in list(self.xs) + list(self.ys):
            if not math.isfinite(value):
                raise InputError(f"series '{self.label}': non-finite value")


@dataclass(frozen=True)
class ChartSpec:
    title: str
    x_label: str
    y_label: str
    shaded: tuple[tuple[float, float], ...] = ()
    kind: str = "line"  # "line" or "bar"
    width: int = 840
    height: int = 480
    categories: tuple[str, ...] | None = None  # bar charts: x tick labels

    def __post_init__(self) -> None:
        if self.kind not in ("line", "bar"):
            raise InputError(f"chart kind must be 'line' or 'bar', got '{self.kind}'")
        if self.width < 200 or self.height < 150:
            raise InputError("chart must be at least 200x150")


_MARGIN_LEFT = 76
_MARGIN_RIGHT = 18
_MARGIN_TOP = 40
_MARGIN_BOTTOM = 56


def _fmt(value: float) -> str:
    # Normalize negative zero so -0 and 0 render identically.
    if value == 0:
        value = 0.0
    text = format(value, ".6g")
    return text


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    """Round tick positions covering [lo, hi]."""
    if lo == hi:
        pad = abs(lo) * 0.1 or 1.0
        lo, hi = lo - pad, hi + pad
    raw = (hi - lo) / target
    magnitude = 10.0 ** math.floor(math.log10(raw))
    step = 10.0 * magnitude
    for multiple in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= multiple * magnitude:
            step = multiple * magnitude
            break
    first = math.ceil(lo / step - 1e-9)
    last = math.floor(hi / step + 1e-9)
    return [round(i * step, 12) for i in range(first, last + 1)]


def emit_chart(dataset: list[Series] | tuple[Series, ...], spec: ChartSpec) -> bytes:
    """Render a dataset to SVG bytes. Same inputs, same bytes."""
    series = tuple(dataset)
    if not series:
        raise InputError("empty dataset")
    if spec.kind == "bar":
        return _emit_bar(series, spec)
    return _emit_line(series, spec)


def _data_ranges(series: tuple[Series, ...], spec: ChartSpec) -> tuple[float, float, float, float]:
    xs = [x for s in series for x in s.xs]
    ys = [y for s in series for y in s.ys]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys + [0.0]), max(ys)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0
    if y_lo == y_hi:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    return x_lo, x_hi, y_lo, y_hi


def _emit_line(series: tuple[Series, ...], spec: ChartSpec) -> bytes:
    x_lo, x_hi, y_lo, y_hi = _data_ranges(series, spec)
    x_ticks = nice_ticks(x_lo, x_hi)
    y_ticks = nice_ticks(y_lo, y_hi)
    y_lo = min(y_lo, y_ticks[0])
    y_hi = max(y_hi, y_ticks[-1])

    plot_w = spec.width - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = spec.height - _MARGIN_TOP - _MARGIN_BOTTOM

    def px(x: float) -> float:
        return _MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return _MARGIN_TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    parts = _svg_header(spec)
    # Shaded windows decorate the plot but never stretch its scale:
    # anything outside the data range is clipped off.
    for x0, x1 in spec.shaded:
        left = px(max(min(x0, x1), x_lo))
        right = px(min(max(x0, x1), x_hi))
        if right <= left:
            continue
        parts.append(
            f'<rect class="shade" x="{_fmt(left)}" y="{_MARGIN_TOP}" '
            f'width="{_fmt(right - left)}" height="{plot_h}" '
            f'fill="{SHADE_COLOR}" fill-opacity="0.22"/>'
        )
    parts.extend(_axes(spec, x_ticks, y_ticks, px, py, plot_h))
    for i, s in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        points = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(s.xs, s.ys))
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.8" points="{points}"/>'
        )
    parts.extend(_legend(series, spec))
    parts.append("</svg>")
    return "\n".join(parts).encode("utf-8")


def _emit_bar(series: tuple[Series, ...], spec: ChartSpec) -> bytes:
    n_categories = len(series[0].xs)
    for s in series:
        if len(s.xs) != n_categories:
            raise InputError("bar chart series must share the same categories")
    if spec.categories is not None and len(spec.categories) != n_categories:
        raise InputError(
            f"{len(spec.categories)} category labels for {n_categories} categories"
        )
    ys = [y for s in series for y in s.ys]
    y_lo = min(min(ys), 0.0)
    y_hi = max(max(ys), 0.0)
    if y_lo == y_hi:
        y_hi = y_lo + 1.0
    y_ticks = nice_ticks(y_lo, y_hi)
    y_lo = min(y_lo, y_ticks[0])
    y_hi = max(y_hi, y_ticks[-1])

    plot_w = spec.width - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = spec.height - _MARGIN_TOP - _MARGIN_BOTTOM

    def py(y: float) -> float:
        return _MARGIN_TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    parts = _svg_header(spec)
    slot = plot_w / n_categories
    group = slot * 0.8
    bar_w = group / len(series)
    baseline_y = py(0.0)
    for i, s in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        for j, y in enumerate(s.ys):
            x = _MARGIN_LEFT + j * slot + (slot - group) / 2 + i * bar_w
            top = min(py(y), baseline_y)
            height = abs(py(y) - baseline_y)
            parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(top)}" width="{_fmt(bar_w)}" '
                f'height="{_fmt(height)}" fill="{color}"/>'
            )
    # y axis and ticks
    axis_bottom = _MARGIN_TOP + plot_h
    parts.append(_line(_MARGIN_LEFT, _MARGIN_TOP, _MARGIN_LEFT, axis_bottom))
    parts.append(_line(_MARGIN_LEFT, axis_bottom, _MARGIN_LEFT + plot_w, axis_bottom))
    for tick in y_ticks:
        y = py(tick)
        parts.append(_line(_MARGIN_LEFT - 4, y, _MARGIN_LEFT, y))
        parts.append(
            f'<text x="{_MARGIN_LEFT - 8}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-size="11">{_fmt(tick)}</text>'
        )
    labels = spec.categories or tuple(_fmt(x) for x in series[0].xs)
    for j, label in enumerate(labels):
        x = _MARGIN_LEFT + (j + 0.5) * slot
        parts.append(
            f'<text x="{_fmt(x)}" y="{axis_bottom + 18}" text-anchor="middle" '
            f'font-size="11">{_escape(label)}</text>'
        )
    parts.extend(_axis_labels(spec, plot_w, plot_h))
    parts.extend(_legend(series, spec))
    parts.append("</svg>")
    return "\n".join(parts).encode("utf-8")


def _svg_header(spec: ChartSpec) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}" font-family="sans-serif">',
        f'<rect width="{spec.width}" height="{spec.height}" fill="#ffffff"/>',
        f'<text x="{spec.width // 2}" y="22" text-anchor="middle" font-size="15">'
        f"{_escape(spec.title)}</text>",
    ]


def _line(x0: float, y0: float, x1: float, y1: float) -> str:
    return (
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
        f'stroke="#333333" stroke-width="1"/>'
    )


def _axes(spec, x_ticks, y_ticks, px, py, plot_h) -> list[str]:
    parts = []
    axis_bottom = _MARGIN_TOP + plot_h
    plot_w = spec.width - _MARGIN_LEFT - _MARGIN_RIGHT
    parts.append(_line(_MARGIN_LEFT, _MARGIN_TOP, _MARGIN_LEFT, axis_bottom))
    parts.append(_line(_MARGIN_LEFT, axis_bottom, _MARGIN_LEFT + plot_w, axis_bottom))
    for tick in x_ticks:
        x = px(tick)
        parts.append(_line(x, axis_bottom, x, axis_bottom + 4))
        parts.append(
            f'<text x="{_fmt(x)}" y="{axis_bottom + 18}" text-anchor="middle" '
            f'font-size="11">{_fmt(tick)}</text>'
        )
    for tick in y_ticks:
        y = py(tick)
        parts.append(_line(_MARGIN_LEFT - 4, y, _MARGIN_LEFT, y))
        parts.append(
            f'<text x="{_MARGIN_LEFT - 8}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-size="11">{_fmt(tick)}</text>'
        )
    parts.extend(_axis_labels(spec, plot_w, plot_h))
    return parts


def _axis_labels(spec: ChartSpec, plot_w: float, plot_h: float) -> list[str]:
    x_center = _MARGIN_LEFT + plot_w / 2
    y_center = _MARGIN_TOP + plot_h / 2
    return [
        f'<text x="{_fmt(x_center)}" y="{spec.height - 12}" text-anchor="middle" '
        f'font-size="12">{_escape(spec.x_label)}</text>',
        f'<text x="16" y="{_fmt(y_center)}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {_fmt(y_center)})">{_escape(spec.y_label)}</text>',
    ]


def _legend(series: tuple[Series, ...], spec: ChartSpec) -> list[str]:
    parts = []
    x = _MARGIN_LEFT + 10
    y = _MARGIN_TOP + 8
    for i, s in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        row_y = y + i * 16
        parts.append(
            f'<rect x="{x}" y="{row_y}" width="12" height="4" fill="{color}"/>'
        )
        parts.append(
            f'<text x="{x + 18}" y="{row_y + 6}" font-size="11">{_escape(s.label)}</text>'
        )
    return parts


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
