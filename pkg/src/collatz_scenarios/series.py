"""ON (odd values only) and AN (all values) series, emitted as CSV or SVG."""

from __future__ import annotations

import csv
import io
import math
import os
from typing import IO, Iterable, NamedTuple, Sequence

from .engine import Trajectory


class SeriesPoint(NamedTuple):
    step: int
    value: int


Series = Sequence[SeriesPoint]


def _require_full(t: Trajectory):
    if t.truncated:
        raise ValueError("trajectory was truncated; raise the value cap to build a series")


def on_series(t: Trajectory) -> list[SeriesPoint]:
    """Odd values in order, re-indexed from 0."""
    _require_full(t)
    return [SeriesPoint(i, v) for i, v in enumerate(v for v in t.values if v % 2)]


def an_series(t: Trajectory) -> list[SeriesPoint]:
    _require_full(t)
    return [SeriesPoint(i, v) for i, v in enumerate(t.values)]


def write_csv(series: Series, stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["step", "value"])
    for pt in series:
        writer.writerow([pt.step, str(pt.value)])


def read_csv(stream: IO[str]) -> list[SeriesPoint]:
    return [SeriesPoint(int(r["step"]), int(r["value"])) for r in csv.DictReader(stream)]


# Dash patterns keep overlays distinguishable without colour.
DASHES = ("", "8,4", "2,3", "10,3,2,3", "1,6")


def render_svg(
    series_list: Sequence[Series],
    width: int = 720,
    height: int = 440,
    margin: int = 60,
    log_scale: bool = True,
    title: str = "",
    labels: Sequence[str] | None = None,
) -> str:
    """One polyline per series; x is the step, y is log10(value) unless ``log_scale`` is off.

    Output depends only on the arguments, so it is safe to compare byte-wise.
    """
    if not series_list or any(len(s) == 0 for s in series_list):
        raise ValueError("cannot plot an empty series")

    def ycoord(v: int) -> float:
        return math.log10(v) if log_scale else float(v)

    xs = [pt.step for s in series_list for pt in s]
    ys = [ycoord(pt.value) for s in series_list for pt in s]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y0, y1 = y0 - 0.5, y0 + 0.5
    plot_w = width - 2 * margin
    plot_h = height - 2 * margin

    def px(x):
        return margin + (x - x0) * plot_w / (x1 - x0)

    def py(y):
        return height - margin - (y - y0) * plot_h / (y1 - y0)

    ylabel = "log10(value)" if log_scale else "value"
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:.2f}" y="{margin / 2:.2f}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="14">{_escape(title)}</text>')
    left, right = margin, width - margin
    top, bottom = margin, height - margin
    out.append(f'<g stroke="black" stroke-width="1">'
               f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}"/>'
               f'<line x1="{left}" y1="{bottom}" x2="{left}" y2="{top}"/></g>')
    out.append('<g font-family="sans-serif" font-size="11">')
    out.append(f'<text x="{left}" y="{bottom + 16}" text-anchor="middle">{_num(x0)}</text>')
    out.append(f'<text x="{right}" y="{bottom + 16}" text-anchor="middle">{_num(x1)}</text>')
    out.append(f'<text x="{left - 6}" y="{bottom}" text-anchor="end">{_num(y0)}</text>')
    out.append(f'<text x="{left - 6}" y="{top + 4}" text-anchor="end">{_num(y1)}</text>')
    out.append(f'<text x="{(left + right) / 2:.2f}" y="{height - margin / 4:.2f}" '
               f'text-anchor="middle">step</text>')
    out.append(f'<text x="{margin / 4:.2f}" y="{(top + bottom) / 2:.2f}" text-anchor="middle" '
               f'transform="rotate(-90 {margin / 4:.2f} {(top + bottom) / 2:.2f})">{ylabel}</text>')
    out.append("</g>")
    for i, s in enumerate(series_list):
        dash = DASHES[i % len(DASHES)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        pts = " ".join(f"{px(pt.step):.2f},{py(ycoord(pt.value)):.2f}" for pt in s)
        label = labels[i] if labels and i < len(labels) else f"series {i + 1}"
        out.append(f'<polyline fill="none" stroke="black" stroke-width="1.2"{dash_attr} '
                   f'points="{pts}"><title>{_escape(label)}</title></polyline>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _num(x) -> str:
    if isinstance(x, int) or float(x).is_integer():
        return str(int(x))
    return f"{x:.2f}"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def emit(
    series: Series | Sequence[Series],
    fmt: str,
    sink: str | os.PathLike | IO[str],
    **svg_options,
) -> None:
    """Write one series as CSV, or one or more series as SVG, to a path or text stream.

    CSV takes a single series; SVG also takes a list of series drawn as overlays.
    """
    fmt = fmt.lower()
    if fmt not in ("csv", "svg"):
        raise ValueError(f"unknown format {fmt!r}; expected 'csv' or 'svg'")
    nested = bool(series) and not isinstance(series[0], SeriesPoint)
    if not series or (nested and any(len(s) == 0 for s in series)):
        raise ValueError("cannot emit an empty series")
    buf = io.StringIO()
    if fmt == "csv":
        if nested:
            raise ValueError("CSV output takes a single series")
        write_csv(series, buf)
    else:
        buf.write(render_svg(list(series) if nested else [series], **svg_options))
    text = buf.getvalue()
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def overlay(trajectories: Iterable[Trajectory], mode: str = "on") -> list[list[SeriesPoint]]:
    """ON or AN series for several trajectories, ready for ``render_svg``."""
    fn = {"on": on_series, "an": an_series}[mode.lower()]
    return [fn(t) for t in trajectories]
