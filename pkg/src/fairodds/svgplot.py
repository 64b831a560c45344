"""Deterministic SVG rendering of the FPR-TPR unit square.

Output is plain SVG 1.1 text assembled from fixed-format numbers, so the
same spec always produces byte-identical bytes; there are no timestamps,
random ids, or locale-dependent formatting. Geometry outside the unit
square is clipped analytically before anything is emitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple
from xml.sax.saxutils import escape

from .compatibility import PerformanceLine, performance_line
from .errors import DomainError
from .rational import fraction_str, unit_fraction
from .roc import RocCurve

SIZE = 640
PLOT_MIN = 70.0
PLOT_MAX = 600.0
_SPAN = PLOT_MAX - PLOT_MIN

_LINE_COLORS = ("#1f6fb4", "#c23b22", "#2c8a4b", "#7b52ab", "#b8860b")
_CURVE_COLORS = ("#e07b39", "#4b7b8a", "#8a4b6e")


@dataclass(frozen=True)
class Marker:
    fpr: Fraction
    tpr: Fraction
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "fpr", unit_fraction(self.fpr, "fpr"))
        object.__setattr__(self, "tpr", unit_fraction(self.tpr, "tpr"))


@dataclass(frozen=True)
class PlotSpec:
    lines: Tuple[PerformanceLine, ...] = ()
    curves: Tuple[RocCurve, ...] = ()
    points: Tuple[Marker, ...] = ()
    chance_line: bool = True
    annotations: Tuple[str, ...] = ()
    title: str = ""


def plot_spec_from_payload(data: Dict[str, Any]) -> PlotSpec:
    """Build a PlotSpec from its JSON form (all numbers exact-string friendly)."""
    if not isinstance(data, dict):
        raise DomainError("plot spec must be a JSON object")
    lines = []
    for entry in data.get("lines", ()):
        if not isinstance(entry, dict):
            raise DomainError(f"line entry must be an object, got {entry!r}")
        p = entry.get("p", entry.get("base_rate"))
        q = entry.get("q_star", entry.get("target_posterior"))
        if p is None or q is None:
            raise DomainError(f"line entry needs p and q_star, got {entry!r}")
        lines.append(performance_line(p, q))
    curves = []
    for entry in data.get("curves", ()):
        vertices = entry.get("vertices") if isinstance(entry, dict) else entry
        if vertices is None:
            raise DomainError(f"curve entry needs vertices, got {entry!r}")
        curves.append(RocCurve.from_points(vertices))
    points = []
    for entry in data.get("points", ()):
        if not isinstance(entry, dict) or "fpr" not in entry or "tpr" not in entry:
            raise DomainError(f"point entry needs fpr and tpr, got {entry!r}")
        label = str(entry.get("label", ""))
        if not label and "group" in entry:
            label = f"S={entry['group']}"
        points.append(Marker(fpr=entry["fpr"], tpr=entry["tpr"], label=label))
    return PlotSpec(
        lines=tuple(lines),
        curves=tuple(curves),
        points=tuple(points),
        chance_line=bool(data.get("chance_line", True)),
        annotations=tuple(str(a) for a in data.get("annotations", ())),
        title=str(data.get("title", "")),
    )


def _x(f: Fraction) -> str:
    return f"{PLOT_MIN + _SPAN * float(f):.2f}"


def _y(t: Fraction) -> str:
    return f"{PLOT_MAX - _SPAN * float(t):.2f}"


def _num_label(x: Fraction) -> str:
    # short decimal for axis/point labels, exact fraction where it is short
    if x.denominator == 1:
        return str(x.numerator)
    if x.denominator <= 16:
        return fraction_str(x)
    return f"{float(x):.4g}"


def clip_line_to_unit_square(
    line: PerformanceLine,
) -> Optional[Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]]:
    """The segment of an operating-point line inside [0,1]^2, or None."""
    p, q = line.base_rate, line.target_posterior
    one = Fraction(1)
    zero = Fraction(0)
    if p == 0:
        # vertical: FPR = q
        return ((q, zero), (q, one)) if 0 <= q <= 1 else None
    if p == 1:
        # horizontal: TPR = q
        return ((zero, q), (one, q)) if 0 <= q <= 1 else None
    candidates = [
        (zero, q / p),
        (one, (q - (1 - p)) / p),
        (q / (1 - p), zero),
        ((q - p) / (1 - p), one),
    ]
    inside = []
    for pt in candidates:
        if 0 <= pt[0] <= 1 and 0 <= pt[1] <= 1 and pt not in inside:
            inside.append(pt)
    if len(inside) < 2:
        return None
    inside.sort()
    return inside[0], inside[-1]


def _grid(parts: List[str]) -> None:
    for i in range(11):
        frac = Fraction(i, 10)
        x = _x(frac)
        y = _y(frac)
        parts.append(
            f'<line x1="{x}" y1="{_y(Fraction(0))}" x2="{x}" y2="{_y(Fraction(1))}" stroke="#e4e4e4" stroke-width="1"/>'
        )
        parts.append(
            f'<line x1="{_x(Fraction(0))}" y1="{y}" x2="{_x(Fraction(1))}" y2="{y}" stroke="#e4e4e4" stroke-width="1"/>'
        )
    for i in range(0, 11, 2):
        frac = Fraction(i, 10)
        parts.append(
            f'<text x="{_x(frac)}" y="{PLOT_MAX + 22:.2f}" font-size="12" text-anchor="middle" fill="#333">{float(frac):g}</text>'
        )
        parts.append(
            f'<text x="{PLOT_MIN - 10:.2f}" y="{float(_y(frac)) + 4:.2f}" font-size="12" text-anchor="end" fill="#333">{float(frac):g}</text>'
        )


def render_plane(spec: PlotSpec) -> str:
    """Render a plot spec to an SVG document string (byte-stable)."""
    parts: List[str] = []
    parts.append('<?xml version="1.0" encoding="UTF-8"?>')
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">'
    )
    parts.append(f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>')
    if spec.title:
        parts.append(
            f'<text x="{SIZE / 2:.2f}" y="26" font-size="16" text-anchor="middle" fill="#111">{escape(spec.title)}</text>'
        )
    _grid(parts)
    # unit square border
    parts.append(
        f'<rect x="{PLOT_MIN:.2f}" y="{PLOT_MAX - _SPAN:.2f}" width="{_SPAN:.2f}" height="{_SPAN:.2f}" '
        'fill="none" stroke="#333333" stroke-width="1.5"/>'
    )
    # axis labels (fixed: FPR horizontal, TPR vertical)
    parts.append(
        f'<text x="{(PLOT_MIN + PLOT_MAX) / 2:.2f}" y="{PLOT_MAX + 38:.2f}" font-size="14" text-anchor="middle" fill="#111">FPR</text>'
    )
    parts.append(
        f'<text x="22" y="{(PLOT_MIN + PLOT_MAX) / 2:.2f}" font-size="14" text-anchor="middle" fill="#111" '
        f'transform="rotate(-90 22 {(PLOT_MIN + PLOT_MAX) / 2:.2f})">TPR</text>'
    )
    if spec.chance_line:
        parts.append(
            f'<line x1="{_x(Fraction(0))}" y1="{_y(Fraction(0))}" x2="{_x(Fraction(1))}" y2="{_y(Fraction(1))}" '
            'stroke="#888888" stroke-width="1.5" stroke-dasharray="7,5"/>'
        )
    for i, line in enumerate(spec.lines):
        seg = clip_line_to_unit_square(line)
        if seg is None:
            continue
        color = _LINE_COLORS[i % len(_LINE_COLORS)]
        (f0, t0), (f1, t1) = seg
        parts.append(
            f'<line x1="{_x(f0)}" y1="{_y(t0)}" x2="{_x(f1)}" y2="{_y(t1)}" stroke="{color}" stroke-width="2"/>'
        )
        label = f"p={_num_label(line.base_rate)}, q*={_num_label(line.target_posterior)}"
        # anchor the label at the higher-TPR end of the visible segment
        lf, lt = (f0, t0) if t0 >= t1 else (f1, t1)
        parts.append(
            f'<text x="{float(_x(lf)) + 6:.2f}" y="{float(_y(lt)) - 6:.2f}" font-size="12" fill="{color}">{escape(label)}</text>'
        )
    for i, curve in enumerate(spec.curves):
        color = _CURVE_COLORS[i % len(_CURVE_COLORS)]
        coords = " ".join(f"{_x(f)},{_y(t)}" for f, t in curve.vertices)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2.5"/>'
        )
    for marker in spec.points:
        cx, cy = _x(marker.fpr), _y(marker.tpr)
        parts.append(f'<circle cx="{cx}" cy="{cy}" r="5" fill="#111111"/>')
        label = marker.label or f"({_num_label(marker.fpr)}, {_num_label(marker.tpr)})"
        parts.append(
            f'<text x="{float(cx) + 8:.2f}" y="{float(cy) - 8:.2f}" font-size="12" fill="#111">{escape(label)}</text>'
        )
    for i, note in enumerate(spec.annotations):
        parts.append(
            f'<text x="{PLOT_MIN + 8:.2f}" y="{PLOT_MIN + 16 + 16 * i:.2f}" font-size="12" fill="#444">{escape(note)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
