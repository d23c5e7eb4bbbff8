"""Deterministic SVG drawing of the affine chart z = 1.

The viewport is the bounding box of all finite pairwise intersections, padded.
Each line is clipped to it exactly (rational arithmetic) and only then rounded,
so the output is byte-identical across runs. The line at infinity, when it is
part of the arrangement, becomes the frame; multiple points at infinity are
marked where their direction leaves the frame.
"""

from __future__ import annotations

from fractions import Fraction
from html import escape
from itertools import combinations
from typing import List, Optional, Tuple

from .geometry import Line, intersect
from .incidence import Arrangement, build_incidence

SIZE = 600
PAD = 40

Pt = Tuple[Fraction, Fraction]


def _box(arr: Arrangement):
    pts = []
    for a, b in combinations(arr.lines, 2):
        p = intersect(a, b)
        if not p.at_infinity:
            x, y, z = p.coords
            pts.append((Fraction(x, z), Fraction(y, z)))
    if not pts:
        pts = [(Fraction(-1), Fraction(-1)), (Fraction(1), Fraction(1))]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(2))
    cx = (max(xs) + min(xs)) / 2
    cy = (max(ys) + min(ys)) / 2
    half = span * Fraction(3, 5)
    return cx - half, cy - half, cx + half, cy + half


def _clip(line: Line, box) -> Optional[Tuple[Pt, Pt]]:
    """Segment of a x + b y + c = 0 inside the box, or None."""
    a, b, c = (Fraction(v) for v in line.coeffs)
    x0, y0, x1, y1 = box
    hits = []
    if b != 0:
        for x in (x0, x1):
            y = -(a * x + c) / b
            if y0 <= y <= y1:
                hits.append((x, y))
    if a != 0:
        for y in (y0, y1):
            x = -(b * y + c) / a
            if x0 <= x <= x1:
                hits.append((x, y))
    hits = sorted(set(hits))
    if len(hits) < 2:
        return None
    return hits[0], hits[-1]


def _frame_hit(direction: Tuple[int, int], box) -> Pt:
    """Where the ray from the box centre in ``direction`` meets the frame."""
    x0, y0, x1, y1 = box
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    dx, dy = Fraction(direction[0]), Fraction(direction[1])
    ts = []
    if dx:
        ts.append(((x1 if dx > 0 else x0) - cx) / dx)
    if dy:
        ts.append(((y1 if dy > 0 else y0) - cy) / dy)
    t = min(ts)
    return cx + t * dx, cy + t * dy


def render_svg(arr: Arrangement) -> str:
    inc = build_incidence(arr)
    box = _box(arr)
    x0, y0, x1, y1 = box
    scale = Fraction(SIZE - 2 * PAD) / (x1 - x0)

    def px(p: Pt) -> str:
        # flip y so the picture has the usual orientation
        sx = PAD + (p[0] - x0) * scale
        sy = PAD + (y1 - p[1]) * scale
        return f"{float(sx):.2f}", f"{float(sy):.2f}"

    out: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE + 30}" '
        f'viewBox="0 0 {SIZE} {SIZE + 30}">',
        f"<title>{escape(arr.name or 'arrangement')}</title>",
        "<style>.arr-line{stroke:#234;stroke-width:1.2;fill:none}"
        ".arr-infinity{stroke-dasharray:6 4}.m-point{fill:#c22}"
        "text{font:11px sans-serif;fill:#234}</style>",
    ]
    notes = []
    for h, line in enumerate(arr.lines):
        label = escape(arr.labels[h])
        if line.at_infinity:
            out.append(f'<rect class="arr-line arr-infinity" data-label="{label}" x="{PAD}" y="{PAD}" '
                       f'width="{SIZE - 2 * PAD}" height="{SIZE - 2 * PAD}"/>')
            notes.append(f"{label} is the line at infinity, drawn as the dashed frame")
            continue
        seg = _clip(line, box)
        if seg is None:
            notes.append(f"{label} misses the viewport")
            continue
        (ax, ay), (bx, by) = px(seg[0]), px(seg[1])
        out.append(f'<line class="arr-line" data-label="{label}" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}"/>')
        out.append(f'<text x="{bx}" y="{by}" dx="3" dy="-3">{label}</text>')
    for k, p in enumerate(inc.m_points):
        x, y, z = p.point.coords
        where = _frame_hit((x, y), box) if z == 0 else (Fraction(x, z), Fraction(y, z))
        cx, cy = px(where)
        names = escape(" ".join(arr.labels[h] for h in p.incident))
        out.append(f'<circle class="m-point" data-point="{escape(str(p.point))}" data-lines="{names}" '
                   f'cx="{cx}" cy="{cy}" r="4"/>')
    for i, note in enumerate(notes):
        out.append(f'<text class="legend" x="{PAD}" y="{SIZE + 5 + 12 * i}">{note}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
