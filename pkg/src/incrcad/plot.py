"""SVG and CSV renderings of planar states.

Floating point appears only here: curves are drawn from dense numeric
samples and bounds are printed as decimal approximations.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction

import numpy as np

from .engine import CadState
from .errors import InvalidInput
from .lifting import OPEN, SECTION
from .poly import Polynomial, format_rational
from .realroot import IsolatedRoot, refine

__all__ = ["CURVE_POINTS", "root_approx", "curve_points", "render_svg", "render_csv"]

CURVE_POINTS = 1000

SIZE = 600
MARGIN = 30


def _require_planar(state: CadState):
    if len(state.order) != 2:
        raise InvalidInput(f"plotting needs a 2-variable state, got {len(state.order)}")


def root_approx(r: IsolatedRoot | None) -> float:
    """Decimal value good to well beyond 6 places; infinities for open ends."""
    if r is None:
        return float("nan")
    if r.is_rational:
        return float(r.lo)
    r = refine(r, Fraction(1, 10 ** 12))
    return float((r.lo + r.hi) / 2)


def _coeffs_in(p: Polynomial, var: int, other: float) -> np.ndarray:
    """Float coefficients of ``p`` in variable ``var`` at ``x_other = other``, highest first."""
    d = p.degree(var)
    out = np.zeros(d + 1)
    for e, c in p.terms.items():
        out[d - e[var]] += float(c) * other ** e[1 - var]
    return out


def curve_points(p: Polynomial, window) -> list[tuple[float, float]]:
    """Points of ``p = 0`` inside ``window``, sampled along both axes."""
    xmin, xmax, ymin, ymax = window
    pts = []
    for var, (a, b), (lo, hi) in ((1, (xmin, xmax), (ymin, ymax)), (0, (ymin, ymax), (xmin, xmax))):
        if p.degree(var) < 1:
            continue
        for t in np.linspace(a, b, CURVE_POINTS):
            c = np.trim_zeros(_coeffs_in(p, var, t), "f")
            if len(c) < 2:
                continue
            for z in np.roots(c):
                if abs(z.imag) < 1e-9 and lo <= z.real <= hi:
                    pts.append((t, z.real) if var == 1 else (z.real, t))
    return pts


class _Frame:
    def __init__(self, window):
        self.xmin, self.xmax, self.ymin, self.ymax = window
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise InvalidInput("window must satisfy xmin < xmax and ymin < ymax")
        self.w = SIZE - 2 * MARGIN

    def x(self, v):
        return MARGIN + (v - self.xmin) / (self.xmax - self.xmin) * self.w

    def y(self, v):
        return MARGIN + (self.ymax - v) / (self.ymax - self.ymin) * self.w


def _clip(v, lo, hi):
    return min(max(v, lo), hi)


def render_svg(state: CadState, window=(-2, 2, -2, 2)) -> str:
    """Curves, dashed base roots, per-stack boundary marks and numbered open cells."""
    _require_planar(state)
    fr = _Frame(window)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{fr.w}" height="{fr.w}" fill="white" stroke="black"/>',
    ]
    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    for i, (pid, p) in enumerate(state.inputs):
        color = palette[i % len(palette)]
        out.append(f'<g class="curve" id="{pid}" fill="{color}">')
        for x, y in curve_points(p, window):
            out.append(f'<circle cx="{fr.x(x):.2f}" cy="{fr.y(y):.2f}" r="0.9"/>')
        out.append("</g>")

    base = state.tree.levels[0]
    out.append('<g class="base-roots" stroke="gray" stroke-dasharray="4,3">')
    for c in base:
        if c.kind == SECTION:
            v = root_approx(c.lower)
            if fr.xmin <= v <= fr.xmax:
                out.append(f'<line x1="{fr.x(v):.2f}" y1="{MARGIN}" x2="{fr.x(v):.2f}" '
                           f'y2="{MARGIN + fr.w}" data-x="{v:.6f}"/>')
    out.append("</g>")

    stacks = state.tree.stacks(2)
    marks, labels = [], []
    for c in base:
        if c.kind != OPEN:
            continue
        lo = fr.xmin if c.lower is None else max(root_approx(c.lower), fr.xmin)
        hi = fr.xmax if c.upper is None else min(root_approx(c.upper), fr.xmax)
        sx = float(c.sample[0])
        if not (fr.xmin <= sx <= fr.xmax):
            continue
        half = (hi - lo) * 0.2
        for ch in stacks.get(c.index, []):
            if ch.upper is not None:
                y = root_approx(ch.upper)
                if fr.ymin <= y <= fr.ymax:
                    marks.append(f'<line x1="{fr.x(sx - half):.2f}" y1="{fr.y(y):.2f}" '
                                 f'x2="{fr.x(sx + half):.2f}" y2="{fr.y(y):.2f}"/>')
            ylo = fr.ymin if ch.lower is None else root_approx(ch.lower)
            yhi = fr.ymax if ch.upper is None else root_approx(ch.upper)
            ymid = _clip((max(ylo, fr.ymin) + min(yhi, fr.ymax)) / 2, fr.ymin, fr.ymax)
            if ylo < fr.ymax and yhi > fr.ymin:
                label = ",".join(map(str, ch.index))
                labels.append(f'<text x="{fr.x(sx):.2f}" y="{fr.y(ymid):.2f}">{label}</text>')
    out.append('<g class="stack-marks" stroke="black" stroke-dasharray="2,2">')
    out.extend(marks)
    out.append("</g>")
    out.append('<g class="cell-labels" font-family="sans-serif" font-size="9" text-anchor="middle">')
    out.extend(labels)
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _fmt_bound(r: IsolatedRoot | None, side: int) -> str:
    if r is None:
        return "-inf" if side < 0 else "inf"
    return f"{root_approx(r):.6f}"


def render_csv(state: CadState) -> str:
    """One row per cell: index path, bound approximations in its own coordinate, exact sample."""
    _require_planar(state)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "lower", "upper", "sample"])
    for lev in state.tree.levels:
        for c in lev:
            w.writerow([
                ".".join(map(str, c.index)),
                _fmt_bound(c.lower, -1),
                _fmt_bound(c.upper, 1),
                " ".join(format_rational(x) for x in c.sample),
            ])
    return buf.getvalue()
