"""Projections and figure emission.

Two projective views of 3-dimensional tropical data: the exponential
(barycentric) view maps a vector to the barycenter of a fixed triangle
with weights exp(beta * x_i), handling -inf coordinates as weight zero;
the orthogonal view drops a finite vector along the main diagonal.  Both
send proportional vectors to the same planar point, so they draw the
projective space faithfully.

Floating point lives only here, at the presentation boundary; nothing
computed in this module feeds back into the exact integer kernel.  The
SVG emitter is deterministic: fixed ordering, six decimal places.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .tropical import POS_INF, Scalar, ShapeError, is_finite

TRIANGLE = ((0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2.0))
_SQRT2 = math.sqrt(2.0)
_SQRT6 = math.sqrt(6.0)


@dataclass(frozen=True)
class RenderSpec:
    """Figure parameters: projection mode, canvas size, styling."""

    mode: str = "exponential"   # or "orthogonal"
    beta: float = 1.0
    width: int = 480
    height: int = 440
    point_radius: float = 3.0
    segment_samples: int = 200

    def __post_init__(self):
        if self.mode not in ("exponential", "orthogonal"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.beta <= 0:
            raise ValueError("beta must be positive")


def project_exponential(x: Sequence[Scalar], beta: float = 1.0) -> tuple:
    """Barycenter of the reference triangle with weights exp(beta x_i).

    -inf contributes weight zero; an all-epsilon vector has no image.
    Weights are normalized by the largest finite coordinate first, which
    both avoids overflow and makes proportional vectors collide exactly.
    """
    if len(x) != 3:
        raise ShapeError("exponential projection takes 3-dimensional points")
    if beta <= 0:
        raise ValueError("beta must be positive")
    if any(e is POS_INF for e in x):
        raise ValueError("exponential projection needs coordinates below +inf")
    finite = [float(e) for e in x if is_finite(e)]
    if not finite:
        raise ValueError("the all-epsilon vector has no projective image")
    top = max(finite)
    weights = [math.exp(beta * (float(e) - top)) if is_finite(e) else 0.0
               for e in x]
    total = sum(weights)
    px = sum(w * v[0] for w, v in zip(weights, TRIANGLE)) / total
    py = sum(w * v[1] for w, v in zip(weights, TRIANGLE)) / total
    return (px, py)


def project_orthogonal(x: Sequence[Scalar]) -> tuple:
    """Finite 3-vector minus its mean, in a fixed orthonormal basis of the
    plane orthogonal to the diagonal."""
    if len(x) != 3:
        raise ShapeError("orthogonal projection takes 3-dimensional points")
    if not all(is_finite(e) for e in x):
        raise ValueError("orthogonal projection needs finite coordinates")
    a, b, c = (float(e) for e in x)
    m = (a + b + c) / 3.0
    d = (a - m, b - m, c - m)
    return ((d[0] - d[1]) / _SQRT2, (d[0] + d[1] - 2.0 * d[2]) / _SQRT6)


def _project(x, spec: RenderSpec):
    if spec.mode == "exponential":
        return project_exponential(x, spec.beta)
    return project_orthogonal(x)


def _float_max_comb(g, lam, h):
    out = []
    for a, b in zip(g, h):
        fa = float(a) if is_finite(a) else -math.inf
        fb = (float(b) + lam) if is_finite(b) else -math.inf
        out.append(max(fa, fb))
    return out


def _segment_path(g, h, spec: RenderSpec):
    """Sampled image of the two-generator span between g and h.

    The combination g (+) lambda h only bends while lambda sits between
    the extreme finite coordinate differences; outside, one argument
    dominates, so the endpoints pin the path.
    """
    pts = [_project_floats(g, spec)]
    diffs = [float(a) - float(b) for a, b in zip(g, h)
             if is_finite(a) and is_finite(b)]
    if diffs:
        lo, hi = min(diffs), max(diffs)
        for i in range(spec.segment_samples + 1):
            lam = lo + (hi - lo) * i / spec.segment_samples
            pts.append(_project_float_vec(_float_max_comb(g, lam, h), spec))
    pts.append(_project_floats(h, spec))
    return pts


def _project_floats(x, spec):
    return _project(x, spec)


def _project_float_vec(v, spec):
    if spec.mode == "orthogonal":
        m = sum(v) / 3.0
        d = [e - m for e in v]
        return ((d[0] - d[1]) / _SQRT2, (d[0] + d[1] - 2.0 * d[2]) / _SQRT6)
    finite = [e for e in v if e > -math.inf]
    top = max(finite)
    weights = [math.exp(spec.beta * (e - top)) if e > -math.inf else 0.0
               for e in v]
    total = sum(weights)
    px = sum(w * t[0] for w, t in zip(weights, TRIANGLE)) / total
    py = sum(w * t[1] for w, t in zip(weights, TRIANGLE)) / total
    return (px, py)


def _fmt(v: float) -> str:
    out = f"{v:.6f}"
    return "0.000000" if out == "-0.000000" else out


def render(points: Sequence, segments: Sequence, spec: RenderSpec) -> str:
    """Deterministic SVG for the given tropical points and segment pairs.

    ``segments`` holds index pairs into ``points``; each pair is drawn as
    the sampled two-generator span (a broken segment under projection).
    Identical inputs yield byte-identical output.
    """
    skipped = set()
    if spec.mode == "orthogonal":
        skipped = {i for i, p in enumerate(points)
                   if not all(is_finite(e) for e in p)}
    planar = {i: _project(p, spec)
              for i, p in enumerate(points) if i not in skipped}
    segments = [(i, j) for i, j in segments
                if i not in skipped and j not in skipped]
    frame_pts = list(planar.values())
    if spec.mode == "exponential":
        frame_pts.extend(TRIANGLE)
    if not frame_pts:
        frame_pts = [(-1.0, -1.0), (1.0, 1.0)]
    xs = [p[0] for p in frame_pts]
    ys = [p[1] for p in frame_pts]
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    span_x = (hi_x - lo_x) or 1.0
    span_y = (hi_y - lo_y) or 1.0
    margin = 24.0
    sx = (spec.width - 2 * margin) / span_x
    sy = (spec.height - 2 * margin) / span_y
    scale = min(sx, sy)

    def to_canvas(p):
        return (margin + (p[0] - lo_x) * scale,
                spec.height - margin - (p[1] - lo_y) * scale)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">',
        f'<rect width="{spec.width}" height="{spec.height}" fill="white"/>',
    ]
    if skipped:
        lines.append(f"<!-- skipped {len(skipped)} point(s) with "
                     "non-finite coordinates -->")
    if spec.mode == "exponential":
        tri = " ".join(f"{_fmt(cx)},{_fmt(cy)}"
                       for cx, cy in (to_canvas(v) for v in TRIANGLE))
        lines.append(f'<polygon points="{tri}" fill="none" stroke="black" '
                     'stroke-width="1"/>')
    else:
        ox, oy = to_canvas((0.0, 0.0))
        if lo_y <= 0.0 <= hi_y:
            lines.append(f'<line x1="{_fmt(margin)}" y1="{_fmt(oy)}" '
                         f'x2="{_fmt(spec.width - margin)}" y2="{_fmt(oy)}" '
                         'stroke="#cccccc" stroke-width="1"/>')
        if lo_x <= 0.0 <= hi_x:
            lines.append(f'<line x1="{_fmt(ox)}" y1="{_fmt(margin)}" '
                         f'x2="{_fmt(ox)}" y2="{_fmt(spec.height - margin)}" '
                         'stroke="#cccccc" stroke-width="1"/>')
    for i, j in segments:
        path = _segment_path(points[i], points[j], spec)
        coords = " ".join(f"{_fmt(cx)},{_fmt(cy)}"
                          for cx, cy in (to_canvas(p) for p in path))
        lines.append(f'<polyline points="{coords}" fill="none" '
                     'stroke="#555555" stroke-width="1"/>')
    for _, p in sorted(planar.items()):
        cx, cy = to_canvas(p)
        lines.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" '
                     f'r="{_fmt(spec.point_radius)}" fill="black"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def save_scatter_figure(path: str, xy, bold=(), xlabel: str = "",
                        ylabel: str = "", title: str = ""):
    """Matplotlib scatter written to ``path`` (report figures alongside
    delimited output)."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4.5))
    if xy:
        ax.scatter([p[0] for p in xy], [p[1] for p in xy],
                   s=12, color="#888888", label="points")
    if bold:
        ax.scatter([p[0] for p in bold], [p[1] for p in bold],
                   s=36, color="black", label="extremal")
        ax.legend(loc="best")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
