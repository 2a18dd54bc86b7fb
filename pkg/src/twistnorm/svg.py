"""Static SVG pictures of rank-two norm balls."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from .norms import NormBall2


def _clip(poly: List[Tuple[Fraction, Fraction]], a, b, c):
    """Sutherland-Hodgman clip of a convex polygon to a*x + b*y <= c."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp = a * p[0] + b * p[1] - c
        fq = a * q[0] + b * q[1] - c
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def ball_polygon(ball: NormBall2, radius) -> List[Tuple[Fraction, Fraction]]:
    """The ball intersected with the square [-radius, radius]^2."""
    r = Fraction(radius)
    poly = [(-r, -r), (r, -r), (r, r), (-r, r)]
    for a, b, c in ball.halfplanes:
        poly = _clip(poly, a, b, c)
        if not poly:
            break
    return poly


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_ball_svg(ball: NormBall2, title: str = "", size: int = 400,
                    extra: Sequence[NormBall2] = ()) -> str:
    """SVG text showing the ball, the axes and labelled vertices.

    Noncompact balls are clipped to the viewport.  ``extra`` balls are drawn
    as dashed outlines for comparison.
    """
    coords = [abs(x) for v in ball.vertices for x in v]
    for e in extra:
        coords += [abs(x) for v in e.vertices for x in v]
    radius = max(coords + [Fraction(1, 2)]) * Fraction(3, 2)
    scale = (size / 2 - 20) / float(radius)
    cx = cy = size / 2

    def pt(p):
        return cx + float(p[0]) * scale, cy - float(p[1]) * scale

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<rect width="{size}" height="{size}" fill="white"/>']
    if title:
        lines.append(f'<text x="8" y="16" font-size="12" font-family="sans-serif">{title}</text>')
    lines.append(f'<line x1="10" y1="{cy}" x2="{size - 10}" y2="{cy}" stroke="#888"/>')
    lines.append(f'<line x1="{cx}" y1="10" x2="{cx}" y2="{size - 10}" stroke="#888"/>')
    poly = ball_polygon(ball, radius)
    if poly:
        pts = " ".join("%.2f,%.2f" % pt(p) for p in poly)
        lines.append(f'<polygon points="{pts}" fill="#9ecae1" fill-opacity="0.6" stroke="#08519c"/>')
    for e in extra:
        ep = ball_polygon(e, radius)
        if ep:
            pts = " ".join("%.2f,%.2f" % pt(p) for p in ep)
            lines.append(f'<polygon points="{pts}" fill="none" stroke="#d62728" stroke-dasharray="4 3"/>')
    for v in ball.vertices:
        x, y = pt(v)
        lines.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#08519c"/>')
        lines.append(f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" font-size="11" font-family="sans-serif">'
                     f'({_fmt(v[0])}, {_fmt(v[1])})</text>')
    if not ball.compact:
        lines.append(f'<text x="8" y="{size - 8}" font-size="11" font-family="sans-serif">'
                     f'noncompact (clipped)</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
