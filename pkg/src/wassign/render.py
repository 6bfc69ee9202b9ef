"""SVG drawings of instances, weighted circles and solutions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape

from .wcenter import Instance, SolveResult

SIZE = 600.0
MARGIN = 30.0


@dataclass(frozen=True)
class WorldTransform:
    """Maps world coordinates to SVG pixels, flipping y so it points up."""

    x0: float
    y0: float
    scale: float
    height: float

    @classmethod
    def fit(cls, xs, ys, size: float = SIZE, margin: float = MARGIN) -> "WorldTransform":
        lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
        span = max(hi_x - lo_x, hi_y - lo_y) or 1.0
        return cls(lo_x, lo_y, (size - 2 * margin) / span, size)

    def __call__(self, p) -> tuple[float, float]:
        return (MARGIN + (p[0] - self.x0) * self.scale,
                self.height - MARGIN - (p[1] - self.y0) * self.scale)

    def length(self, d: float) -> float:
        return d * self.scale


def _f(v: float) -> str:
    return f"{v:.3f}"


def render_svg(inst: Instance, r: Optional[float] = None,
               solution: Optional[SolveResult] = None) -> str:
    """An SVG document; output depends only on the arguments.

    With ``r`` the circles C(p, w*r) are drawn for every point and
    every distinct weight; with ``solution`` its center, covering circle
    and determinators are highlighted.
    """
    xs = [p.x for p in inst.points]
    ys = [p.y for p in inst.points]
    reach = []
    if r is not None:
        reach.append(r * max(inst.w1))
    if solution is not None:
        xs.append(solution.center.x)
        ys.append(solution.center.y)
        reach.append(solution.radius * max(solution.assignment))
    ext = max(reach, default=0.0)
    tf = WorldTransform.fit([x - ext for x in xs] + [x + ext for x in xs],
                            [y - ext for y in ys] + [y + ext for y in ys])
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(SIZE)}" height="{int(SIZE)}" '
           f'viewBox="0 0 {int(SIZE)} {int(SIZE)}">',
           f'<rect x="0" y="0" width="{int(SIZE)}" height="{int(SIZE)}" fill="white"/>']
    if r is not None:
        out.append('<g id="circles" fill="none" stroke="#7a9cc6" stroke-width="0.7">')
        for p in inst.points:
            cx, cy = tf(p)
            for w in inst.distinct_weights:
                out.append(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(tf.length(w * r))}"/>')
        out.append("</g>")
    if solution is not None:
        cx, cy = tf(solution.center)
        out.append('<g id="solution">')
        for i in solution.determinators:
            px, py = tf(inst.points[i])
            rr = tf.length(solution.radius * solution.assignment[i])
            out.append(f'<circle cx="{_f(px)}" cy="{_f(py)}" r="{_f(rr)}" fill="none" '
                       'stroke="#d0743c" stroke-dasharray="4 3"/>')
            out.append(f'<line x1="{_f(cx)}" y1="{_f(cy)}" x2="{_f(px)}" y2="{_f(py)}" stroke="#d0743c"/>')
        out.append(f'<circle id="center" cx="{_f(cx)}" cy="{_f(cy)}" r="4" fill="#c0392b"/>')
        out.append("</g>")
    det = set(solution.determinators) if solution is not None else set()
    out.append('<g id="points">')
    for i, p in enumerate(inst.points):
        px, py = tf(p)
        fill = "#c0392b" if i in det else "black"
        label = escape(f"p{i}")
        if solution is not None:
            label += escape(f" w={solution.assignment[i]:.4g}")
        out.append(f'<circle cx="{_f(px)}" cy="{_f(py)}" r="3" fill="{fill}"><title>{label}</title></circle>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
