"""Planar primitives for multiplicatively weighted points.

Everything works in double precision. Comparisons that decide a
combinatorial question (tangent or crossing, inside or outside) use the
relative tolerance ``REL_TOL`` scaled by the magnitudes involved.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .errors import CoincidentCirclesError, DegenerateError

REL_TOL = 1e-9


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class WeightedPoint:
    point: Point
    weight: float

    def __post_init__(self):
        object.__setattr__(self, "point", Point(float(self.point[0]), float(self.point[1])))
        if not self.weight > 0:
            raise ValueError(f"weight must be positive, got {self.weight}")


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", Point(float(self.center[0]), float(self.center[1])))
        if self.radius < 0:
            raise ValueError(f"radius must be nonnegative, got {self.radius}")


def dist(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def orient(a, b, c) -> float:
    """Twice the signed area of triangle abc (positive when counterclockwise)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def weighted_distance(p: WeightedPoint, q) -> float:
    return dist(p.point, q) / p.weight


def circle_intersections(a: Circle, b: Circle) -> list[Point]:
    """All common points of two circles, tangencies collapsed to one point.

    Raises CoincidentCirclesError when the circles are the same circle.
    """
    (ax, ay), ra = a.center, a.radius
    (bx, by), rb = b.center, b.radius
    d = math.hypot(bx - ax, by - ay)
    scale = max(ra, rb, d)
    tol = REL_TOL * scale
    if d <= tol and abs(ra - rb) <= tol:
        raise CoincidentCirclesError("coincident circles")
    if d <= tol:
        return []
    if d > ra + rb + tol or d < abs(ra - rb) - tol:
        return []
    ux, uy = (bx - ax) / d, (by - ay) / d
    if abs(d - (ra + rb)) <= tol:
        t = d * ra / (ra + rb)
        return [Point(ax + t * ux, ay + t * uy)]
    if abs(d - abs(ra - rb)) <= tol:
        s = ra if ra >= rb else -ra
        return [Point(ax + s * ux, ay + s * uy)]
    x = (d * d + ra * ra - rb * rb) / (2 * d)
    h = math.sqrt(max(ra * ra - x * x, 0.0))
    mx, my = ax + x * ux, ay + x * uy
    return [Point(mx - h * uy, my + h * ux), Point(mx + h * uy, my - h * ux)]


def weighted_center_of_pair(a: WeightedPoint, b: WeightedPoint) -> tuple[Point, float]:
    """Weighted center and covering radius of two weighted points.

    The center splits segment ab in the ratio of the weights, so both
    points end up at the same weighted distance from it.
    """
    d = dist(a.point, b.point)
    if d == 0.0:
        raise DegenerateError("degenerate pair")
    t = a.weight / (a.weight + b.weight)
    (ax, ay), (bx, by) = a.point, b.point
    return Point(ax + t * (bx - ax), ay + t * (by - ay)), d / (a.weight + b.weight)


def _bisector(a: WeightedPoint, b: WeightedPoint):
    # With a translated to the origin, {x : |x|/wa = |x-B|/wb} reads
    # A|x|^2 + 2 g.x + h = 0 after dividing through by wa^2.
    bx, by = b.point[0] - a.point[0], b.point[1] - a.point[1]
    ratio = b.weight / a.weight
    return ratio * ratio - 1.0, (bx, by), -(bx * bx + by * by)


def _line_circle(n, s, m, rho):
    """Points x with n.x = s on the circle |x - m| = rho."""
    nn = math.hypot(n[0], n[1])
    if nn == 0.0:
        return []
    ux, uy = n[0] / nn, n[1] / nn
    delta = (ux * m[0] + uy * m[1]) - s / nn
    fx, fy = m[0] - delta * ux, m[1] - delta * uy
    gap = rho - abs(delta)
    tol = REL_TOL * max(rho, abs(delta), 1e-300)
    if gap < -tol:
        return []
    if abs(gap) <= tol:
        return [(fx, fy)]
    h = math.sqrt(rho * rho - delta * delta)
    return [(fx - h * uy, fy + h * ux), (fx + h * uy, fy - h * ux)]


def _raw_equidistant(a, b, c):
    A1, g1, h1 = _bisector(a, b)
    A2, g2, h2 = _bisector(a, c)
    if A1 == 0.0 and A2 == 0.0:
        # two straight bisectors: 2 g.x = -h
        det = g1[0] * g2[1] - g1[1] * g2[0]
        scale = math.hypot(*g1) * math.hypot(*g2)
        if abs(det) <= 1e-14 * scale:
            return []
        rx, ry = -h1 / 2, -h2 / 2
        return [((rx * g2[1] - ry * g1[1]) / det, (g1[0] * ry - g2[0] * rx) / det)]
    if abs(A1) < abs(A2):
        A1, g1, h1, A2, g2, h2 = A2, g2, h2, A1, g1, h1
    # eliminate |x|^2: A2*E1 - A1*E2 is a line
    n = (2 * (A2 * g1[0] - A1 * g2[0]), 2 * (A2 * g1[1] - A1 * g2[1]))
    s = -(A2 * h1 - A1 * h2)
    m = (-g1[0] / A1, -g1[1] / A1)
    rho2 = (g1[0] ** 2 + g1[1] ** 2) / (A1 * A1) - h1 / A1
    return _line_circle(n, s, m, math.sqrt(max(rho2, 0.0)))


def _residual(x, pts):
    vals = [dist(p.point, x) / p.weight for p in pts]
    r = sum(vals) / 3
    return max(abs(v - r) for v in vals), r


def _polish(x, pts):
    """A few Newton steps on the two bisector equations, kept only if they help."""
    best, (res, _) = x, _residual(x, pts)
    for _ in range(3):
        grads, vals = [], []
        for p in pts:
            dx, dy = best[0] - p.point[0], best[1] - p.point[1]
            dd = math.hypot(dx, dy)
            if dd == 0.0:
                return best
            grads.append((dx / (dd * p.weight), dy / (dd * p.weight)))
            vals.append(dd / p.weight)
        f1, f2 = vals[0] - vals[1], vals[0] - vals[2]
        j11, j12 = grads[0][0] - grads[1][0], grads[0][1] - grads[1][1]
        j21, j22 = grads[0][0] - grads[2][0], grads[0][1] - grads[2][1]
        det = j11 * j22 - j12 * j21
        if det == 0.0:
            break
        cand = (best[0] - (f1 * j22 - f2 * j12) / det, best[1] - (j11 * f2 - j21 * f1) / det)
        cres, _ = _residual(cand, pts)
        if not cres < res:
            break
        best, res = cand, cres
    return best


@lru_cache(maxsize=1 << 16)
def equidistant_points_of_triple(a: WeightedPoint, b: WeightedPoint,
                                 c: WeightedPoint) -> tuple[tuple[Point, float], ...]:
    """Points at equal weighted distance from three weighted points.

    Intersects the bisector of (a, b) with the bisector of (a, c); a
    bisector is a line for equal weights and an Apollonius circle
    otherwise. Returns up to two ``(point, radius)`` pairs sorted by
    coordinates.
    """
    pts = (a, b, c)
    if a.point == b.point or a.point == c.point or b.point == c.point:
        raise DegenerateError("triple points must be pairwise distinct")
    # anchor at the vertex opposite the longest side, where the two
    # bisectors meet at the widest angle
    sides = (dist(b.point, c.point), dist(a.point, c.point), dist(a.point, b.point))
    i = max(range(3), key=sides.__getitem__)
    a, b, c = pts[i], *(pts[j] for j in range(3) if j != i)
    out = []
    for rel in _raw_equidistant(a, b, c):
        x = _polish((rel[0] + a.point[0], rel[1] + a.point[1]), pts)
        res, r = _residual(x, pts)
        if not math.isfinite(r) or res > 1e-8 * (1.0 + r):
            continue
        p = Point(x[0], x[1])
        if any(dist(p, q) <= REL_TOL * max(1.0, r) for q, _ in out):
            continue
        out.append((p, r))
    out.sort()
    return tuple(out)


def is_center_of_triple(c, a: WeightedPoint, b: WeightedPoint, cc: WeightedPoint) -> bool:
    """True iff ``c`` lies in the closed convex hull of the three points.

    For an equidistant point this is exactly the condition for it to be
    the weighted center of the three.
    """
    pa, pb, pc = a.point, b.point, cc.point
    scale = max(dist(pa, pb), dist(pb, pc), dist(pc, pa))
    if scale == 0.0:
        return dist(c, pa) == 0.0
    tol = REL_TOL * scale
    area = orient(pa, pb, pc)
    if abs(area) <= tol * scale:
        u, v = max([(pa, pb), (pb, pc), (pc, pa)], key=lambda e: dist(*e))
        return point_segment_distance(c, u, v) <= tol
    sign = 1.0 if area > 0 else -1.0
    return all(sign * orient(u, v, c) >= -tol * dist(u, v)
               for u, v in ((pa, pb), (pb, pc), (pc, pa)))


def point_segment_distance(c, u, v) -> float:
    vx, vy = v[0] - u[0], v[1] - u[1]
    ll = vx * vx + vy * vy
    if ll == 0.0:
        return dist(c, u)
    t = min(1.0, max(0.0, ((c[0] - u[0]) * vx + (c[1] - u[1]) * vy) / ll))
    return math.hypot(c[0] - u[0] - t * vx, c[1] - u[1] - t * vy)


def convex_hull(points) -> list[int]:
    """Indices of hull vertices in counterclockwise order (monotone chain).

    Collinear boundary points are dropped; of coincident points only the
    lowest index survives.
    """
    idx = sorted(range(len(points)), key=lambda i: (points[i][0], points[i][1], i))
    uniq = []
    for i in idx:
        if not uniq or tuple(points[uniq[-1]]) != tuple(points[i]):
            uniq.append(i)
    if len(uniq) <= 2:
        return uniq

    def chain(seq):
        out = []
        for i in seq:
            while len(out) >= 2 and orient(points[out[-2]], points[out[-1]], points[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower, upper = chain(uniq), chain(reversed(uniq))
    return lower[:-1] + upper[:-1]
