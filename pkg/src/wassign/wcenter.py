"""Weighted 1-center of a fixed weighted point set, and the greedy
weight matching used to test whether a center/radius pair is realizable.
"""
from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .geom import (
    REL_TOL,
    Point,
    WeightedPoint,
    dist,
    equidistant_points_of_triple,
    is_center_of_triple,
    weighted_center_of_pair,
)

Assignment = tuple  # length-n tuple of floats


@dataclass(frozen=True)
class Instance:
    """n points and a multiset of k <= n weights; the other n-k points weigh 1."""

    points: tuple
    weights: tuple

    def __post_init__(self):
        pts = tuple(Point(float(p[0]), float(p[1])) for p in self.points)
        ws = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", ws)
        if not pts:
            raise ValueError("instance needs at least one point")
        if not 1 <= len(ws) <= len(pts):
            raise ValueError(f"need 1 <= k <= n, got k={len(ws)}, n={len(pts)}")
        for p in pts:
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise ValueError(f"non-finite coordinate in {p}")
        for w in ws:
            if not (w > 0 and math.isfinite(w)):
                raise ValueError(f"weights must be positive and finite, got {w}")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def k(self) -> int:
        return len(self.weights)

    @property
    def w1(self) -> tuple:
        """W together with n-k unit weights, sorted increasingly."""
        return tuple(sorted(self.weights + (1.0,) * (self.n - self.k)))

    @property
    def distinct_weights(self) -> tuple:
        return tuple(sorted(set(self.w1)))

    @property
    def has_duplicates(self) -> bool:
        return len(set(self.points)) < self.n

    def weighted(self, i: int, w: float) -> WeightedPoint:
        return WeightedPoint(self.points[i], w)


@dataclass(frozen=True)
class SolveResult:
    assignment: Assignment
    center: Point
    radius: float
    determinators: tuple


def covering_radius(points: Sequence, assignment: Sequence[float], c) -> float:
    return max(dist(p, c) / w for p, w in zip(points, assignment))


def is_assignment(inst: Instance, values: Sequence[float]) -> bool:
    """Does ``values`` place W on k indices and 1 everywhere else?"""
    return len(values) == inst.n and Counter(values) == Counter(inst.w1)


def weighted_one_center(pts: Sequence[WeightedPoint]) -> tuple[Point, float, tuple]:
    """Center minimizing the maximum weighted distance to ``pts``.

    The center is fixed by at most three of the points, so every pair
    center and every in-hull equidistant point of a triple is a candidate;
    the smallest candidate radius that covers everything wins.

    Returns ``(center, radius, determinators)`` with determinators given
    as indices into ``pts``.
    """
    if not pts:
        raise ValueError("need at least one point")
    # of several points at one location only the lightest can bind
    rep = {}
    for i, p in enumerate(pts):
        j = rep.get(p.point)
        if j is None or p.weight < pts[j].weight:
            rep[p.point] = i
    ids = sorted(rep.values())
    if len(ids) == 1:
        return pts[ids[0]].point, 0.0, (ids[0],)

    cands = []
    for i, j in combinations(ids, 2):
        c, r = weighted_center_of_pair(pts[i], pts[j])
        cands.append((r, c, (i, j)))
    if len(ids) >= 3:
        for i, j, l in combinations(ids, 3):
            for c, r in equidistant_points_of_triple(pts[i], pts[j], pts[l]):
                if is_center_of_triple(c, pts[i], pts[j], pts[l]):
                    cands.append((r, c, (i, j, l)))
    cands.sort(key=lambda t: t[0])

    def cover(c):
        return max(dist(p.point, c) / p.weight for p in pts)

    for r, c, det in cands:
        if cover(c) <= r * (1 + REL_TOL):
            return c, cover(c), det
    # rounding rejected everything: fall back to the best actual value
    r, c, det = min(((cover(c), c, det) for _, c, det in cands), key=lambda t: t[0])
    return c, r, det


def smallest_enclosing_circle(points: Sequence) -> tuple[Point, float]:
    """Unweighted 1-center by randomized incremental construction (Welzl).

    Expected linear time; used where the enumeration above would be
    too slow (large n).
    """
    pts = [Point(float(p[0]), float(p[1])) for p in points]
    random.Random(0).shuffle(pts)

    def two(a, b):
        return Point((a.x + b.x) / 2, (a.y + b.y) / 2), dist(a, b) / 2

    def three(a, b, c):
        ax, ay = b.x - a.x, b.y - a.y
        bx, by = c.x - a.x, c.y - a.y
        d = 2 * (ax * by - ay * bx)
        if d == 0.0:
            return max((two(a, b), two(b, c), two(a, c)), key=lambda t: t[1])
        aa, bb = ax * ax + ay * ay, bx * bx + by * by
        ux, uy = (by * aa - ay * bb) / d, (ax * bb - bx * aa) / d
        return Point(a.x + ux, a.y + uy), math.hypot(ux, uy)

    def inside(circ, p):
        return dist(circ[0], p) <= circ[1] * (1 + 1e-12) + 1e-300

    circ = (pts[0], 0.0)
    for i in range(1, len(pts)):
        if inside(circ, pts[i]):
            continue
        circ = (pts[i], 0.0)
        for j in range(i):
            if inside(circ, pts[j]):
                continue
            circ = two(pts[i], pts[j])
            for l in range(j):
                if not inside(circ, pts[l]):
                    circ = three(pts[i], pts[j], pts[l])
    return circ


def _remaining_weights(inst: Instance, anchored: Iterable[tuple[int, float]]) -> list[float]:
    pool = Counter(inst.w1)
    for _, w in anchored:
        if pool[w] == 0:
            raise ValueError(f"anchored weight {w} is not available in W1")
        pool[w] -= 1
    return sorted(pool.elements())


def greedy_assignment(c, inst: Instance, anchored: Sequence[tuple[int, float]] = ()) -> Assignment:
    """Give the smallest free weights to the points closest to ``c``.

    Anchored ``(index, weight)`` pairs are fixed first; distance ties go
    to the lower index.
    """
    fixed = dict(anchored)
    if len(fixed) != len(anchored):
        raise ValueError("anchored indices must be distinct")
    free = sorted((i for i in range(inst.n) if i not in fixed),
                  key=lambda i: (dist(inst.points[i], c), i))
    values = [0.0] * inst.n
    for i, w in fixed.items():
        values[i] = w
    for i, w in zip(free, _remaining_weights(inst, anchored)):
        values[i] = w
    return tuple(values)


def validate_candidate(c, r: float, inst: Instance, anchored: Sequence[tuple[int, float]] = (),
                       rtol: float = 1e-12) -> Optional[Assignment]:
    """The greedy assignment at ``c`` if it keeps every point within ``r``.

    By the exchange argument on sorted distances, no other choice for
    the free points can succeed when the greedy one fails.
    """
    asg = greedy_assignment(c, inst, anchored)
    bound = r * (1 + rtol)
    for p, w in zip(inst.points, asg):
        if dist(p, c) / w > bound:
            return None
    return asg


def lex_smallest_assignment(c, r: float, inst: Instance, rtol: float = 1e-12) -> Optional[Assignment]:
    """Lexicographically smallest assignment keeping every point within ``r`` of ``c``.

    Fixes indices in order, each to the smallest weight that still leaves
    a valid greedy completion.
    """
    if validate_candidate(c, r, inst, (), rtol) is None:
        return None
    fixed = []
    pool = Counter(inst.w1)
    for i in range(inst.n):
        for w in sorted(v for v, m in pool.items() if m > 0):
            if validate_candidate(c, r, inst, fixed + [(i, w)], rtol) is not None:
                fixed.append((i, w))
                pool[w] -= 1
                break
    return tuple(w for _, w in fixed)


def result_at(inst: Instance, assignment: Assignment) -> SolveResult:
    """SolveResult for a fixed assignment: its weighted center and radius."""
    c, r, det = weighted_one_center([WeightedPoint(p, w) for p, w in zip(inst.points, assignment)])
    return SolveResult(tuple(assignment), c, r, tuple(det))
