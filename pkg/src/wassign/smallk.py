"""Faster path when every weight is at most 1.

With all weights <= 1 the farthest points from the optimal center keep
weight 1, and the weighted points are the ones nearest to it. Two cases
remain:

* every determinator carries a weight below 1. Then the weighted points
  are the sites of one order-k Voronoi cell, and trying each order of
  the small weights on each cell's sites (plus a farthest-point check)
  finds the optimum.
* some determinator has weight 1. Then the optimal center lies on the
  boundary of the intersection of the disks D(p, r*), and a decision
  procedure restricted to that boundary drives a search over the
  candidate radii.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional, Sequence

import numpy as np

from .decision import DecisionWitness, PointWeightPair, _sweep, _witness, decide
from .errors import DegenerateError, PreconditionError
from .geom import (
    REL_TOL,
    Point,
    WeightedPoint,
    convex_hull,
    dist,
    equidistant_points_of_triple,
)
from .optimizer import DEDUP_RTOL, solve_exact
from .oracle import multiset_permutations
from .wcenter import Instance, SolveResult, result_at, weighted_one_center

TWO_PI = 2.0 * math.pi
ARC_TOL = 1e-9
WITNESS_NUDGE = 1e-7


@dataclass(frozen=True)
class OrderKCell:
    sites: frozenset
    witness: Point


@dataclass(frozen=True)
class DiskIntersectionBoundary:
    """Arcs ``(point index, start angle, end angle)`` in counterclockwise order."""

    arcs: tuple
    breakpoints: tuple

    @property
    def empty(self) -> bool:
        return not self.arcs


@dataclass(frozen=True)
class SmallKReport:
    result: SolveResult
    case: int
    r_upper: float
    case2_radius: float


# -- order-k cells ---------------------------------------------------------

def _bisector_lines(P: np.ndarray):
    """Rows (a, b, c) with a*x + b*y = c, normalized so |(a, b)| = 1."""
    i, j = np.triu_indices(len(P), 1)
    a = P[j] - P[i]
    c = (np.sum(P[j] ** 2, axis=1) - np.sum(P[i] ** 2, axis=1)) / 2
    norm = np.hypot(a[:, 0], a[:, 1])
    return a / norm[:, None], c / norm


def _knn_subset(P: np.ndarray, x, k: int) -> Optional[frozenset]:
    d = np.hypot(P[:, 0] - x[0], P[:, 1] - x[1])
    order = np.argsort(d, kind="stable")
    if k < len(P) and not d[order[k - 1]] < d[order[k]]:
        return None
    return frozenset(order[:k].tolist())


def _samples(P: np.ndarray):
    """Points near every vertex of the bisector arrangement, one per wedge."""
    normals, offsets = _bisector_lines(P)
    span = float(np.max(np.ptp(P, axis=0)))
    scale = max(span, float(np.max(np.abs(P))), 1.0)
    tol = REL_TOL * scale
    m = len(normals)
    cross = normals[:, None, 0] * normals[None, :, 1] - normals[:, None, 1] * normals[None, :, 0]
    ii, jj = np.nonzero(np.triu(np.abs(cross) > 1e-12, 1))
    if len(ii) == 0:
        # all bisectors parallel: one sample per slab along the common normal
        nrm = normals[0] * np.sign(np.dot(normals, normals[0]))[:, None]
        offs = np.sort(offsets * np.sign(np.dot(normals, normals[0])))
        cuts = np.concatenate(([offs[0] - scale], (offs[:-1] + offs[1:]) / 2, [offs[-1] + scale]))
        return [tuple(nrm[0] * t) for t in cuts]
    det = cross[ii, jj]
    vx = (offsets[ii] * normals[jj, 1] - offsets[jj] * normals[ii, 1]) / det
    vy = (normals[ii, 0] * offsets[jj] - normals[jj, 0] * offsets[ii]) / det
    verts = np.unique(np.round(np.stack([vx, vy], axis=1), 12), axis=0)
    out = []
    for v in verts:
        gap = np.abs(normals @ v - offsets)
        through = gap <= tol * max(1.0, float(np.hypot(*v)) / scale)
        far = gap[~through]
        eps = WITNESS_NUDGE * max(scale, float(np.hypot(*v)))
        if far.size:
            eps = min(eps, float(far.min()) / 2)
        dirs = np.arctan2(normals[through, 0], -normals[through, 1])
        dirs = np.sort(np.concatenate([dirs % math.pi, dirs % math.pi + math.pi]))
        mids = (dirs + np.append(dirs[1:], dirs[0] + TWO_PI)) / 2
        for t in mids:
            out.append((v[0] + eps * math.cos(t), v[1] + eps * math.sin(t)))
    return out


def order_k_subsets(P: Sequence, k: int) -> list[OrderKCell]:
    """Every k-subset of P that is the site set of an order-k Voronoi cell.

    Samples the faces of the arrangement of all perpendicular bisectors
    (each order-k cell is a union of such faces) and keeps the samples
    whose k nearest points are strictly separated from the rest.
    """
    n = len(P)
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    if len(set(map(tuple, P))) < n:
        raise ValueError("points must be distinct")
    arr = np.array([[float(p[0]), float(p[1])] for p in P])
    cells = {}
    for x in _samples(arr):
        s = _knn_subset(arr, x, k)
        if s is not None and s not in cells:
            cells[s] = OrderKCell(s, Point(float(x[0]), float(x[1])))
    return sorted(cells.values(), key=lambda c: sorted(c.sites))


# -- farthest point --------------------------------------------------------

class FarthestPointIndex:
    """Farthest-point queries over the hull vertices of P."""

    def __init__(self, P: Sequence):
        if not P:
            raise ValueError("need at least one point")
        self.P = [Point(float(p[0]), float(p[1])) for p in P]
        self.hull = sorted(convex_hull(self.P))

    def query(self, q) -> int:
        if len(self.hull) < 3:
            return _farthest_scan(self.P, q)
        best, best_d = -1, -1.0
        for i in self.hull:
            d = dist(self.P[i], q)
            if d > best_d:
                best, best_d = i, d
        return best


def _farthest_scan(P, q) -> int:
    best, best_d = 0, -1.0
    for i, p in enumerate(P):
        d = dist(p, q)
        if d > best_d:
            best, best_d = i, d
    return best


def farthest_point(P: Sequence, q) -> int:
    """Index of the point of P farthest from q, lowest index on ties."""
    return FarthestPointIndex(P).query(q)


def farthest_voronoi_radii(P: Sequence) -> list[float]:
    """Distances from farthest-point Voronoi vertices to their sites.

    A vertex is the circumcenter of three hull points that encloses all
    of P.
    """
    pts = [Point(float(p[0]), float(p[1])) for p in P]
    hull = convex_hull(pts)
    unit = [WeightedPoint(pts[i], 1.0) for i in hull]
    out = []
    for a, b, c in combinations(unit, 3):
        for x, r in equidistant_points_of_triple(a, b, c):
            if all(dist(p, x) <= r * (1 + REL_TOL) for p in pts):
                out.append(r)
    return sorted(out)


# -- case 1 ----------------------------------------------------------------

def _check_weights(inst: Instance):
    if any(w > 1.0 for w in inst.weights):
        raise PreconditionError("small-k path requires weights ≤ 1")


def solve_case1(inst: Instance) -> tuple[Optional[SolveResult], float]:
    """Best solution whose weighted points form an order-k cell, and its radius.

    Weights equal to 1 are treated as unit weights and left out of the
    cell size. Returns ``(None, inf)`` if no cell yields a valid solution.
    """
    _check_weights(inst)
    small = tuple(sorted(w for w in inst.weights if w < 1.0))
    k = len(small)
    if k == 0 or inst.has_duplicates:
        return _case1_fallback(inst, small)
    if k == inst.n:
        res = solve_exact(inst)
        return res, res.radius
    best = None
    index = FarthestPointIndex(inst.points)
    for cell in order_k_subsets(inst.points, k):
        sites = sorted(cell.sites)
        # the nearest points carry the small weights, but in any order
        for perm in multiset_permutations(small):
            c, r, _ = weighted_one_center([WeightedPoint(inst.points[i], w) for i, w in zip(sites, perm)])
            if best is not None and r >= best.radius:
                continue
            if dist(inst.points[index.query(c)], c) > r * (1 + REL_TOL):
                continue
            asg = [1.0] * inst.n
            for i, w in zip(sites, perm):
                asg[i] = w
            best = result_at(inst, tuple(asg))
    return best, (best.radius if best else math.inf)


def _case1_fallback(inst, small):
    # no weights below 1, or coincident points where cells are undefined
    if not small:
        return None, math.inf
    res = solve_exact(inst)
    return res, res.radius


# -- case 2 ----------------------------------------------------------------

def _arc_meet(a, b):
    """Intersection of two circular arcs ``(start, length)``, or None."""
    s1, l1 = a
    s2, l2 = b
    if l1 >= TWO_PI:
        return b
    if l2 >= TWO_PI:
        return a
    x = (s2 - s1) % TWO_PI
    best = None
    for off in (x, x - TWO_PI):
        lo, hi = max(0.0, off), min(l1, off + l2)
        if hi >= lo - ARC_TOL and (best is None or hi - lo > best[1] - best[0]):
            best = (lo, max(hi, lo))
    if best is None:
        return None
    return ((s1 + best[0]) % TWO_PI, best[1] - best[0])


def disk_intersection_boundary(P: Sequence, r: float) -> DiskIntersectionBoundary:
    """Boundary of the intersection of the disks D(p, r), p in P."""
    pts = [Point(float(p[0]), float(p[1])) for p in P]
    reps = {}
    for i, p in enumerate(pts):
        reps.setdefault(p, i)
    ids = sorted(reps.values())
    if r <= 0:
        return DiskIntersectionBoundary((), ())
    if len(ids) == 1:
        return DiskIntersectionBoundary(((ids[0], 0.0, TWO_PI),), ())
    arcs = []
    for i in ids:
        arc = (0.0, TWO_PI)
        for j in ids:
            if j == i:
                continue
            d = dist(pts[i], pts[j])
            ratio = d / (2 * r)
            if ratio > 1 + REL_TOL:
                return DiskIntersectionBoundary((), ())
            half = 0.0 if ratio >= 1 - REL_TOL else math.acos(ratio)
            phi = math.atan2(pts[j].y - pts[i].y, pts[j].x - pts[i].x)
            arc = _arc_meet(arc, ((phi - half) % TWO_PI, 2 * half))
            if arc is None:
                break
        if arc is not None:
            arcs.append((i, arc[0], arc[0] + arc[1]))
    if not arcs:
        return DiskIntersectionBoundary((), ())

    def mid(a):
        i, s, e = a
        t = (s + e) / 2
        return pts[i].x + r * math.cos(t), pts[i].y + r * math.sin(t)

    mids = [mid(a) for a in arcs]
    cx = sum(m[0] for m in mids) / len(mids)
    cy = sum(m[1] for m in mids) / len(mids)
    order = sorted(range(len(arcs)), key=lambda t: math.atan2(mids[t][1] - cy, mids[t][0] - cx))
    arcs = tuple(arcs[t] for t in order)
    brk = []
    for i, s, e in arcs:
        for t in (s, e):
            brk.append(Point(pts[i].x + r * math.cos(t), pts[i].y + r * math.sin(t)))
    return DiskIntersectionBoundary(arcs, tuple(brk))


def decide_on_boundary(inst: Instance, r: float) -> Optional[DecisionWitness]:
    """A witness center on the boundary of the intersection of D(p, r), or None.

    Each boundary arc lies on a circle C(p, r) where p must carry weight 1;
    every unit-weight constraint already holds on the intersection, so only
    the circles of weights below 1 produce events.
    """
    if r <= 0 or 1.0 not in inst.w1:
        return None
    boundary = disk_intersection_boundary(inst.points, r)
    for i, s, e in boundary.arcs:
        pair = PointWeightPair(i, 1.0)
        for iv, ok, _ in _sweep(inst, pair, r, window=(s, e - s), cap=1.0):
            if ok:
                return _witness(inst, pair, iv.representative)
    return None


def boundary_event_radii(inst: Instance) -> list[float]:
    """Tangency and concurrency radii where at least one circle has weight 1."""
    ws = inst.distinct_weights
    pts = inst.points
    out = []
    for i, j in combinations(range(inst.n), 2):
        d = dist(pts[i], pts[j])
        if d == 0.0:
            continue
        for wi, wj in product(ws, ws):
            if wi != 1.0 and wj != 1.0:
                continue
            out.append(d / (wi + wj))
            if wi != wj:
                out.append(d / abs(wi - wj))
    wps = [[WeightedPoint(p, w) for w in ws] for p in pts]
    for i, j, l in combinations(range(inst.n), 3):
        for a, b, c in product(range(len(ws)), repeat=3):
            if 1.0 not in (ws[a], ws[b], ws[c]):
                continue
            try:
                sols = equidistant_points_of_triple(wps[i][a], wps[j][b], wps[l][c])
            except DegenerateError:
                continue
            out.extend(rr for _, rr in sols)
    return out


def case2_radii(inst: Instance) -> list[float]:
    """Sorted, deduplicated candidate radii for the boundary case."""
    vals = sorted(boundary_event_radii(inst) + farthest_voronoi_radii(inst.points))
    out = []
    for v in vals:
        if v > 0 and (not out or v > out[-1] * (1 + DEDUP_RTOL)):
            out.append(v)
    return out


def case2_oracle(inst: Instance, r: float) -> Optional[DecisionWitness]:
    """Monotone feasibility test for the search over boundary radii.

    A boundary witness is a global witness, so the cheap boundary sweep
    answers first. It can say no at radii above r* (a tiny weight may pin
    every feasible center strictly inside the disk intersection), so a
    negative answer is confirmed with the full decision.
    """
    return decide_on_boundary(inst, r) or decide(inst, r)


def solve_case2(inst: Instance, r_upper: float = math.inf) -> Optional[SolveResult]:
    """Smallest candidate radius below ``r_upper`` that is feasible, solved."""
    radii = case2_radii(inst)
    radii = radii[:bisect.bisect_left(radii, r_upper)]
    lo, hi = 0, len(radii)
    wit = None
    while lo < hi:
        mid = (lo + hi) // 2
        w = case2_oracle(inst, radii[mid])
        if w is not None:
            hi, wit = mid, w
        else:
            lo = mid + 1
    if wit is None:
        return None
    return result_at(inst, wit.assignment)


def solve_small_k_report(inst: Instance) -> SmallKReport:
    _check_weights(inst)
    if inst.n == 1 or len(set(inst.points)) == 1:
        res = solve_exact(inst)
        return SmallKReport(res, 1, res.radius, math.inf)
    res1, r_upper = solve_case1(inst)
    res2 = solve_case2(inst, r_upper)
    if res2 is not None and (res1 is None or res2.radius < res1.radius):
        return SmallKReport(res2, 2, r_upper, res2.radius)
    if res1 is None:
        raise RuntimeError("neither case produced a solution")
    return SmallKReport(res1, 1, r_upper, res2.radius if res2 else math.inf)


def solve_small_k(inst: Instance) -> SolveResult:
    """Minimum covering radius for instances whose weights are all at most 1."""
    return solve_small_k_report(inst).result
