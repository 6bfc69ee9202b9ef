"""Exact optimization over candidate radii.

As r grows, the arrangement of circles C(p, w*r) changes only when two
circles become tangent or three pass through one point. The optimum r*
is one of those radii, because the optimal center is fixed by at most
three weighted points. ``solve_exact`` validates the center of every such
event directly. ``solve_parametric`` instead locates r* among the event
radii with the decision oracle.
"""
from __future__ import annotations

import bisect
import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .decision import PointWeightPair, decide
from .errors import DegenerateError, NonMonotoneOracleError
from .geom import (
    REL_TOL,
    Point,
    WeightedPoint,
    dist,
    equidistant_points_of_triple,
    is_center_of_triple,
    weighted_center_of_pair,
)
from .wcenter import (
    Instance,
    SolveResult,
    covering_radius,
    lex_smallest_assignment,
    result_at,
    validate_candidate,
)

DEDUP_RTOL = 1e-12
PAIR, TRIPLE = "pair-tangency", "triple-concurrency"


@dataclass(frozen=True)
class CandidateEvent:
    r_value: float
    kind: str
    defining: tuple
    point: Point


@dataclass(frozen=True)
class RInterval:
    lo: float
    hi: float
    lo_feasible: bool = False
    hi_feasible: bool = True


def _wp(inst, pair) -> WeightedPoint:
    return WeightedPoint(inst.points[pair[0]], pair[1])


def _pair_events(a, b, inst) -> list[CandidateEvent]:
    pa, pb = inst.points[a[0]], inst.points[b[0]]
    d = dist(pa, pb)
    if d == 0.0:
        return []
    wa, wb = a[1], b[1]
    defining = (PointWeightPair(*a), PointWeightPair(*b))
    c, r = weighted_center_of_pair(WeightedPoint(pa, wa), WeightedPoint(pb, wb))
    out = [CandidateEvent(r, PAIR, defining, c)]
    if wa != wb:
        t = wa / (wa - wb)
        x = Point(pa.x + t * (pb.x - pa.x), pa.y + t * (pb.y - pa.y))
        out.append(CandidateEvent(d / abs(wa - wb), PAIR, defining, x))
    out.sort(key=lambda e: e.r_value)
    return out


def _triple_events(a, b, c, inst) -> list[CandidateEvent]:
    try:
        sols = equidistant_points_of_triple(_wp(inst, a), _wp(inst, b), _wp(inst, c))
    except DegenerateError:
        return []
    defining = (PointWeightPair(*a), PointWeightPair(*b), PointWeightPair(*c))
    return sorted((CandidateEvent(r, TRIPLE, defining, x) for x, r in sols),
                  key=lambda e: e.r_value)


def pair_event_rvalues(a: PointWeightPair, b: PointWeightPair, inst: Instance) -> list[float]:
    """Radii at which C(a) and C(b) touch, externally and internally."""
    if a[0] == b[0]:
        raise ValueError("pair events need two distinct points")
    return [e.r_value for e in _pair_events(a, b, inst)]


def triple_event_rvalues(a: PointWeightPair, b: PointWeightPair, c: PointWeightPair,
                         inst: Instance) -> list[float]:
    """Radii at which the three circles share a point."""
    if len({a[0], b[0], c[0]}) != 3:
        raise ValueError("triple events need three distinct points")
    return [e.r_value for e in _triple_events(a, b, c, inst)]


def point_weight_pairs(inst: Instance) -> list[PointWeightPair]:
    return [PointWeightPair(i, w) for i in range(inst.n) for w in inst.distinct_weights]


def _events_from(inst: Instance, i: int, w: float) -> Iterator[CandidateEvent]:
    """Events whose lowest-index defining point is i and carries weight w."""
    ws = inst.distinct_weights
    n = inst.n
    for j in range(i + 1, n):
        for wj in ws:
            yield from _pair_events((i, w), (j, wj), inst)
    for j, l in combinations(range(i + 1, n), 2):
        for wj, wl in product(ws, ws):
            yield from _triple_events((i, w), (j, wj), (l, wl), inst)


def enumerate_events(inst: Instance) -> Iterator[CandidateEvent]:
    """Every pair tangency and triple concurrency over point-weight pairs."""
    for i in range(inst.n):
        for w in inst.distinct_weights:
            yield from _events_from(inst, i, w)


def candidate_radii(inst: Instance) -> Iterator[CandidateEvent]:
    """Events in increasing radius, one per radius (relative tol 1e-12)."""
    last = None
    for e in sorted(enumerate_events(inst), key=lambda e: e.r_value):
        if last is not None and e.r_value <= last * (1 + DEDUP_RTOL):
            continue
        last = e.r_value
        yield e


def multilist_interval_search(lists: Sequence, oracle: Callable[[float], bool]) -> RInterval:
    """Locate the oracle's threshold among the values of several sorted lists.

    ``lists`` holds sorted sequences or zero-argument callables producing
    them. Each round re-materializes one list at a time, takes the median
    of its unresolved part, and tests the weighted median of those
    medians. At least a quarter of the unresolved values get resolved in
    every round, so the oracle is called O(log total) times.

    Returns the interval between the largest infeasible and the smallest
    feasible value (either side may be infinite). Queries always fall
    strictly inside the current bracket, so the answers seen are
    consistent with some threshold even for a non-monotone oracle; callers
    detect that case by re-checking the returned endpoint.
    """
    lo, hi = -math.inf, math.inf

    def materialize(src):
        return src() if callable(src) else src

    while True:
        medians = []
        for src in lists:
            vals = materialize(src)
            a = bisect.bisect_right(vals, lo)
            b = bisect.bisect_left(vals, hi)
            if b > a:
                medians.append((vals[a + (b - a - 1) // 2], b - a))
        if not medians:
            break
        medians.sort()
        half = sum(cnt for _, cnt in medians) / 2
        acc = 0
        for x, cnt in medians:
            acc += cnt
            if acc >= half:
                break
        if oracle(x):
            hi = x
        else:
            lo = x
    return RInterval(lo, hi)


def _subset_of(counts: Counter, weights) -> bool:
    need = Counter(weights)
    return all(counts[w] >= c for w, c in need.items())


def _all_coincident(inst: Instance) -> bool:
    return len(set(inst.points)) == 1


def _trivial(inst: Instance) -> SolveResult:
    from .wcenter import greedy_assignment

    c = inst.points[0]
    asg = greedy_assignment(c, inst)
    return SolveResult(asg, c, 0.0, (0,))


class _Best:
    """Running minimum with the lexicographic tie rule."""

    def __init__(self):
        self.items = []
        self.bound = math.inf

    def offer(self, radius, asg, c, det):
        if radius > self.bound * (1 + REL_TOL):
            return
        self.items.append((radius, asg, c, det))
        if radius < self.bound:
            self.bound = radius
            self.items = [it for it in self.items if it[0] <= radius * (1 + REL_TOL)]

    def result(self, inst: Instance) -> Optional[SolveResult]:
        if not self.items:
            return None
        # several assignments may share an optimal center
        items = []
        for radius, asg, c, det in self.items:
            lex = lex_smallest_assignment(c, radius, inst, rtol=REL_TOL) or asg
            items.append((radius, lex, c, det))
        return result_at(inst, min(items, key=lambda it: it[1])[1])


def solve_exact(inst: Instance) -> SolveResult:
    """Minimum covering radius by validating the center of every event.

    A pair of weighted points proposes its weighted center, a triple its
    in-hull equidistant point; the greedy assignment with those points
    anchored decides whether that center is realizable.
    """
    if inst.n == 1 or _all_coincident(inst):
        return _trivial(inst)
    counts = Counter(inst.w1)
    ws = inst.distinct_weights
    pts = inst.points
    best = _Best()

    def consider(c, anchors):
        r = max(dist(pts[i], c) / w for i, w in anchors)
        if r > best.bound * (1 + REL_TOL):
            return
        asg = validate_candidate(c, r, inst, anchors, rtol=REL_TOL)
        if asg is not None:
            best.offer(covering_radius(pts, asg, c), asg, c, tuple(i for i, _ in anchors))

    for i, j in combinations(range(inst.n), 2):
        if pts[i] == pts[j]:
            continue
        for wi, wj in product(ws, ws):
            if not _subset_of(counts, (wi, wj)):
                continue
            c, _ = weighted_center_of_pair(WeightedPoint(pts[i], wi), WeightedPoint(pts[j], wj))
            consider(c, ((i, wi), (j, wj)))
    for i, j, l in combinations(range(inst.n), 3):
        if pts[i] == pts[j] or pts[j] == pts[l] or pts[i] == pts[l]:
            continue
        for wi, wj, wl in product(ws, ws, ws):
            if not _subset_of(counts, (wi, wj, wl)):
                continue
            a, b, cc = WeightedPoint(pts[i], wi), WeightedPoint(pts[j], wj), WeightedPoint(pts[l], wl)
            for c, r in equidistant_points_of_triple(a, b, cc):
                if r <= best.bound * (1 + REL_TOL) and is_center_of_triple(c, a, b, cc):
                    consider(c, ((i, wi), (j, wj), (l, wl)))
    return best.result(inst)


def event_lists(inst: Instance) -> list[Callable[[], list[float]]]:
    """One lazily recomputed sorted list of event radii per point-weight pair.

    Same radii as ``_events_from`` without building event objects.
    """
    ws = inst.distinct_weights
    wps = [[WeightedPoint(p, w) for w in ws] for p in inst.points]

    def radii(i, a):
        out = []
        pi, wi = inst.points[i], ws[a]
        for j in range(i + 1, inst.n):
            d = dist(pi, inst.points[j])
            if d == 0.0:
                continue
            for wj in ws:
                out.append(d / (wi + wj))
                if wi != wj:
                    out.append(d / abs(wi - wj))
        for j, l in combinations(range(i + 1, inst.n), 2):
            for b, c in product(range(len(ws)), repeat=2):
                try:
                    sols = equidistant_points_of_triple(wps[i][a], wps[j][b], wps[l][c])
                except DegenerateError:
                    continue
                out.extend(r for _, r in sols)
        out.sort()
        return out

    return [(lambda i=i, a=a: radii(i, a)) for i in range(inst.n) for a in range(len(ws))]


def solve_parametric(inst: Instance, stats: Optional[dict] = None) -> SolveResult:
    """Minimum covering radius by searching the event radii with ``decide``.

    ``stats``, when given, receives the number of oracle calls.
    """
    calls = 0

    def oracle(r):
        nonlocal calls
        calls += 1
        return decide(inst, r) is not None

    if inst.n == 1 or _all_coincident(inst):
        if stats is not None:
            stats["oracle_calls"] = 0
        return _trivial(inst)
    found = multilist_interval_search(event_lists(inst), oracle)
    if stats is not None:
        stats["oracle_calls"] = calls
    if not math.isfinite(found.hi):
        raise NonMonotoneOracleError("oracle not monotone: no candidate radius is feasible")
    wit = decide(inst, found.hi)
    if wit is None:
        raise NonMonotoneOracleError("oracle not monotone")
    res = result_at(inst, wit.assignment)
    lex = lex_smallest_assignment(res.center, res.radius, inst, rtol=REL_TOL)
    return result_at(inst, lex) if lex is not None else res
