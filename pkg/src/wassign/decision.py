"""Feasibility oracle: is there an assignment with covering radius <= r?

If some assignment works, some r-center sits on a circle C(p, w*r) for a
point p and a weight w of W1 (push any r-center until a constraint becomes
tight). So each such circle is swept counterclockwise. The circles
C(q, w'*r) of the other points cut it into intervals on which the best
achievable assignment does not change. Walking from one interval to the next
moves a single point q across a single circle, so its feasibility level
(the smallest weight it can accept) moves by one step. The points are kept
sorted by level, with a start pointer per level, and a count of Hall
violations is maintained in O(1) per crossing.

Coincident crossings are processed enters-first. The degenerate interval
at the crossing point then holds the union of the memberships of its
neighbours, which is what the closed disks give at that point. This is how
tangencies and triple concurrencies at the optimal radius come out feasible.
"""
from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

import numpy as np

from .geom import REL_TOL, Circle, Point, dist
from .wcenter import Assignment, Instance, _remaining_weights, greedy_assignment

ANGLE_TOL = 1e-10
TWO_PI = 2.0 * math.pi

_INSIDE, _OUTSIDE, _CROSS, _TOUCH = 0, 1, 2, 3


class PointWeightPair(NamedTuple):
    point_index: int
    weight: float


@dataclass(frozen=True)
class IntervalOnCircle:
    circle: Circle
    start_angle: float
    end_angle: float
    representative: Point

    @property
    def degenerate(self) -> bool:
        return self.end_angle == self.start_angle


@dataclass(frozen=True)
class DecisionWitness:
    center: Point
    assignment: Assignment
    tight_pair: PointWeightPair


class CircleSweepState:
    """Points other than the anchor, kept sorted by feasibility level.

    ``level[q] = j`` means the j-th distinct value of ``sorted_w1`` is the
    smallest weight point q could carry; ``len(values)`` is the sentinel
    level for a point no weight can serve. Group j occupies positions
    ``start[j] .. start[j+1]-1`` of ``order``.
    """

    def __init__(self, sorted_w1, points, levels):
        self.sorted_w1 = tuple(sorted_w1)
        self.values = sorted(set(self.sorted_w1))
        self.first_index = [bisect_left(self.sorted_w1, v) for v in self.values]
        self.first_index.append(len(self.sorted_w1) + 1)
        self.points = tuple(points)
        self.level = list(levels)
        m = len(self.points)
        if m != len(self.sorted_w1):
            raise ValueError("one weight per non-anchored point required")
        t = len(self.values)
        self.order = sorted(range(m), key=lambda q: (self.level[q], self.points[q]))
        self.pos = [0] * m
        for ell, q in enumerate(self.order):
            self.pos[q] = ell
        counts = [0] * (t + 1)
        for lv in self.level:
            counts[lv] += 1
        self.start = [0]
        for c in counts:
            self.start.append(self.start[-1] + c)
        self.bad = [self.first_index[self.level[q]] > ell for ell, q in enumerate(self.order)]
        self.violations = sum(self.bad)

    @property
    def pi(self) -> list:
        """Index into ``sorted_w1`` of each point's smallest feasible weight."""
        return [self.first_index[lv] for lv in self.level]

    @property
    def lo_ptr(self) -> list:
        return self.start[:len(self.values)]

    @property
    def up_ptr(self) -> list:
        return [s - 1 for s in self.start[1:len(self.values) + 1]]

    @property
    def feasible(self) -> bool:
        return self.violations == 0

    def _refresh(self, ell):
        b = self.first_index[self.level[self.order[ell]]] > ell
        if b != self.bad[ell]:
            self.violations += 1 if b else -1
            self.bad[ell] = b

    def _swap(self, a, b):
        qa, qb = self.order[a], self.order[b]
        self.order[a], self.order[b] = qb, qa
        self.pos[qa], self.pos[qb] = b, a

    def raise_level(self, q, expect):
        j = self.level[q]
        assert j == expect and j < len(self.values), "level update out of step"
        a, b = self.pos[q], self.start[j + 1] - 1
        self._swap(a, b)
        self.start[j + 1] -= 1
        self.level[q] = j + 1
        self._refresh(a)
        self._refresh(b)

    def lower_level(self, q, expect):
        j = self.level[q]
        assert j == expect and j > 0, "level update out of step"
        a, b = self.pos[q], self.start[j]
        self._swap(a, b)
        self.start[j] += 1
        self.level[q] = j - 1
        self._refresh(a)
        self._refresh(b)

    def check(self):
        """Recompute everything from scratch and compare (debug aid)."""
        fresh = CircleSweepState(self.sorted_w1, self.points, self.level)
        assert fresh.start == self.start
        assert [self.level[q] for q in self.order] == sorted(self.level)
        assert fresh.violations == self.violations
        assert self.violations == sum(self.first_index[self.level[q]] > ell
                                      for ell, q in enumerate(self.order))


class _Circle:
    """Classification of the other points' circles against one swept circle."""

    def __init__(self, inst: Instance, pair: PointWeightPair, r: float, cap=None):
        p, w = pair
        self.inst, self.pair, self.r = inst, pair, r
        self.center = inst.points[p]
        self.R = w * r
        self.sorted_w1 = _remaining_weights(inst, [(p, w)])
        self.values = sorted(set(self.sorted_w1))
        self.others = [q for q in range(inst.n) if q != p]
        t = len(self.values)
        m = len(self.others)
        self.radii = np.array(self.values, dtype=float) * r
        if m == 0 or t == 0:
            self.cls = np.zeros((m, t), dtype=int)
            self.phi = np.zeros(m)
            self.alpha = np.zeros((m, t))
            self.q_xy = np.zeros((m, 2))
            return
        px, py = self.center
        self.q_xy = np.array([inst.points[q] for q in self.others], dtype=float)
        dx, dy = self.q_xy[:, 0] - px, self.q_xy[:, 1] - py
        d = np.hypot(dx, dy)[:, None]
        rho = self.radii[None, :]
        R = self.R
        tol = REL_TOL * np.maximum(np.maximum(d, rho), R)
        cls = np.full((m, t), _CROSS)
        deep = d < np.abs(R - rho) - tol
        cls[deep & (rho > R)] = _INSIDE
        cls[deep & (rho <= R)] = _OUTSIDE
        cls[d > R + rho + tol] = _OUTSIDE
        inner = np.abs(d - np.abs(R - rho)) <= tol
        cls[inner & (rho < R)] = _TOUCH
        cls[inner & (rho > R)] = _INSIDE
        cls[np.abs(d - (R + rho)) <= tol] = _TOUCH
        conc = d <= tol
        cls[conc & (rho >= R - tol)] = _INSIDE
        cls[conc & (rho < R - tol)] = _OUTSIDE
        if cap is not None:
            cls[:, np.array(self.values) >= cap] = _INSIDE
        self.cls = cls
        self.phi = np.arctan2(dy, dx)
        with np.errstate(divide="ignore", invalid="ignore"):
            cosa = (R * R + d * d - rho * rho) / (2 * R * d)
        self.alpha = np.arccos(np.clip(np.nan_to_num(cosa), -1.0, 1.0))

    def events(self):
        """(angle, is_enter, local q, level) for every boundary crossing."""
        out = []
        qs, js = np.nonzero(self.cls == _CROSS)
        lo = self.phi[qs] - self.alpha[qs, js]
        hi = self.phi[qs] + self.alpha[qs, js]
        for q, j, a, b in zip(qs.tolist(), js.tolist(), lo.tolist(), hi.tolist()):
            out.append((a % TWO_PI, True, q, j))
            out.append((b % TWO_PI, False, q, j))
        qs, js = np.nonzero(self.cls == _TOUCH)
        for q, j in zip(qs.tolist(), js.tolist()):
            a = float(self.phi[q]) % TWO_PI
            out.append((a, True, q, j))
            out.append((a, False, q, j))
        return out

    def point_at(self, theta) -> Point:
        return Point(self.center[0] + self.R * math.cos(theta),
                     self.center[1] + self.R * math.sin(theta))

    def levels_at(self, c, rtol=0.0):
        t = len(self.values)
        levels = []
        for q in range(len(self.others)):
            dq = math.hypot(c[0] - self.q_xy[q, 0], c[1] - self.q_xy[q, 1])
            lv = t
            for j in range(t):
                k = self.cls[q, j]
                if k == _INSIDE or (k != _OUTSIDE and dq <= self.radii[j] * (1 + rtol)):
                    lv = j
                    break
            levels.append(lv)
        return levels

    def state_at(self, c, rtol=0.0) -> CircleSweepState:
        return CircleSweepState(self.sorted_w1, self.others, self.levels_at(c, rtol))


def _clusters(rel_events):
    """Group events closer than ANGLE_TOL; enters of larger circles first."""
    rel_events.sort(key=lambda e: e[0])
    groups, cur = [], []
    for e in rel_events:
        if cur and e[0] - cur[-1][0] > ANGLE_TOL:
            groups.append(cur)
            cur = []
        cur.append(e)
    if cur:
        groups.append(cur)
    out = []
    for g in groups:
        pos = sum(e[0] for e in g) / len(g)
        enters = sorted(((e[2], e[3]) for e in g if e[1]), key=lambda qj: (-qj[1], qj[0]))
        leaves = sorted(((e[2], e[3]) for e in g if not e[1]), key=lambda qj: (qj[1], qj[0]))
        out.append((pos, enters, leaves))
    return out


def _apply(state, enters=(), leaves=(), debug=False):
    for q, j in enters:
        state.lower_level(q, j + 1)
    for q, j in leaves:
        state.raise_level(q, j)
    if debug:
        state.check()


def _undo(state, enters, leaves):
    for q, j in reversed(leaves):
        state.lower_level(q, j + 1)
    for q, j in reversed(enters):
        state.raise_level(q, j)


def _sweep(inst, pair, r, window=None, cap=None, debug=False) -> Iterator[tuple]:
    """Yield ``(interval, feasible, state)`` counterclockwise along the circle.

    ``window=(start, length)`` restricts the walk to one arc.
    """
    circ = _Circle(inst, pair, r, cap)
    geo = Circle(circ.center, circ.R)

    def interval(a, b, rep=None):
        rep = (a + b) / 2 if rep is None else rep
        return IntervalOnCircle(geo, a % TWO_PI, a % TWO_PI + (b - a), circ.point_at(rep))

    events = circ.events()
    if window is None:
        if not events:
            state = circ.state_at(circ.point_at(0.0))
            yield interval(0.0, TWO_PI, 0.0), state.feasible, state
            return
        angles = sorted(e[0] for e in events)
        gaps = [(angles[0] + TWO_PI - angles[-1], angles[-1])]
        gaps += [(b - a, a) for a, b in zip(angles, angles[1:])]
        g, a = max(gaps)
        base = a + g / 2
        clusters = _clusters([((e[0] - base) % TWO_PI, e[1], e[2], e[3]) for e in events])
        state = circ.state_at(circ.point_at(base))
        first, last = clusters[0][0], clusters[-1][0]
        yield interval(base + last - TWO_PI, base + first, base), state.feasible, state
        for i, (x, enters, leaves) in enumerate(clusters):
            _apply(state, enters, debug=debug)
            yield interval(base + x, base + x), state.feasible, state
            _apply(state, leaves=leaves, debug=debug)
            if i + 1 < len(clusters):
                yield interval(base + x, base + clusters[i + 1][0]), state.feasible, state
        return

    s, length = window
    if length <= ANGLE_TOL:
        state = circ.state_at(circ.point_at(s + length / 2), rtol=REL_TOL)
        yield interval(s + length / 2, s + length / 2), state.feasible, state
        return
    rel = []
    for a, is_enter, q, j in events:
        x = (a - s) % TWO_PI
        if x > TWO_PI - ANGLE_TOL:
            x -= TWO_PI
        if -ANGLE_TOL <= x <= length + ANGLE_TOL:
            rel.append((min(max(x, 0.0), length), is_enter, q, j))
    clusters = _clusters(rel)
    marks = [0.0] + [c[0] for c in clusters] + [length]
    g, i_gap = max((b - a, i) for i, (a, b) in enumerate(zip(marks, marks[1:])))
    state = circ.state_at(circ.point_at(s + marks[i_gap] + g / 2))
    for _, enters, leaves in reversed(clusters[:i_gap]):
        _undo(state, enters, leaves)
    prev = 0.0
    for x, enters, leaves in clusters:
        if x - prev > ANGLE_TOL:
            yield interval(s + prev, s + x), state.feasible, state
        _apply(state, enters, debug=debug)
        yield interval(s + x, s + x), state.feasible, state
        _apply(state, leaves=leaves, debug=debug)
        prev = x
    if length - prev > ANGLE_TOL:
        yield interval(s + prev, s + length), state.feasible, state


def circle_intervals(pair: PointWeightPair, r: float, inst: Instance) -> list[IntervalOnCircle]:
    """Intervals of C(p, w*r) cut out by the circles of the other points.

    Crossing points appear as degenerate (zero-length) intervals of their
    own, between the proper arcs they separate.
    """
    return [iv for iv, _, _ in _sweep(inst, PointWeightPair(*pair), r)]


def sweep_intervals(pair: PointWeightPair, r: float, inst: Instance, debug=False) -> list:
    """Every interval on the circle with its incremental feasibility verdict."""
    return [(iv, ok) for iv, ok, _ in _sweep(inst, PointWeightPair(*pair), r, debug=debug)]


def _witness(inst, pair, c) -> DecisionWitness:
    return DecisionWitness(c, greedy_assignment(c, inst, [tuple(pair)]), pair)


def sweep_circle(pair: PointWeightPair, r: float, inst: Instance, debug=False) -> Optional[DecisionWitness]:
    """First feasible interval on C(p, w*r), as a witness, or None."""
    pair = PointWeightPair(*pair)
    for iv, ok, _ in _sweep(inst, pair, r, debug=debug):
        if ok:
            return _witness(inst, pair, iv.representative)
    return None


def naive_feasible(pair: PointWeightPair, r: float, inst: Instance, c, rtol: float = REL_TOL) -> bool:
    """From-scratch test at one point: anchor the pair, match the rest greedily."""
    p, w = pair
    asg = greedy_assignment(c, inst, [(p, w)])
    bound = r * (1 + rtol)
    return all(dist(inst.points[q], c) / asg[q] <= bound for q in range(inst.n) if q != p)


def decision_pairs(inst: Instance) -> list[PointWeightPair]:
    ws = inst.distinct_weights[::-1]
    return [PointWeightPair(i, w) for i in range(inst.n) for w in ws]


def decide(inst: Instance, r: float, debug=False) -> Optional[DecisionWitness]:
    """A witness that some assignment has covering radius <= r, or None."""
    if r <= 0:
        if r == 0 and len(set(inst.points)) == 1:
            pair = PointWeightPair(0, max(inst.w1))
            return _witness(inst, pair, inst.points[0])
        return None
    for pair in decision_pairs(inst):
        wit = sweep_circle(pair, r, inst, debug=debug)
        if wit is not None:
            return wit
    return None
