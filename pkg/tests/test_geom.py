import math
import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from wassign.errors import CoincidentCirclesError, DegenerateError
from wassign.geom import (
    Circle,
    Point,
    WeightedPoint,
    circle_intersections,
    convex_hull,
    dist,
    equidistant_points_of_triple,
    is_center_of_triple,
    orient,
    weighted_center_of_pair,
    weighted_distance,
)

coord = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
weight = st.floats(0.1, 3.0)


def wp(x, y, w):
    return WeightedPoint(Point(x, y), w)


def close(a, b, tol=1e-9):
    return dist(a, b) <= tol


class TestTypes:
    def test_weight_must_be_positive(self):
        with pytest.raises(ValueError):
            WeightedPoint(Point(0, 0), 0.0)

    def test_negative_radius_rejected(self):
        with pytest.raises(ValueError):
            Circle(Point(0, 0), -1.0)

    def test_point_circle_is_legal(self):
        assert Circle(Point(1, 1), 0.0).radius == 0.0


@pytest.mark.parametrize("p, q, expected", [
    (wp(0, 0, 1), (3, 4), 5.0),
    (wp(0, 0, 0.5), (3, 4), 10.0),
    (wp(1, 1, 2), (1, 1), 0.0),
])
def test_weighted_distance(p, q, expected):
    assert weighted_distance(p, q) == pytest.approx(expected)


class TestCircleIntersections:
    def test_external_tangency(self):
        pts = circle_intersections(Circle((0, 0), 1), Circle((2, 0), 1))
        assert len(pts) == 1 and close(pts[0], (1, 0))

    def test_lens(self):
        pts = sorted(circle_intersections(Circle((0, 0), 1), Circle((1, 0), 1)), key=lambda p: p.y)
        h = math.sqrt(3) / 2
        assert close(pts[0], (0.5, -h)) and close(pts[1], (0.5, h))

    def test_disjoint(self):
        assert circle_intersections(Circle((0, 0), 1), Circle((4, 0), 1)) == []

    def test_internal_tangency(self):
        pts = circle_intersections(Circle((0, 0), 2), Circle((1, 0), 1))
        assert len(pts) == 1 and close(pts[0], (2, 0))

    def test_concentric(self):
        assert circle_intersections(Circle((0, 0), 1), Circle((0, 0), 2)) == []

    def test_coincident_raises(self):
        with pytest.raises(CoincidentCirclesError, match="coincident circles"):
            circle_intersections(Circle((1, 2), 3), Circle((1, 2), 3))

    def test_point_circle_on_other(self):
        pts = circle_intersections(Circle((1, 0), 0.0), Circle((0, 0), 1))
        assert len(pts) == 1 and close(pts[0], (1, 0))

    def test_near_tangent_snaps(self):
        pts = circle_intersections(Circle((0, 0), 1), Circle((2 + 1e-12, 0), 1))
        assert len(pts) == 1

    @settings(max_examples=300, deadline=None)
    @given(coord, coord, st.floats(0.01, 5), coord, coord, st.floats(0.01, 5))
    def test_points_on_both_circles(self, ax, ay, ra, bx, by, rb):
        a, b = Circle((ax, ay), ra), Circle((bx, by), rb)
        try:
            pts = circle_intersections(a, b)
        except CoincidentCirclesError:
            return
        tol = 1e-9 * max(ra, rb, 1) * 10
        for p in pts:
            assert abs(dist(p, a.center) - ra) <= tol
            assert abs(dist(p, b.center) - rb) <= tol


class TestPairCenter:
    @pytest.mark.parametrize("a, b, c, r", [
        (wp(0, 0, 0.5), wp(3, 0, 1), (1, 0), 2),
        (wp(0, 0, 1), wp(2, 0, 1), (1, 0), 1),
        (wp(0, 0, 1), wp(0, 6, 2), (0, 2), 2),
    ])
    def test_examples(self, a, b, c, r):
        got_c, got_r = weighted_center_of_pair(a, b)
        assert close(got_c, c) and got_r == pytest.approx(r)

    def test_degenerate(self):
        with pytest.raises(DegenerateError, match="degenerate pair"):
            weighted_center_of_pair(wp(1, 1, 1), wp(1, 1, 2))

    @given(coord, coord, weight, coord, coord, weight)
    def test_equalities_and_on_segment(self, ax, ay, wa, bx, by, wb):
        a, b = wp(ax, ay, wa), wp(bx, by, wb)
        if a.point == b.point:
            return
        c, r = weighted_center_of_pair(a, b)
        assert weighted_distance(a, c) == pytest.approx(r, rel=1e-12, abs=1e-300)
        assert weighted_distance(b, c) == pytest.approx(r, rel=1e-12, abs=1e-300)
        d = dist(a.point, b.point)
        assert dist(a.point, c) + dist(c, b.point) == pytest.approx(d, rel=1e-12)


def residual(x, r, pts):
    return max(abs(weighted_distance(p, x) - r) for p in pts)


class TestTriple:
    def test_equilateral(self):
        pts = [wp(math.cos(t), math.sin(t), 1) for t in (math.pi / 2, math.pi / 2 + 2 * math.pi / 3,
                                                         math.pi / 2 + 4 * math.pi / 3)]
        sols = equidistant_points_of_triple(*pts)
        assert len(sols) == 1
        (x, r), = sols
        assert close(x, (0, 0)) and r == pytest.approx(1.0)

    def test_collinear_equal_weights(self):
        assert equidistant_points_of_triple(wp(0, 0, 1), wp(2, 0, 1), wp(4, 0, 1)) == ()

    def test_two_solutions(self):
        pts = (wp(0, 0, 1), wp(4, 0, 1), wp(2, 3, 0.5))
        sols = equidistant_points_of_triple(*pts)
        assert len(sols) == 2
        for x, r in sols:
            assert residual(x, r, pts) <= 1e-9 * (1 + r)

    def test_duplicate_points_rejected(self):
        with pytest.raises(DegenerateError):
            equidistant_points_of_triple(wp(0, 0, 1), wp(0, 0, 2), wp(1, 0, 1))

    def test_residual_random(self):
        rng = random.Random(7)
        for _ in range(1000):
            pts = [wp(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.2, 2)) for _ in range(3)]
            for x, r in equidistant_points_of_triple(*pts):
                assert residual(x, r, pts) <= 1e-8 * (1 + r)

    def test_grid_spot_check(self):
        # a hull-interior solution is a local minimum of the max weighted distance
        rng = random.Random(11)
        checked = 0
        while checked < 30:
            pts = [wp(rng.random(), rng.random(), rng.uniform(0.5, 1.5)) for _ in range(3)]
            for x, r in equidistant_points_of_triple(*pts):
                if not is_center_of_triple(x, *pts):
                    continue
                checked += 1
                h = 1e-3 * max(r, 1e-3)
                for i in range(-5, 6):
                    for j in range(-5, 6):
                        y = (x[0] + i * h, x[1] + j * h)
                        assert max(weighted_distance(p, y) for p in pts) >= r * (1 - 1e-9)

    def test_sliver_triangle_any_order(self):
        # two points far closer than the third; nearly parallel bisectors
        # appear unless the anchor is chosen well
        pts = [wp(0.0, 0.0, 1.0), wp(0.0, 4e-148, 1.0), wp(1.0, 0.0, 1.0)]
        for perm in permutations(pts):
            (x, r), = equidistant_points_of_triple(*perm)
            assert x[0] == pytest.approx(0.5) and r == pytest.approx(0.5)

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.tuples(coord, coord, weight), min_size=3, max_size=3))
    def test_permutation_symmetry(self, raw):
        pts = [wp(*t) for t in raw]
        if len({p.point for p in pts}) < 3:
            return
        base = equidistant_points_of_triple(*pts)
        for perm in permutations(pts):
            other = equidistant_points_of_triple(*perm)
            assert len(other) == len(base)
            for x, r in other:
                assert any(dist(x, y) <= 1e-9 * max(1.0, abs(r)) * 100 for y, _ in base)


class TestHullMembership:
    def test_centroid_inside(self):
        s = math.sqrt(3)
        assert is_center_of_triple((s / 2, 0.5), wp(0, 0, 1), wp(s, 0, 1), wp(s / 2, 1.5, 1))

    def test_far_circumcenter_outside(self):
        a, b, c = wp(0, 0, 1), wp(1, 0, 1), wp(0.5, 0.1, 1)
        (x, _), = equidistant_points_of_triple(a, b, c)
        assert x[1] < 0
        # independent check with orientation predicates
        signs = [orient(u.point, v.point, x) for u, v in ((a, b), (b, c), (c, a))]
        assert not (all(s >= 0 for s in signs) or all(s <= 0 for s in signs))
        assert not is_center_of_triple(x, a, b, c)

    def test_vertex_counts(self):
        assert is_center_of_triple((0, 0), wp(0, 0, 1), wp(1, 0, 1), wp(0, 1, 1))


def test_convex_hull_drops_collinear_and_duplicates():
    pts = [(0, 0), (1, 0), (2, 0), (2, 2), (0, 2), (1, 1), (0, 0)]
    hull = convex_hull(pts)
    assert sorted(hull) == [0, 2, 3, 4]
