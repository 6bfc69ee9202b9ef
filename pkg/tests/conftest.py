import math
import random
from itertools import permutations

import pytest

from wassign.geom import Point
from wassign.wcenter import Instance


def random_instance(rng: random.Random, n: int, k: int, lo: float = 0.2, hi: float = 2.0) -> Instance:
    pts = tuple((rng.random(), rng.random()) for _ in range(n))
    return Instance(pts, tuple(rng.uniform(lo, hi) for _ in range(k)))


def ternary_center(wpts, iters: int = 60):
    """Minimize max weighted distance by nested ternary search.

    The objective is convex, so the inner minimum over y is convex in x.
    Independent of every candidate-enumeration routine in the package.
    """
    xs = [p.point.x for p in wpts]
    ys = [p.point.y for p in wpts]

    def f(x, y):
        return max(math.hypot(p.point.x - x, p.point.y - y) / p.weight for p in wpts)

    def inner(x):
        lo, hi = min(ys), max(ys)
        for _ in range(iters):
            a, b = lo + (hi - lo) / 3, hi - (hi - lo) / 3
            if f(x, a) < f(x, b):
                hi = b
            else:
                lo = a
        y = (lo + hi) / 2
        return f(x, y), y

    lo, hi = min(xs), max(xs)
    for _ in range(iters):
        a, b = lo + (hi - lo) / 3, hi - (hi - lo) / 3
        if inner(a)[0] < inner(b)[0]:
            hi = b
        else:
            lo = a
    x = (lo + hi) / 2
    val, y = inner(x)
    return Point(x, y), val


def best_assignment_at(c, inst: Instance) -> float:
    """Smallest max weighted distance at a fixed center, over every permutation of W1."""
    best = math.inf
    for perm in set(permutations(inst.w1)):
        best = min(best, max(math.dist(p, c) / w for p, w in zip(inst.points, perm)))
    return best


@pytest.fixture
def two_point():
    return Instance(((0.0, 0.0), (4.0, 0.0)), (0.5,))


@pytest.fixture
def equilateral():
    s = math.sqrt(3)
    return Instance(((0.0, 0.0), (s, 0.0), (s / 2, 1.5)), (1.0,))
