"""Brute force over every assignment, for tiny instances only."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .errors import OracleScaleError
from .geom import REL_TOL, WeightedPoint
from .wcenter import Instance, SolveResult, weighted_one_center

MAX_ASSIGNMENTS = 10**6


@dataclass(frozen=True)
class OracleResult:
    best: SolveResult
    all_radii: tuple


def multiset_permutations(values) -> Iterator[tuple]:
    """Distinct permutations in lexicographic order."""
    a = sorted(values)
    while True:
        yield tuple(a)
        i = len(a) - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = len(a) - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


def assignment_count(inst: Instance) -> int:
    n, k = inst.n, inst.k
    count = math.perm(n, k)
    for m in Counter(inst.weights).values():
        count //= math.factorial(m)
    return count


def enumerate_assignments(inst: Instance) -> Iterator[tuple]:
    """Assignments by index subset, then weight permutation, both lexicographic."""
    perms = list(multiset_permutations(inst.weights))
    for subset in combinations(range(inst.n), inst.k):
        for perm in perms:
            values = [1.0] * inst.n
            for i, w in zip(subset, perm):
                values[i] = w
            yield tuple(values)


def brute_force_solve(inst: Instance, limit: int = MAX_ASSIGNMENTS) -> OracleResult:
    if assignment_count(inst) > limit:
        raise OracleScaleError("oracle scale exceeded")
    radii, results = [], []
    cache = {}
    for asg in enumerate_assignments(inst):
        if asg not in cache:
            cache[asg] = weighted_one_center([WeightedPoint(p, w) for p, w in zip(inst.points, asg)])
        c, r, det = cache[asg]
        radii.append(r)
        results.append((r, asg, c, det))
    rmin = min(radii)
    r, asg, c, det = min((t for t in results if t[0] <= rmin * (1 + REL_TOL)), key=lambda t: t[1])
    return OracleResult(SolveResult(asg, c, r, tuple(det)), tuple(radii))
