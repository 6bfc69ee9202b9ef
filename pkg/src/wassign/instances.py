"""Instance generators, the text file format, and a counter of distinct
weighted centers.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from pathlib import Path

import numpy as np

from .errors import DegenerateError, InstanceFormatError
from .geom import Point, WeightedPoint, dist, equidistant_points_of_triple, is_center_of_triple, weighted_center_of_pair
from .wcenter import Instance, validate_candidate

RANDOM, LOWER_BOUND = "random", "lower-bound"
INNER_RADIUS = 0.3
CLUSTER_SPREAD = 0.01
CLUSTER_ANGLES = (90.0, 210.0, 330.0)


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    k: int
    seed: int = 0
    weight_lo: float = 0.2
    weight_hi: float = 2.0

    def __post_init__(self):
        if self.kind not in (RANDOM, LOWER_BOUND):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if not 0 < self.weight_lo <= self.weight_hi:
            raise ValueError("need 0 < weight_lo <= weight_hi")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def gen_random(spec: GeneratorSpec) -> Instance:
    """Points uniform in the unit square, weights uniform in [lo, hi]."""
    rng = np.random.default_rng(spec.seed)
    pts = rng.random((spec.n, 2))
    ws = rng.uniform(spec.weight_lo, spec.weight_hi, spec.k)
    return Instance(tuple(map(tuple, pts.tolist())), tuple(ws.tolist()))


def gen_lower_bound(n: int, k: int) -> Instance:
    """The construction with many distinct weighted centers.

    A quarter of the points sit evenly on a circle of radius 0.3; the
    rest form three tight clusters on the unit circle, 120 degrees apart.
    The weights are 1/2 - i/(8k) for i = 1..k.
    """
    if n < 8 or 4 * k > n or k < 1:
        raise ValueError(f"need n >= 8 and 1 <= k <= n/4, got n={n}, k={k}")
    inner = n // 4
    pts = [(INNER_RADIUS * math.cos(2 * math.pi * i / inner),
            INNER_RADIUS * math.sin(2 * math.pi * i / inner)) for i in range(inner)]
    rest = n - inner
    sizes = [rest // 3 + (1 if g < rest % 3 else 0) for g in range(3)]
    for g, size in enumerate(sizes):
        base = math.radians(CLUSTER_ANGLES[g])
        for i in range(size):
            t = base + CLUSTER_SPREAD * ((i - (size - 1) / 2) / max(size - 1, 1))
            pts.append((math.cos(t), math.sin(t)))
    eps = 1.0 / (8 * k)
    return Instance(tuple(pts), tuple(0.5 - i * eps for i in range(1, k + 1)))


def generate(spec: GeneratorSpec) -> Instance:
    if spec.kind == RANDOM:
        return gen_random(spec)
    return gen_lower_bound(spec.n, spec.k)


def count_distinct_centers(inst: Instance, tol: float = 1e-9) -> int:
    """Number of distinct points that are the weighted center of some assignment.

    Every pair and triple of (point, weight) choices proposes its center;
    a proposal counts if the greedy matching with those choices fixed
    realizes it. Centers closer than ``tol`` are merged.
    """
    if inst.n == 1 or len(set(inst.points)) == 1:
        return 1
    pool = Counter(inst.w1)
    ws = inst.distinct_weights
    pts = inst.points
    found: list[Point] = []

    def usable(choice):
        return all(pool[w] >= c for w, c in Counter(choice).items())

    def consider(c, anchors):
        r = max(dist(pts[i], c) / w for i, w in anchors)
        if validate_candidate(c, r, inst, anchors, rtol=1e-9) is None:
            return
        if all(dist(c, q) > tol for q in found):
            found.append(c)

    for i, j in combinations(range(inst.n), 2):
        if pts[i] == pts[j]:
            continue
        for wi, wj in product(ws, ws):
            if usable((wi, wj)):
                c, _ = weighted_center_of_pair(WeightedPoint(pts[i], wi), WeightedPoint(pts[j], wj))
                consider(c, ((i, wi), (j, wj)))
    for i, j, l in combinations(range(inst.n), 3):
        for wi, wj, wl in product(ws, ws, ws):
            if not usable((wi, wj, wl)):
                continue
            a, b, cc = WeightedPoint(pts[i], wi), WeightedPoint(pts[j], wj), WeightedPoint(pts[l], wl)
            try:
                sols = equidistant_points_of_triple(a, b, cc)
            except DegenerateError:
                continue
            for c, _ in sols:
                if is_center_of_triple(c, a, b, cc):
                    consider(c, ((i, wi), (j, wj), (l, wl)))
    return len(found)


# -- text format -----------------------------------------------------------

def dumps(inst: Instance) -> str:
    lines = [f"{inst.n} {inst.k}"]
    lines += [f"{p.x!r} {p.y!r}" for p in inst.points]
    lines += [repr(w) for w in inst.weights]
    return "\n".join(lines) + "\n"


def _float(tok: str, line: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise InstanceFormatError(f"not a number: {tok!r}", line) from None
    if not math.isfinite(v):
        raise InstanceFormatError(f"non-finite value: {tok!r}", line)
    return v


def loads(text: str) -> Instance:
    """Parse the ``n k`` / points / weights format; errors name the line."""
    rows = text.splitlines()
    if not rows or not rows[0].strip():
        raise InstanceFormatError("missing header 'n k'", 1)
    head = rows[0].split()
    if len(head) != 2:
        raise InstanceFormatError("header must be 'n k'", 1)
    try:
        n, k = int(head[0]), int(head[1])
    except ValueError:
        raise InstanceFormatError("header must hold two integers", 1) from None
    if n < 1 or not 1 <= k <= n:
        raise InstanceFormatError(f"need n >= 1 and 1 <= k <= n, got n={n}, k={k}", 1)
    pts, ws = [], []
    for t in range(n):
        ln = t + 2
        if ln > len(rows):
            raise InstanceFormatError(f"expected point {t + 1} of {n}, file ended", ln)
        tok = rows[ln - 1].split()
        if len(tok) != 2:
            raise InstanceFormatError("point line must be 'x y'", ln)
        pts.append((_float(tok[0], ln), _float(tok[1], ln)))
    for t in range(k):
        ln = n + t + 2
        if ln > len(rows):
            raise InstanceFormatError(f"expected weight {t + 1} of {k}, file ended", ln)
        tok = rows[ln - 1].split()
        if len(tok) != 1:
            raise InstanceFormatError("weight line must hold one number", ln)
        w = _float(tok[0], ln)
        if w <= 0:
            raise InstanceFormatError(f"weight must be positive, got {w!r}", ln)
        ws.append(w)
    for ln in range(n + k + 2, len(rows) + 1):
        if rows[ln - 1].strip():
            raise InstanceFormatError("unexpected trailing content", ln)
    return Instance(tuple(pts), tuple(ws))


def read(path) -> Instance:
    return loads(Path(path).read_text(encoding="utf-8"))


def write(inst: Instance, path) -> None:
    Path(path).write_text(dumps(inst), encoding="utf-8")
