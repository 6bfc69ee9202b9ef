"""Acceptance suite: one PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -s -q``.
"""
import bisect
import math
import random
import time
from functools import cache

import pytest

from wassign.cli import bench_rows
from wassign.decision import decide, decision_pairs, naive_feasible, sweep_intervals
from wassign.instances import GeneratorSpec, count_distinct_centers, gen_lower_bound, generate
from wassign.optimizer import candidate_radii, multilist_interval_search, solve_exact, solve_parametric
from wassign.oracle import brute_force_solve
from wassign.smallk import solve_small_k
from wassign.wcenter import Instance

SEED = 20240601


def report(capsys, num, name, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {num}: {name} ({detail})")


@cache
def suite1():
    rng = random.Random(SEED)
    out = []
    for t in range(200):
        n = rng.randint(2, 7)
        k = rng.randint(1, min(3, n))
        out.append(generate(GeneratorSpec("random", n, k, seed=SEED + t, weight_lo=0.2, weight_hi=2.0)))
    return tuple(out)


@cache
def suite2():
    rng = random.Random(SEED + 1)
    out = []
    for t in range(200):
        n = rng.randint(2, 12)
        k = rng.randint(1, min(3, n))
        inst = generate(GeneratorSpec("random", n, k, seed=SEED + 1000 + t, weight_lo=1e-3, weight_hi=1.0))
        if t % 5 == 0:
            # weights exactly 1 exercise the unit-weight handling
            inst = Instance(inst.points, (1.0,) + inst.weights[1:])
        out.append(inst)
    return tuple(out)


@cache
def optimum(inst):
    return solve_exact(inst).radius


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def test_criterion_1_oracle_equivalence(capsys):
    t = time.perf_counter()
    bad = []
    for idx, inst in enumerate(suite1()):
        ref = brute_force_solve(inst).best.radius
        ex = solve_exact(inst).radius
        par = solve_parametric(inst).radius
        if rel(ex, ref) > 1e-6 or rel(par, ref) > 1e-6:
            bad.append(idx)
    secs = time.perf_counter() - t
    ok = not bad and secs < 60
    report(capsys, 1, "exact and parametric match brute force", ok,
           f"{len(bad)} mismatches of 200, {secs:.1f} s, limit 60 s")
    assert ok


def test_criterion_2_small_k_equivalence(capsys):
    t = time.perf_counter()
    radii = [solve_small_k(inst).radius for inst in suite2()]
    secs = time.perf_counter() - t
    bad = [i for i, (r, inst) in enumerate(zip(radii, suite2())) if rel(r, optimum(inst)) > 1e-9]
    ok = not bad and secs < 120
    report(capsys, 2, "small-k matches exact", ok,
           f"{len(bad)} mismatches of 200, {secs:.1f} s, limit 120 s")
    assert ok


def near_tie(inst, r_star):
    # a second candidate radius within 1e-4 of the optimum
    radii = sorted(e.r_value for e in candidate_radii(inst))
    i = bisect.bisect_left(radii, r_star * (1 - 1e-4))
    return any(rel(r, r_star) > 1e-9 for r in radii[i:bisect.bisect_right(radii, r_star * (1 + 1e-4))])


def test_criterion_3_decision_bracketing(capsys):
    bad, excluded, checked = [], [], 0
    for name, suite in (("suite1", suite1()), ("suite2", suite2())):
        for idx, inst in enumerate(suite):
            r_star = optimum(inst)
            if r_star == 0:
                excluded.append((name, idx, "all points coincide, r* = 0"))
                continue
            checked += 1
            if decide(inst, r_star * 1.000001) is None or decide(inst, r_star * 0.9999) is not None:
                if near_tie(inst, r_star):
                    checked -= 1
                    excluded.append((name, idx, "degenerate optimum, candidate tie within 1e-4"))
                else:
                    bad.append((name, idx))
    with capsys.disabled():
        for name, idx, why in excluded:
            print(f"\n  excluded {name}[{idx}]: {why}", end="")
    ok = not bad
    report(capsys, 3, "decide brackets r*", ok,
           f"{len(bad)} failures over {checked} instances, {len(excluded)} excluded")
    assert ok


def test_criterion_4_sweep_correctness(capsys):
    rng = random.Random(SEED + 4)
    mismatches = intervals = 0
    for _ in range(50):
        n = rng.randint(2, 12)
        k = rng.randint(1, min(4, n))
        inst = Instance(tuple((rng.random(), rng.random()) for _ in range(n)),
                        tuple(rng.uniform(0.2, 2.0) for _ in range(k)))
        for _ in range(5):
            r = rng.uniform(0.05, 1.0)
            for pair in decision_pairs(inst):
                for iv, ok in sweep_intervals(pair, r, inst):
                    intervals += 1
                    mismatches += ok != naive_feasible(pair, r, inst, iv.representative)
    ok = mismatches == 0
    report(capsys, 4, "incremental sweep matches from-scratch test", ok,
           f"{mismatches} mismatches over {intervals} intervals")
    assert ok


def test_criterion_5_candidate_completeness(capsys):
    missing = []
    for idx, inst in enumerate(suite1()):
        r_star = brute_force_solve(inst).best.radius
        if r_star == 0:
            continue
        radii = [e.r_value for e in candidate_radii(inst)]
        if not any(rel(r, r_star) <= 1e-9 for r in radii):
            missing.append(idx)
    ok = not missing
    report(capsys, 5, "r* is a candidate event radius", ok, f"{len(missing)} misses of 200")
    assert ok


def test_criterion_6_center_count_growth(capsys):
    t = time.perf_counter()
    c8 = count_distinct_centers(gen_lower_bound(8, 2))
    c16 = count_distinct_centers(gen_lower_bound(16, 2))
    secs = time.perf_counter() - t
    ratio = c16 / c8
    ok = 4 <= ratio <= 16 and secs < 60
    report(capsys, 6, "distinct centers grow from n=8 to n=16", ok,
           f"{c8} -> {c16}, ratio {ratio:.2f}, target [4, 16], {secs:.1f} s")
    assert ok


def test_criterion_7_multilist(capsys):
    rng = random.Random(SEED + 7)
    bad = over = 0
    for _ in range(100):
        lists = [sorted(rng.uniform(-100, 100) for _ in range(rng.randint(0, 40)))
                 for _ in range(rng.randint(1, 12))]
        vals = sorted(v for lst in lists for v in lst)
        t = rng.uniform(-110, 110)
        calls = 0

        def oracle(x):
            nonlocal calls
            calls += 1
            return x >= t

        got = multilist_interval_search(lists, oracle)
        i = bisect.bisect_left(vals, t)
        want = (vals[i - 1] if i else -math.inf, vals[i] if i < len(vals) else math.inf)
        bad += (got.lo, got.hi) != want
        over += calls > 4 * math.log2(max(len(vals), 1)) + 8
    ok = bad == 0 and over == 0
    report(capsys, 7, "multilist search matches flatten-and-search", ok,
           f"{bad} wrong intervals, {over} over the call bound")
    assert ok


def test_criterion_8_scaling(capsys):
    t = time.perf_counter()
    rows = list(bench_rows("random", (50, 100, 200), 2, SEED))
    secs = time.perf_counter() - t
    ms = [row[3] for row in rows]
    factors = [b / a for a, b in zip(ms, ms[1:])]
    ok = all(2.5 <= f <= 6.5 for f in factors) and secs < 300
    report(capsys, 8, "decide time per doubling of n", ok,
           f"ms {', '.join(f'{m:.0f}' for m in ms)}, factors {', '.join(f'{f:.2f}' for f in factors)}, "
           f"target [2.5, 6.5], {secs:.1f} s")
    assert ok
