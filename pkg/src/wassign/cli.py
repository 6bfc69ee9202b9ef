"""Command-line front end.

Exit codes: 0 success or feasible, 1 infeasible, 2 input error,
3 precondition error, 4 failed self-check of a printed result.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from dataclasses import dataclass
from typing import Optional

from . import instances
from .decision import decide
from .errors import InstanceFormatError, OracleScaleError, PreconditionError
from .geom import REL_TOL
from .optimizer import solve_exact, solve_parametric
from .oracle import brute_force_solve
from .render import render_svg
from .smallk import solve_small_k
from .wcenter import Instance, SolveResult, covering_radius, is_assignment, smallest_enclosing_circle

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_PRECONDITION, EXIT_SELFCHECK = 0, 1, 2, 3, 4
ALGOS = ("exact", "parametric", "smallk", "auto")


class SelfCheckError(RuntimeError):
    pass


@dataclass(frozen=True)
class RunReport:
    command: str
    result: SolveResult
    ms: float
    algo: str
    oracle_calls: Optional[int] = None


def fmt(x: float) -> str:
    return f"{x:.12g}"


def pick_algo(inst: Instance, algo: str) -> str:
    if algo != "auto":
        return algo
    if inst.k ** 3 <= inst.n and all(w <= 1.0 for w in inst.weights):
        return "smallk"
    return "parametric"


def run_solver(inst: Instance, algo: str) -> tuple[SolveResult, str, Optional[int]]:
    algo = pick_algo(inst, algo)
    calls = None
    if algo == "exact":
        res = solve_exact(inst)
    elif algo == "parametric":
        stats = {}
        res = solve_parametric(inst, stats)
        calls = stats["oracle_calls"]
    elif algo == "smallk":
        res = solve_small_k(inst)
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    return res, algo, calls


def check_solution(inst: Instance, res: SolveResult) -> None:
    if not is_assignment(inst, res.assignment):
        raise SelfCheckError("printed assignment is not a permutation of W plus unit weights")
    r = covering_radius(inst.points, res.assignment, res.center)
    if abs(r - res.radius) > REL_TOL * max(r, res.radius, 1e-300):
        raise SelfCheckError(f"printed radius {res.radius!r} but the center covers at {r!r}")


def format_result(res: SolveResult, machine: bool) -> list[str]:
    if machine:
        return [f"radius {res.radius!r}",
                f"center {res.center.x!r} {res.center.y!r}",
                "assignment " + " ".join(repr(w) for w in res.assignment),
                "determinators " + " ".join(str(i) for i in res.determinators)]
    return [f"radius: {fmt(res.radius)}",
            f"center: {fmt(res.center.x)} {fmt(res.center.y)}",
            "assignment: " + " ".join(fmt(w) for w in res.assignment),
            "determinators: " + " ".join(str(i) for i in res.determinators)]


# -- subcommands -----------------------------------------------------------

def cmd_solve(args, out) -> int:
    inst = instances.read(args.path)
    t = time.perf_counter()
    res, algo, calls = run_solver(inst, args.algo)
    ms = (time.perf_counter() - t) * 1000
    check_solution(inst, res)
    report = RunReport(f"solve {args.path} --algo {args.algo}", res, ms, algo, calls)
    lines = format_result(report.result, args.machine)
    if args.machine:
        lines += [f"algo {algo}", f"ms {ms!r}"]
        if calls is not None:
            lines.append(f"oracle_calls {calls}")
    else:
        extra = f", {calls} oracle calls" if calls is not None else ""
        lines += [f"algo: {algo} ({ms:.1f} ms{extra})"]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_decide(args, out) -> int:
    inst = instances.read(args.path)
    if not args.r > 0:
        raise PreconditionError("--r must be positive")
    wit = decide(inst, args.r)
    if wit is None:
        out.write(f"infeasible at r = {fmt(args.r)}\n")
        return EXIT_INFEASIBLE
    if not is_assignment(inst, wit.assignment):
        raise SelfCheckError("witness assignment is not a permutation of W plus unit weights")
    worst = covering_radius(inst.points, wit.assignment, wit.center)
    if worst > args.r * (1 + REL_TOL):
        raise SelfCheckError(f"witness covers at {worst!r} > {args.r!r}")
    if args.machine:
        lines = ["feasible",
                 f"center {wit.center.x!r} {wit.center.y!r}",
                 "assignment " + " ".join(repr(w) for w in wit.assignment),
                 f"max_weighted_distance {worst!r}"]
    else:
        lines = [f"feasible at r = {fmt(args.r)}",
                 f"center: {fmt(wit.center.x)} {fmt(wit.center.y)}",
                 "assignment: " + " ".join(fmt(w) for w in wit.assignment),
                 f"max weighted distance: {fmt(worst)}"]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    inst = instances.read(args.path)
    try:
        res = brute_force_solve(inst).best
    except OracleScaleError as e:
        raise PreconditionError(str(e)) from None
    check_solution(inst, res)
    out.write("\n".join(format_result(res, args.machine)) + "\n")
    return EXIT_OK


def cmd_gen(args, out) -> int:
    spec = instances.GeneratorSpec(args.kind, args.n, args.k, args.seed, args.weight_lo, args.weight_hi)
    out.write(instances.dumps(instances.generate(spec)))
    return EXIT_OK


def cmd_render(args, out) -> int:
    inst = instances.read(args.path)
    sol = None
    if args.solution:
        sol, _, _ = run_solver(inst, args.algo)
        check_solution(inst, sol)
    out.write(render_svg(inst, args.r, sol))
    return EXIT_OK


def cmd_count_centers(args, out) -> int:
    inst = instances.read(args.path)
    out.write(f"{instances.count_distinct_centers(inst)}\n")
    return EXIT_OK


def infeasible_radius(inst: Instance) -> float:
    """A radius every assignment exceeds, so decide sweeps every circle."""
    _, r = smallest_enclosing_circle(inst.points)
    return 0.95 * r / max(inst.w1)


def bench_rows(suite: str, sizes, k: int, seed: int, algos=("decide",), repeat: int = 3):
    """Yield ``(n, k, algo, ms, oracle_calls)``; ms is the best of ``repeat`` runs.

    Random instances of every size share one weight vector, so the timings
    follow n rather than how many circles happen to cross.
    """
    weights = instances.generate(instances.GeneratorSpec("random", k, k, seed, 0.2, 1.0)).weights
    for n in sizes:
        if suite == "random":
            pts = instances.generate(instances.GeneratorSpec("random", n, k, seed + n)).points
            inst = Instance(pts, weights)
        else:
            inst = instances.generate(instances.GeneratorSpec("lower-bound", n, k, seed))
        for algo in algos:
            best, calls = float("inf"), 0
            for _ in range(repeat):
                t = time.perf_counter()
                if algo == "decide":
                    decide(inst, infeasible_radius(inst))
                    calls = 1
                else:
                    _, _, c = run_solver(inst, algo)
                    calls = c if c is not None else 0
                best = min(best, (time.perf_counter() - t) * 1000)
            yield n, k, algo, best, calls


def cmd_bench(args, out) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "k", "algo", "ms", "oracle_calls"])
    for n, k, algo, ms, calls in bench_rows(args.suite, sizes, args.k, args.seed, algos, args.repeat):
        w.writerow([n, k, algo, f"{ms:.3f}", calls])
        out.flush()
    return EXIT_OK


# -- argument parsing ------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (gen, bench)")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--machine", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="wassign", description="Optimal assignment of weights for the weighted 1-center.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="minimum covering radius")
    s.add_argument("path")
    s.add_argument("--algo", choices=ALGOS, default="auto")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("decide", parents=[common], help="is radius R achievable?")
    s.add_argument("path")
    s.add_argument("--r", type=float, required=True)
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("oracle", parents=[common], help="brute force over all assignments")
    s.add_argument("path")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gen", parents=[common], help="generate an instance")
    s.add_argument("--kind", choices=("random", "lower-bound"), default="random")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--weight-lo", type=float, default=0.2)
    s.add_argument("--weight-hi", type=float, default=2.0)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("render", parents=[common], help="SVG of the instance")
    s.add_argument("path")
    s.add_argument("--r", type=float, help="draw the circles C(p, w*R)")
    s.add_argument("--solution", action="store_true", help="solve and mark the center")
    s.add_argument("--algo", choices=ALGOS, default="auto")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("bench", parents=[common], help="timing table as CSV")
    s.add_argument("--suite", choices=("random", "lower-bound"), default="random")
    s.add_argument("--sizes", default="50,100,200")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--algos", default="decide", help="comma list of decide, exact, parametric, smallk")
    s.add_argument("--repeat", type=int, default=3)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("count-centers", parents=[common], help="number of distinct weighted centers")
    s.add_argument("path")
    s.set_defaults(func=cmd_count_centers)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except InstanceFormatError as e:
        print(f"wassign: {getattr(args, 'path', '')}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"wassign: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (PreconditionError, OracleScaleError) as e:
        print(f"wassign: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SelfCheckError as e:
        print(f"wassign: self-check failed: {e}", file=sys.stderr)
        return EXIT_SELFCHECK
    except ValueError as e:
        print(f"wassign: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
