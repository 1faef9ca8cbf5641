"""Command-line entry point: JSON-configured solves, verification suites, and
benchmark scenarios with trace persistence.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 numerical error.
"""

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .analysis import (
    H_FLOOR,
    RateReport,
    bound_crossover,
    check_bound,
    contraction_violations,
    convex_rate_bound,
    linear_rate_factor,
    rate_exponent,
    rate_report,
    strongly_convex_rate_bound,
    trace_contraction_violations,
)
from .linalg import NumericalError, spectral_bounds
from .objectives import LeastSquares, Quadratic, finite_difference_gradient, gradient_bound_violations
from .sets import Box, GroupBall, LpBall, SchattenBall, verify_set_strong_convexity
from .solver import IterationRecord, SolverConfig, frank_wolfe

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

TRACE_COLUMNS = ("t", "f", "gap", "eta", "step_norm", "h", "grad_dual_norm")


def _fmt(value):
    # 17 significant digits: enough for exact float round-trips.
    return format(float(value), ".17g")


def write_trace(path, trace):
    """Write a solver trace as CSV; the h column is empty when unknown."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_COLUMNS)
        for rec in trace:
            writer.writerow(
                [
                    rec.t,
                    _fmt(rec.f_value),
                    _fmt(rec.duality_gap),
                    _fmt(rec.eta),
                    _fmt(rec.step_norm),
                    "" if rec.h is None else _fmt(rec.h),
                    _fmt(rec.grad_dual_norm),
                ]
            )


def read_trace(path):
    """Read a trace CSV back into IterationRecord rows, exactly."""
    records = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != TRACE_COLUMNS:
            raise ValueError(f"unexpected trace header {header!r}")
        for row in reader:
            records.append(
                IterationRecord(
                    t=int(row[0]),
                    f_value=float(row[1]),
                    duality_gap=float(row[2]),
                    eta=float(row[3]),
                    step_norm=float(row[4]),
                    grad_dual_norm=float(row[6]),
                    h=None if row[5] == "" else float(row[5]),
                )
            )
    return records


# ---------------------------------------------------------------------------
# problem configs


@dataclass
class Problem:
    tag: str
    objective: object
    ball: object
    solver: SolverConfig
    x_init: np.ndarray | None


def _ball_from_dict(d):
    family = d["family"]
    if family == "lp":
        return LpBall(p=float(d["p"]), r=float(d["r"]), n=int(d["n"]))
    if family == "schatten":
        return SchattenBall(p=float(d["p"]), r=float(d["r"]), m=int(d["m"]), n=int(d["n"]))
    if family == "group":
        return GroupBall(
            s=float(d["s"]), p=float(d["p"]), r=float(d["r"]), m=int(d["m"]), n=int(d["n"])
        )
    if family == "box":
        return Box(np.asarray(d["lo"], dtype=float), np.asarray(d["hi"], dtype=float))
    raise ValueError(f"unknown set family {family!r}")


def _objective_from_dict(d):
    kind = d["kind"]
    f_star = d.get("f_star")
    if kind == "quadratic":
        if "random" in d:
            rnd = d["random"]
            rng = np.random.default_rng(int(rnd["seed"]))
            dim = int(rnd["dim"])
            g = rng.standard_normal((dim, dim))
            q = g.T @ g
            x0 = rng.standard_normal(dim)
        else:
            q = np.asarray(d["Q"], dtype=float)
            x0 = np.asarray(d["x0"], dtype=float)
        return Quadratic(q, x0, c0=float(d.get("c0", 0.0)), f_star=f_star)
    if kind == "least_squares":
        if "random" in d:
            rnd = d["random"]
            rng = np.random.default_rng(int(rnd["seed"]))
            a = rng.standard_normal((int(rnd["m"]), int(rnd["n"])))
            b = rng.standard_normal(int(rnd["m"]))
        else:
            a = np.asarray(d["A"], dtype=float)
            b = np.asarray(d["b"], dtype=float)
        return LeastSquares(a, b, f_star=f_star)
    raise ValueError(f"unknown objective kind {kind!r}")


def _solver_from_dict(d):
    d = d or {}
    beta = d.get("beta_override")
    return SolverConfig(
        max_iters=int(d.get("max_iters", 1000)),
        gap_tolerance=float(d.get("gap_tolerance", 0.0)),
        beta_override=None if beta is None else float(beta),
        record_trace=bool(d.get("record_trace", True)),
        seed=int(d.get("seed", 0)),
    )


def problem_from_dict(d):
    x_init = d.get("x_init")
    return Problem(
        tag=str(d.get("tag", "")),
        objective=_objective_from_dict(d["objective"]),
        ball=_ball_from_dict(d["ball"]),
        solver=_solver_from_dict(d.get("solver")),
        x_init=None if x_init is None else np.asarray(x_init, dtype=float),
    )


def load_problem(path):
    with open(path) as fh:
        return problem_from_dict(json.load(fh))


def generate_problem(kind="quadratic", family="lp", seed=0, dim=8, rows=4, max_iters=1000, tag=None):
    """Build a config dict with explicit seeded-random payloads.

    Payloads are written out as number arrays (not regenerated on load), so a
    dump/load round trip reproduces the problem bit for bit; the seed is kept
    in the config for provenance.
    """
    rng = np.random.default_rng(seed)
    if family == "lp":
        ball = {"family": "lp", "p": 1.5, "r": 1.0, "n": dim}
        shape = (dim,)
    elif family == "box":
        ball = {"family": "box", "lo": [-1.0] * dim, "hi": [1.0] * dim}
        shape = (dim,)
    elif family == "schatten":
        ball = {"family": "schatten", "p": 1.5, "r": 1.0, "m": rows, "n": dim}
        shape = (rows, dim)
    elif family == "group":
        ball = {"family": "group", "s": 1.5, "p": 1.5, "r": 1.0, "m": rows, "n": dim}
        shape = (rows, dim)
    else:
        raise ValueError(f"unknown set family {family!r}")

    size = int(np.prod(shape))
    if kind == "quadratic":
        g = rng.standard_normal((size, size))
        objective = {
            "kind": "quadratic",
            "Q": (g.T @ g).tolist(),
            "x0": rng.standard_normal(shape).tolist(),
            "c0": 0.0,
        }
    elif kind == "least_squares":
        if len(shape) != 1:
            raise ValueError("least_squares objectives need a vector-domain set")
        m = max(1, dim // 3)
        objective = {
            "kind": "least_squares",
            "A": rng.standard_normal((m, dim)).tolist(),
            "b": rng.standard_normal(m).tolist(),
        }
    else:
        raise ValueError(f"unknown objective kind {kind!r}")

    return {
        "tag": tag or f"{kind}-{family}-seed{seed}",
        "generator_seed": seed,
        "objective": objective,
        "ball": ball,
        "solver": {"max_iters": max_iters, "gap_tolerance": 0.0, "record_trace": True, "seed": seed},
    }


# ---------------------------------------------------------------------------
# benchmark scenarios


@dataclass
class ScenarioOutcome:
    name: str
    result: object
    report: RateReport
    passed: bool
    details: dict


def run_sc_set_sc_obj():
    """Isotropic quadratic over the unit Euclidean ball in n = 50 with the
    optimum exactly on the boundary, where the gradient vanishes: the regime
    whose guarantee decays as 1/(t+2)^2. Exact constants: beta = alpha_obj =
    alpha_set = 1, diameter 2."""
    n = 50
    rng = np.random.default_rng(7)
    x0 = rng.standard_normal(n)
    x0 /= np.sqrt(x0 @ x0)
    objective = Quadratic(np.eye(n), x0, f_star=0.0)
    ball = LpBall(p=2.0, r=1.0, n=n)
    result = frank_wolfe(objective, ball, config=SolverConfig(max_iters=10_000))
    report = rate_report(
        result.trace,
        lambda t: strongly_convex_rate_bound(t, 1.0, 2.0, 1.0, 1.0),
        "strongly_convex_set",
        100,
        10_000,
    )
    passed = report.violations == 0 and report.exponent <= -1.5
    return ScenarioOutcome(
        name="sc_set_sc_obj",
        result=result,
        report=report,
        passed=passed,
        details={"exponent_limit": -1.5},
    )


def run_box_baseline():
    """Quadratic over the box [-1, 1]^2 with the optimum mid-edge: the
    classical zig-zag instance, rate 1/t and no faster."""
    objective = Quadratic(np.eye(2), np.array([1.0, 0.0]), f_star=0.0)
    ball = Box(np.array([-1.0, -1.0]), np.array([1.0, 1.0]))
    result = frank_wolfe(objective, ball, config=SolverConfig(max_iters=5000))
    diameter = 2.0 * math.sqrt(2.0)
    report = rate_report(
        result.trace, lambda t: convex_rate_bound(t, 1.0, diameter), "convex", 100, 5000
    )
    passed = report.violations == 0 and -1.4 <= report.exponent <= -0.7
    return ScenarioOutcome(
        name="box_baseline",
        result=result,
        report=report,
        passed=passed,
        details={"exponent_range": (-1.4, -0.7)},
    )


def run_grad_bounded():
    """Quadratic centered at distance 2 from the origin over the unit ball:
    the gradient norm stays >= 1 on the set, giving the geometric envelope
    h_1 * 0.875^(t-1)."""
    n = 50
    rng = np.random.default_rng(11)
    x0 = rng.standard_normal(n)
    x0 *= 2.0 / np.sqrt(x0 @ x0)
    f_star = 0.5  # optimum at x0/2 on the boundary: 0.5 * (2 - 1)^2
    objective = Quadratic(np.eye(n), x0, f_star=f_star)
    ball = LpBall(p=2.0, r=1.0, n=n)
    result = frank_wolfe(objective, ball, config=SolverConfig(max_iters=1000))
    factor = linear_rate_factor("gradient_bounded", beta=1.0, alpha_set=1.0, g=1.0)
    h1 = result.trace[1].h
    floor = H_FLOOR * (1.0 + abs(f_star))
    violations, max_ratio = check_bound(
        result.trace, lambda t: h1 * factor ** (t - 1), floor=floor
    )
    exponent = rate_exponent(result.trace, 1, 1000, floor=floor)
    report = RateReport(
        exponent=exponent,
        fit_window=(1, 1000),
        bound_name="gradient_bounded",
        violations=violations,
        max_violation_ratio=max_ratio,
    )
    passed = violations == 0
    return ScenarioOutcome(
        name="grad_bounded",
        result=result,
        report=report,
        passed=passed,
        details={"factor": factor, "h1": h1},
    )


def run_interior():
    """Quadratic with an interior optimum at distance 1/2 from the boundary
    of the unit ball: every iteration contracts the error by at least
    1 - r_int^2 / (4 * beta * D^2)."""
    n = 50
    rng = np.random.default_rng(13)
    x0 = rng.standard_normal(n)
    x0 *= 0.5 / np.sqrt(x0 @ x0)
    objective = Quadratic(np.eye(n), x0, f_star=0.0)
    ball = LpBall(p=2.0, r=1.0, n=n)
    result = frank_wolfe(objective, ball, config=SolverConfig(max_iters=3000))
    factor = linear_rate_factor("interior", beta=1.0, diameter=2.0, alpha_obj=1.0, r_int=0.5)
    h = [rec.h for rec in result.trace]
    violations = contraction_violations(h, factor, floor=H_FLOOR)
    exponent = rate_exponent(result.trace, 1, 3000, floor=H_FLOOR)
    report = RateReport(
        exponent=exponent,
        fit_window=(1, 3000),
        bound_name="interior",
        violations=violations,
        max_violation_ratio=0.0 if violations == 0 else float("nan"),
    )
    passed = violations == 0
    return ScenarioOutcome(
        name="interior",
        result=result,
        report=report,
        passed=passed,
        details={"factor": factor},
    )


def run_least_squares():
    """Under-determined least squares over an l1.5 ball: the objective is not
    strongly convex, yet the gradient lower bound holds with
    alpha = 4 * lambda_min(A A') and the 1/(t+2)^2 guarantee applies with the
    Euclidean-reference set constant. The optimal value comes from a reference
    run certified by its duality gap."""
    rng = np.random.default_rng(23)
    a = rng.standard_normal((10, 30))
    b = rng.standard_normal(10)
    ball = LpBall(p=1.5, r=1.0, n=30)

    lam_min = spectral_bounds(a @ a.T).lambda_min
    objective = LeastSquares(a, b)
    reference = frank_wolfe(
        objective,
        ball,
        config=SolverConfig(max_iters=200_000, gap_tolerance=1e-12, record_trace=False),
    )
    f_ref = reference.final_value
    eq2_bad = gradient_bound_violations(objective, ball, f_star=f_ref, samples=1000, seed=123)

    tracked = LeastSquares(a, b, f_star=f_ref)
    result = frank_wolfe(tracked, ball, config=SolverConfig(max_iters=10_000))
    beta = tracked.smoothness_constant()
    alpha_obj = tracked.grad_lower_bound_constant()
    alpha_set = ball.strong_convexity("euclidean").alpha
    floor = H_FLOOR * (1.0 + abs(f_ref))
    violations, max_ratio = check_bound(
        result.trace,
        lambda t: strongly_convex_rate_bound(t, beta, 2.0, alpha_obj, alpha_set),
        floor=floor,
    )
    exponent = rate_exponent(result.trace, 1, 10_000, floor=floor)
    report = RateReport(
        exponent=exponent,
        fit_window=(1, 10_000),
        bound_name="strongly_convex_set",
        violations=violations,
        max_violation_ratio=max_ratio,
    )
    passed = (
        lam_min > 1e-6
        and reference.terminated_by == "gap_tolerance"
        and eq2_bad == 0
        and violations == 0
    )
    return ScenarioOutcome(
        name="least_squares",
        result=result,
        report=report,
        passed=passed,
        details={
            "lambda_min_rows": lam_min,
            "f_reference": f_ref,
            "reference_terminated_by": reference.terminated_by,
            "gradient_bound_violations": eq2_bad,
            "alpha_obj": alpha_obj,
            "alpha_set": alpha_set,
            "beta": beta,
        },
    )


SCENARIOS = {
    "sc_set_sc_obj": run_sc_set_sc_obj,
    "box_baseline": run_box_baseline,
    "grad_bounded": run_grad_bounded,
    "interior": run_interior,
    "least_squares": run_least_squares,
}


# ---------------------------------------------------------------------------
# commands


def cmd_solve(config_path, out_path):
    try:
        problem = load_problem(config_path)
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: could not load problem config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = frank_wolfe(problem.objective, problem.ball, problem.x_init, problem.solver)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    write_trace(out_path, result.trace)
    tag = f" [{problem.tag}]" if problem.tag else ""
    print(
        f"solve{tag}: f = {_fmt(result.final_value)}, gap = {_fmt(result.final_gap)}, "
        f"iterations = {result.iterations_used}, stopped by {result.terminated_by}"
    )
    print(f"trace written to {out_path}")
    return EXIT_OK


def _verify_sets(args):
    ball = _ball_from_args(args)
    if args.alpha is not None:
        alpha = args.alpha
    else:
        alpha = ball.strong_convexity(args.norm).alpha
    bad = verify_set_strong_convexity(
        ball, alpha, samples=args.samples, tol=1e-9, seed=args.seed, reference=args.norm
    )
    print(f"set curvature sampling [{args.family}, alpha={alpha:.6g}, {args.norm}]: "
          f"{bad} violations in {args.samples} samples")
    return bad


def _verify_lmo(args):
    ball = _ball_from_args(args)
    rng = np.random.default_rng(args.seed)
    feasible = ball.sample(rng, args.points)
    flat = feasible.reshape(args.points, -1)
    bad = 0
    for _ in range(args.samples):
        c = rng.standard_normal(ball.domain_shape)
        x = ball.lmo(c)
        val = float(np.vdot(x, c))
        if not isinstance(ball, Box):
            target = -ball.r * ball.dual_norm(c)
            if abs(val - target) > 1e-8 * (1.0 + abs(target)):
                bad += 1
            if abs(ball.norm(x) - ball.r) > 1e-9 * ball.r:
                bad += 1
        sampled = flat @ c.ravel()
        if np.any(val > sampled + 1e-8 * (1.0 + np.abs(sampled))):
            bad += 1
    print(f"oracle checks [{args.family}]: {bad} violations over {args.samples} objectives "
          f"x {args.points} feasible points")
    return bad


def _verify_bounds(args):
    bad = 0
    # exponent fit must be exact on pure power laws
    for expo in (-0.5, -1.0, -2.0, -3.0):
        trace = [
            IterationRecord(t=t, f_value=0.0, duality_gap=0.0, eta=0.0, step_norm=0.0,
                            grad_dual_norm=0.0, h=100.0 * t**expo)
            for t in range(1, 200)
        ]
        if abs(rate_exponent(trace, 1, 199) - expo) > 1e-9:
            bad += 1
    # the quadratic-decay bound must eventually undercut the linear-decay one
    try:
        bound_crossover(beta=1.0, diameter=2.0, alpha_obj=1.0, alpha_set=1.0)
    except ValueError:
        bad += 1
    # a small end-to-end run against both bounds and the contraction law
    rng = np.random.default_rng(args.seed)
    x0 = rng.standard_normal(8)
    x0 /= np.sqrt(x0 @ x0)
    objective = Quadratic(np.eye(8), x0, f_star=0.0)
    ball = LpBall(p=2.0, r=1.0, n=8)
    result = frank_wolfe(objective, ball, config=SolverConfig(max_iters=500))
    v1, _ = check_bound(result.trace, lambda t: convex_rate_bound(t, 1.0, 2.0))
    v2, _ = check_bound(result.trace, lambda t: strongly_convex_rate_bound(t, 1.0, 2.0, 1.0, 1.0))
    v3 = trace_contraction_violations(result.trace, alpha_set=1.0, beta=1.0)
    bad += v1 + v2 + v3
    print(f"bound checks: {bad} violations")
    return bad


def _verify_gradients(args):
    rng = np.random.default_rng(args.seed)
    g = rng.standard_normal((6, 6))
    objectives = [
        Quadratic(g.T @ g, rng.standard_normal(6)),
        LeastSquares(rng.standard_normal((3, 9)), rng.standard_normal(3)),
    ]
    bad = 0
    for obj in objectives:
        for _ in range(args.samples):
            x = rng.standard_normal(obj.domain_shape)
            exact = obj.gradient(x)
            approx = finite_difference_gradient(obj, x)
            scale = np.sqrt(np.vdot(exact, exact))
            err = np.sqrt(np.vdot(exact - approx, exact - approx))
            if err > 1e-6 * max(1.0, scale):
                bad += 1
    print(f"gradient checks: {bad} violations")
    return bad


def _ball_from_args(args):
    if args.family == "lp":
        return LpBall(p=args.p, r=args.r, n=args.n)
    if args.family == "schatten":
        return SchattenBall(p=args.p, r=args.r, m=args.m, n=args.n)
    if args.family == "group":
        return GroupBall(s=args.s, p=args.p, r=args.r, m=args.m, n=args.n)
    if args.family == "box":
        return Box(np.full(args.n, -args.r), np.full(args.n, args.r))
    raise ValueError(f"unknown set family {args.family!r}")


def cmd_verify(args):
    suites = {
        "sets": _verify_sets,
        "lmo": _verify_lmo,
        "bounds": _verify_bounds,
        "gradients": _verify_gradients,
    }
    try:
        bad = suites[args.suite](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK if bad == 0 else EXIT_FAIL


def cmd_bench(scenario, out_dir):
    try:
        outcome = SCENARIOS[scenario]()
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    os.makedirs(out_dir, exist_ok=True)
    trace_path = os.path.join(out_dir, f"{scenario}_trace.csv")
    report_path = os.path.join(out_dir, f"{scenario}_report.txt")
    write_trace(trace_path, outcome.result.trace)
    rep = outcome.report
    lines = [
        f"scenario: {scenario}",
        f"bound: {rep.bound_name}",
        f"violations: {rep.violations}",
        f"max_violation_ratio: {_fmt(rep.max_violation_ratio)}",
        f"exponent: {_fmt(rep.exponent)}",
        f"fit_window: [{rep.fit_window[0]}, {rep.fit_window[1]}]",
    ]
    for key, value in outcome.details.items():
        lines.append(f"{key}: {value}")
    lines.append(f"status: {'PASS' if outcome.passed else 'FAIL'}")
    with open(report_path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print("\n".join(lines))
    print(f"trace written to {trace_path}")
    return EXIT_OK if outcome.passed else EXIT_FAIL


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="condgrad",
        description="Projection-free optimization over norm balls, with rate verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run a solve from a JSON problem config")
    p_solve.add_argument("config", help="path to the JSON problem config")
    p_solve.add_argument("out", help="path for the CSV trace")

    p_verify = sub.add_parser("verify", help="run a sampling verification suite")
    p_verify.add_argument("suite", choices=("sets", "lmo", "bounds", "gradients"))
    p_verify.add_argument("--family", default="lp", choices=("lp", "schatten", "group", "box"))
    p_verify.add_argument("--p", type=float, default=1.5)
    p_verify.add_argument("--s", type=float, default=1.5)
    p_verify.add_argument("--r", type=float, default=1.0)
    p_verify.add_argument("--n", type=int, default=8)
    p_verify.add_argument("--m", type=int, default=4)
    p_verify.add_argument("--alpha", type=float, default=None,
                          help="curvature constant to test (default: the family's formula)")
    p_verify.add_argument("--norm", default="own", choices=("own", "euclidean"))
    p_verify.add_argument("--samples", type=int, default=10_000)
    p_verify.add_argument("--points", type=int, default=10_000,
                          help="feasible points per objective in the lmo suite")
    p_verify.add_argument("--seed", type=int, default=0)

    p_bench = sub.add_parser("bench", help="run a benchmark scenario and write its report")
    p_bench.add_argument("scenario", choices=sorted(SCENARIOS))
    p_bench.add_argument("out_dir")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    if args.command == "solve":
        return cmd_solve(args.config, args.out)
    if args.command == "verify":
        return cmd_verify(args)
    return cmd_bench(args.scenario, args.out_dir)


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
