"""Command-line front end.

Subcommands:

* ``run``          solve an instance and write the trajectory
* ``verify``       check a recorded trajectory and write a rate report
* ``figure-data``  export sampled ``x, f, g, h`` curves of the slow instance

Exit codes are the only success/failure channel: 0 success, 1 an
inequality check failed (``verify``), 2 invalid arguments or a parse
failure, 3 solver failure, 4 unwritable output path.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

import numpy as np

from . import io
from .adversarial import build_adversarial, figure_data
from .baselines import GdConfig, run_steepest_descent
from .core import DcError, as_point, make_quadratic_dc
from .rates import build_rate_report
from .solver import SolverConfig, SubproblemError, run_dca

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_SPEC = 2
EXIT_SOLVER_FAILURE = 3
EXIT_UNWRITABLE = 4


class SpecError(DcError):
    """Inconsistent or incomplete command arguments."""


def _vector(text: str) -> np.ndarray:
    try:
        return np.array([float(p) for p in text.split(",")], dtype=float)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad vector {text!r}: {exc}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dclab",
        description="Difference-of-convex optimization laboratory")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a solver and write the trajectory")
    run.add_argument("--problem", choices=["adversarial", "quadratic"],
                     required=True)
    run.add_argument("--delta", type=float,
                     help="rate parameter of the adversarial problem")
    run.add_argument("--horizon", type=int,
                     help="knot horizon of the adversarial problem (default 1000)")
    run.add_argument("--b", type=_vector,
                     help="shift vector of the quadratic problem, comma-separated")
    run.add_argument("--x0", type=_vector,
                     help="starting point, comma-separated (default zeros)")
    run.add_argument("--eps", type=float, default=1e-9,
                     help="gradient-norm stopping tolerance")
    run.add_argument("--max-iter", type=int, default=1000)
    run.add_argument("--method", choices=["dca", "gd"], default="dca")
    run.add_argument("--gd-step", type=float,
                     help="step size for --method gd (default from the "
                          "instance's smoothness constants)")
    run.add_argument("--subproblem-tol", type=float, default=1e-12)
    run.add_argument("--out", required=True, help="output trajectory path")
    run.add_argument("--format", choices=["csv", "json"], default="csv")

    ver = sub.add_parser("verify",
                         help="check inequalities on a recorded trajectory")
    ver.add_argument("trajectory", help="trajectory file (csv or json)")
    ver.add_argument("--mu", type=float, required=True,
                     help="strong-convexity constant of g")
    ver.add_argument("--lipschitz-h", type=float, required=True,
                     help="Lipschitz constant of grad h")
    ver.add_argument("--delta", type=float,
                     help="include the rate-compensated gradient table")
    ver.add_argument("--eps", type=float,
                     help="report iterations to this tolerance")
    ver.add_argument("--window-shift", type=int, choices=[0, 1], default=0,
                     help="averaging window variant of the averaged-gradient "
                          "bound (1 = the window the descent argument proves)")
    ver.add_argument("--descent-pairs", type=int, default=1000)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--out", help="report path (default <trajectory>.report.<fmt>)")
    ver.add_argument("--format", choices=["json", "csv"], default="json")

    fig = sub.add_parser("figure-data",
                         help="sample x, f, g, h curves of the slow instance")
    fig.add_argument("--delta", type=float, required=True)
    fig.add_argument("--n-knots", type=int, default=25)
    fig.add_argument("--samples-per-interval", type=int, default=8)
    fig.add_argument("--out", required=True)
    return p


def _build_run_instance(args):
    if args.problem == "adversarial":
        if args.delta is None:
            raise SpecError("--problem adversarial requires --delta")
        if args.b is not None:
            raise SpecError("--b applies only to --problem quadratic")
        horizon = 1000 if args.horizon is None else args.horizon
        return build_adversarial(args.delta, horizon).dc
    if args.b is None:
        raise SpecError("--problem quadratic requires --b")
    if args.delta is not None or args.horizon is not None:
        raise SpecError("--delta/--horizon apply only to --problem adversarial")
    return make_quadratic_dc(args.b)


def _resolve_x0(args, dim: int) -> np.ndarray:
    if args.x0 is None:
        return np.zeros(dim)
    x0 = as_point(args.x0)
    if x0.size == 1 and dim > 1:
        return np.full(dim, x0[0])
    if x0.size != dim:
        raise SpecError(f"--x0 has dimension {x0.size}, problem has {dim}")
    return x0


def cmd_run(args) -> int:
    try:
        if args.method == "dca" and args.gd_step is not None:
            raise SpecError("--gd-step applies only to --method gd")
        inst = _build_run_instance(args)
        x0 = _resolve_x0(args, inst.dim)
        if not args.eps > 0:
            raise SpecError(f"--eps must be positive, got {args.eps}")
        if args.max_iter < 1:
            raise SpecError(f"--max-iter must be at least 1, got {args.max_iter}")
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_SPEC

    try:
        if args.method == "dca":
            cfg = SolverConfig(epsilon=args.eps, max_iter=args.max_iter,
                               subproblem_tol=args.subproblem_tol)
            traj = run_dca(inst, x0, cfg)
        else:
            cfg = GdConfig(epsilon=args.eps, max_iter=args.max_iter,
                           step_size=args.gd_step)
            traj = run_steepest_descent(inst, x0, cfg)
    except SubproblemError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER_FAILURE
    except DcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_SPEC

    try:
        if args.format == "json":
            io.write_trajectory_json(traj, args.out)
        else:
            io.write_trajectory_csv(traj, args.out)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE
    print(f"wrote {len(traj)} records to {args.out} "
          f"(terminated_by={traj.terminated_by.value})")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        traj = io.read_trajectory(args.trajectory)
    except io.TrajectoryParseError as exc:
        print(f"parse error in {args.trajectory}: {exc}", file=sys.stderr)
        return EXIT_BAD_SPEC
    except OSError as exc:
        print(f"cannot read {args.trajectory}: {exc}", file=sys.stderr)
        return EXIT_BAD_SPEC

    report = build_rate_report(traj, args.mu, args.lipschitz_h,
                               delta=args.delta, eps=args.eps,
                               n_descent_pairs=args.descent_pairs,
                               seed=args.seed, shift=args.window_shift)
    out = args.out or f"{args.trajectory}.report.{args.format}"
    try:
        if args.format == "csv":
            io.write_rate_report_csv(report, out)
        else:
            io.write_rate_report_json(report, out)
    except OSError as exc:
        print(f"cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE

    if report.all_passed:
        print(f"all checks passed ({len(report.per_k)} averaged-bound, "
              f"{len(report.descent_sum_checks)} descent-sum); report: {out}")
        return EXIT_OK
    if report.monotone_violation_k is not None:
        print(f"FAIL: f increased at k={report.monotone_violation_k}")
    bad = report.failing_ks()
    if bad:
        print(f"FAIL: averaged-gradient bound at k={bad}")
    bad_pairs = [(c.j, c.k) for c in report.descent_sum_checks if not c.passed]
    if bad_pairs:
        print(f"FAIL: descent-sum at (j, k)={bad_pairs}")
    return EXIT_CHECK_FAILED


def cmd_figure_data(args) -> int:
    try:
        x, f, g, h = figure_data(args.delta, args.n_knots,
                                 args.samples_per_interval)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_SPEC
    try:
        io.write_figure_data_csv(x, f, g, h, args.out)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE
    print(f"wrote {x.size} rows to {args.out}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    if args.command == "verify":
        return cmd_verify(args)
    return cmd_figure_data(args)


def entrypoint() -> None:
    raise SystemExit(main())
