"""Command-line interface.

Exit codes: 0 on success or when a solution subrange is found, 1 when no
subrange reaches its target energy, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

import numpy as np

from . import io
from .errors import SubquboError
from .export import export_sampler_script
from .generate import DEFAULT_DIMENSION, DEFAULT_ENTRY_RANGE, DEFAULT_X_RANGE, gen_random
from .problem_model import BinaryEncoding, SubrangeSpec, decode
from .qubo_builder import build_qubo, effective_rhs
from .solvers import AnnealSchedule, brute_force_solve, simulated_anneal
from .subrange_search import SOLVERS, is_hit, solve_subrange, sweep, verify_solution

EXIT_OK, EXIT_NO_HIT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _add_encoding(p: argparse.ArgumentParser) -> None:
    p.add_argument("--qubits-per-var", type=int, help="override the file's encoding with lo=0, hi=QUBITS-1")


def _add_solver(p: argparse.ArgumentParser) -> None:
    p.add_argument("--solver", choices=SOLVERS, default="brute")
    p.add_argument("--reads", type=int, default=1000, help="simulated annealing reads")
    p.add_argument("--sweeps", type=int, default=200, help="sweeps per read")
    p.add_argument("--seed", type=int, default=0)


def _schedule(args) -> AnnealSchedule:
    return AnnealSchedule(num_reads=args.reads, sweeps_per_read=args.sweeps, seed=args.seed)


def _problem(args) -> io.ProblemFile:
    problem = io.read_problem_file(args.problem)
    if args.qubits_per_var is not None:
        problem = io.ProblemFile(
            problem.system, BinaryEncoding.integer(args.qubits_per_var), problem.s, problem.T
        )
    return problem


def _emit(data: dict, args) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        for key, value in data.items():
            print(f"{key}: {value}")


def cmd_gen(args) -> int:
    encoding = BinaryEncoding.integer(args.qubits_per_var)
    width = encoding.subrange_width
    lo, hi = args.x_range
    s = args.subrange_bound or max(1, -(lo // width), hi // width + 1)
    system, x = gen_random(args.n, tuple(args.entry_range), (lo, hi), args.seed, args.invertible)
    problem = io.ProblemFile(system, encoding, s=s)
    if args.output:
        io.save_problem(args.output, problem)
        _emit({"output": args.output, "n": args.n, "s": s, "ground_truth_x": x.tolist()}, args)
    else:
        print(json.dumps(problem.to_dict(), indent=2))
    return EXIT_OK


def cmd_build(args) -> int:
    problem = _problem(args)
    spec = problem.subrange_spec()
    if spec is None:
        spec = SubrangeSpec.zero(problem.n, problem.encoding) if problem.encoding.supports_subranges else None
    c = problem.system.b if spec is None else effective_rhs(problem.system, spec).c
    q = build_qubo(problem.system.A, c, problem.encoding)
    target = -float(c @ c)
    if args.output:
        io.save_qubo(args.output, q)
    if args.json:
        d = io.qubo_to_dict(q)
        d.update(c=io._nums(c), target_energy=target)
        print(json.dumps(d, indent=2))
    elif not args.output:
        with np.printoptions(threshold=sys.maxsize, linewidth=200):
            print(q.entries)
        print(f"target_energy: {target!r}")
    return EXIT_OK


def cmd_solve(args) -> int:
    if args.qubo:
        q = io.load_qubo(args.qubo)
        if args.solver == "brute":
            best, minimizers = brute_force_solve(q)
        else:
            samples = simulated_anneal(q, _schedule(args))
            best, minimizers = samples.lowest_energy, [r.assignment for r in samples.ground_records()]
        _emit({"best_energy": best, "minimizers": [list(m) for m in minimizers]}, args)
        return EXIT_OK
    if not args.problem:
        raise UsageError("solve needs a problem file or --qubo")
    problem = _problem(args)
    if args.translation is not None:
        spec = SubrangeSpec.from_translation(args.translation, problem.encoding)
    else:
        spec = problem.subrange_spec() or SubrangeSpec.zero(problem.n, problem.encoding)
    result = solve_subrange(problem.system, spec, problem.encoding, args.solver, _schedule(args))
    x = decode(result.best_assignment, problem.encoding, spec)
    _emit(
        {
            "T": io._nums(spec.T),
            "target_energy": result.target_energy,
            "best_energy": result.best_energy,
            "hit": result.hit,
            "x": io._nums(x),
        },
        args,
    )
    return EXIT_OK if result.hit else EXIT_NO_HIT


def cmd_sweep(args) -> int:
    problem = _problem(args)
    s = args.subrange_bound or problem.s
    if s is None:
        raise UsageError("sweep needs --subrange-bound or a problem file with subrange.s")
    report = sweep(
        problem.system,
        problem.encoding,
        s,
        solver=args.solver,
        stop_on_hit=args.stop_on_hit,
        schedule=_schedule(args),
        workers=args.workers,
    )
    if args.report:
        io.save_report(args.report, report)
    if args.json:
        print(json.dumps(io.report_to_dict(report), indent=2))
    else:
        print(f"subranges searched: {len(report.per_subrange)}")
        print(f"hits: {report.hits}")
        for k, x in report.solutions:
            r = report.per_subrange[k]
            print(f"solution T={io._nums(r.T)} energy={r.best_energy!r} x={io._nums(x)}")
        if report.approximate is not None:
            r = report.per_subrange[report.approximate]
            print(f"no hit; closest subrange T={io._nums(r.T)} gap={r.gap!r}")
    return EXIT_OK if report.found else EXIT_NO_HIT


def cmd_export(args) -> int:
    if args.qubo:
        q = io.load_qubo(args.qubo)
    elif args.problem:
        problem = _problem(args)
        spec = problem.subrange_spec()
        c = problem.system.b if spec is None else effective_rhs(problem.system, spec).c
        q = build_qubo(problem.system.A, c, problem.encoding)
    else:
        raise UsageError("export needs a problem file or --qubo")
    script = export_sampler_script(q, args.reads)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(script)
    else:
        sys.stdout.write(script)
    return EXIT_OK


def cmd_verify(args) -> int:
    problem = _problem(args)
    residual = verify_solution(problem.system, args.x)
    _emit({"residual": residual}, args)
    return EXIT_OK if is_hit(residual, 0.0, problem.system.is_integral) else EXIT_NO_HIT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subqubo", description="Subrange QUBO formulation and search for linear systems."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a random integer instance with known solution")
    p.add_argument("-n", "--n", type=int, default=DEFAULT_DIMENSION)
    p.add_argument("--entry-range", type=int, nargs=2, default=list(DEFAULT_ENTRY_RANGE), metavar=("LO", "HI"))
    p.add_argument("--x-range", type=int, nargs=2, default=list(DEFAULT_X_RANGE), metavar=("LO", "HI"))
    p.add_argument("--qubits-per-var", type=int, default=2)
    p.add_argument("--subrange-bound", type=int, help="default: smallest s covering --x-range")
    p.add_argument("--seed", type=int)
    p.add_argument("--invertible", action="store_true", help="redraw A until nonsingular")
    p.add_argument("-o", "--output")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("build", help="build the QUBO of a problem file's subrange")
    p.add_argument("problem")
    _add_encoding(p)
    p.add_argument("-o", "--output", help="save the QUBO as JSON")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("solve", help="solve one subrange or a raw QUBO file")
    p.add_argument("problem", nargs="?")
    p.add_argument("--qubo", help="raw QUBO JSON file instead of a problem")
    p.add_argument("--translation", type=float, nargs="+", metavar="T", help="explicit translation vector")
    _add_encoding(p)
    _add_solver(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="search every subrange for the solution")
    p.add_argument("problem")
    _add_encoding(p)
    p.add_argument("--subrange-bound", type=int)
    _add_solver(p)
    p.add_argument("--stop-on-hit", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--report", help="write the JSON sweep report here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export", help="emit a D-Wave sample_qubo script")
    p.add_argument("problem", nargs="?")
    p.add_argument("--qubo")
    _add_encoding(p)
    p.add_argument("--reads", type=int, default=1000)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", help="residual ||Ax - b||^2 of a candidate solution")
    p.add_argument("problem")
    p.add_argument("--x", type=float, nargs="+", required=True)
    _add_encoding(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    # numba falls back to another threading layer when TBB is too old
    warnings.filterwarnings("ignore", message="The TBB threading layer")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SubquboError, UsageError, OSError, ValueError) as exc:
        print(f"subqubo {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
