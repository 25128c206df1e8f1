"""
Command-line interface.

    apexlp generate --kind model --n 5 --out p.lpf
    apexlp solve p.lpf --trace trace.csv
    apexlp oracle p.lpf
    apexlp bench --n 2000 --workers 1,2,4,8 --sweeps 200 --out bench.csv

Exit codes: 0 success, 1 runtime or solver failure, 2 usage error.
"""
import argparse
import sys

import numpy as np

from . import io
from .bench import DeterminismError, run_bench
from .errors import ApexError, SolveFailure
from .generator import model_problem, unit_hypercube
from .model import SolverParams
from .oracle import simplex_solve
from .target import solve


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _positive_float(s):
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None
    if not (v > 0 and np.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {s}")
    return v


def _positive_int(s):
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {s}")
    return v


def _workers_list(s):
    try:
        vals = [int(p) for p in s.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError(f"worker counts must be >= 1, got {s!r}")
    return vals


def _format_vector(x, limit=10):
    if x.size <= limit:
        return "[" + ", ".join(f"{v:.10g}" for v in x) + "]"
    head = ", ".join(f"{v:.10g}" for v in x[:3])
    tail = ", ".join(f"{v:.10g}" for v in x[-3:])
    return f"[{head}, ..., {tail}] (n={x.size})"


def build_parser():
    p = _Parser(prog="apexlp", description="Apex method LP toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a test problem in LPF1 format")
    g.add_argument("--kind", choices=["model", "hypercube"], default="model")
    g.add_argument("--n", type=_positive_int, required=True)
    g.add_argument("--out", required=True)

    s = sub.add_parser("solve", help="solve an LPF1 problem with the apex method")
    s.add_argument("problem")
    s.add_argument("--sigma", type=_positive_float)
    s.add_argument("--delta", type=_positive_float)
    s.add_argument("--mu", type=_positive_float, default=1.0)
    s.add_argument("--eps-proj", type=_positive_float, default=1e-9)
    s.add_argument("--eps-gamma", type=_positive_float, default=1e-9)
    s.add_argument("--eps-feas", type=_positive_float, default=1e-7)
    s.add_argument("--workers", type=_positive_int, default=1)
    s.add_argument("--max-iters", type=_positive_int, default=10**5)
    s.add_argument("--trace", help="write the Target trace as CSV")

    o = sub.add_parser("oracle", help="solve an LPF1 problem with the simplex oracle")
    o.add_argument("problem")

    b = sub.add_parser("bench", help="time the displacement kernel across worker counts")
    b.add_argument("--n", type=_positive_int, default=2000)
    b.add_argument("--workers", type=_workers_list, default=[1, 2, 4, 8])
    b.add_argument("--sweeps", type=_positive_int, default=200)
    b.add_argument("--repeats", type=_positive_int, default=1)
    b.add_argument("--out", required=True)
    return p


def cmd_generate(args):
    if args.kind == "model":
        if args.n < 2:
            print("apexlp generate: error: --kind model requires --n >= 2", file=sys.stderr)
            return 2
        inst = model_problem(args.n)
    else:
        inst = unit_hypercube(args.n)
    try:
        io.write_problem(inst.problem, args.out)
    except OSError as exc:
        print(f"apexlp generate: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}: n={inst.problem.n} m={inst.problem.m}")
    if inst.known_solution is not None:
        print(f"known solution: {_format_vector(inst.known_solution)}")
        print(f"known objective: {inst.known_objective:.10g}")
    return 0


def _load(path, cmd):
    try:
        return io.read_problem(path)
    except OSError as exc:
        print(f"apexlp {cmd}: {exc}", file=sys.stderr)
    except ApexError as exc:
        print(f"apexlp {cmd}: {type(exc).__name__}: {exc}", file=sys.stderr)
    return None


def cmd_solve(args):
    problem = _load(args.problem, "solve")
    if problem is None:
        return 1
    params = SolverParams(sigma=args.sigma, delta=args.delta, mu=args.mu,
                          eps_proj=args.eps_proj, eps_gamma=args.eps_gamma,
                          eps_feas=args.eps_feas, workers=args.workers,
                          max_target_iters=args.max_iters)
    code = 0
    try:
        report = solve(problem, params=params)
    except SolveFailure as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        report, code = exc.report, 1
    except ApexError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if report is None:
        return code
    print(f"solution: {_format_vector(report.solution)}")
    print(f"objective: {report.objective:.12g}")
    print(f"iterations: {report.iterations}")
    print(f"sweeps: {report.total_sweeps}")
    print(f"wall time: {report.wall_time:.3f} s")
    print(f"termination: {report.termination.value}")
    if args.trace:
        try:
            io.write_trace_csv(report, args.trace)
        except OSError as exc:
            print(f"apexlp solve: {exc}", file=sys.stderr)
            return 1
    return code


def cmd_oracle(args):
    problem = _load(args.problem, "oracle")
    if problem is None:
        return 1
    try:
        res = simplex_solve(problem)
    except ApexError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(f"status: {res.status.value}")
    print(f"optimum: {_format_vector(res.optimum)}")
    print(f"objective: {res.objective:.12g}")
    return 0


def cmd_bench(args):
    if args.n < 2:
        print("apexlp bench: error: --n must be >= 2", file=sys.stderr)
        return 2
    try:
        records = run_bench(args.n, args.workers, args.sweeps, repeats=args.repeats)
    except DeterminismError as exc:
        print(f"DeterminismError: {exc}", file=sys.stderr)
        return 1
    try:
        io.write_bench_csv(records, args.out)
    except OSError as exc:
        print(f"apexlp bench: {exc}", file=sys.stderr)
        return 1
    for r in records:
        print(f"n={r.n} m={r.m} workers={r.workers} seconds={r.seconds:.4f} "
              f"speedup={r.speedup:.2f}")
    return 0


COMMANDS = {"generate": cmd_generate, "solve": cmd_solve,
            "oracle": cmd_oracle, "bench": cmd_bench}


def main(argv=None):
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
