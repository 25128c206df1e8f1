"""
Text formats: LPF1 problem files, trace CSV and benchmark CSV.

LPF1 layout::

    LPF1
    <n> <m>
    a_11 ... a_1n b_1        (m constraint lines)
    ...
    c_1 ... c_n              (objective line)

Blank lines and lines starting with ``#`` are ignored. Reals are written as
the shortest decimal that round-trips to the same double.
"""
import csv
import os

import numpy as np

from .errors import ParseError, ProblemError, ZeroObjective, ZeroRow
from .model import LpProblem, validate

MAGIC = "LPF1"


def _fmt(v):
    return repr(float(v))


def _open(target, mode):
    if isinstance(target, (str, os.PathLike)):
        return open(target, mode, newline="" if "w" in mode else None), True
    return target, False


def write_problem(problem, sink):
    """Write `problem` in LPF1 format to a path or text stream."""
    validate(problem)
    f, own = _open(sink, "w")
    try:
        f.write(f"{MAGIC}\n{problem.n} {problem.m}\n")
        for row, rhs in zip(problem.A, problem.b):
            f.write(" ".join(map(_fmt, row)) + " " + _fmt(rhs) + "\n")
        f.write(" ".join(map(_fmt, problem.c)) + "\n")
    finally:
        if own:
            f.close()


def _content_lines(f):
    for no, raw in enumerate(f, start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def _floats(no, line, count, what):
    parts = line.split()
    if len(parts) != count:
        raise ParseError(no, f"{what}: expected {count} numbers, found {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise ParseError(no, f"{what}: {exc}") from None


def read_problem(source):
    """
    Parse an LPF1 document from a path or text stream.

    Raises
    ------
    ParseError
        On malformed input, with the offending line number.
    ZeroRow, ZeroObjective
        With ``line_no`` set to the line of the bad row.
    """
    f, own = _open(source, "r")
    try:
        lines = list(_content_lines(f))
    finally:
        if own:
            f.close()
    if not lines:
        raise ParseError(1, "empty document")
    no, first = lines[0]
    if first != MAGIC:
        raise ParseError(no, f"expected header {MAGIC!r}, found {first!r}")
    if len(lines) < 2:
        raise ParseError(no, "missing '<n> <m>' line")
    no, dims = lines[1]
    parts = dims.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(no, f"expected '<n> <m>', found {dims!r}")
    n, m = int(parts[0]), int(parts[1])
    if n < 1 or m < 1:
        raise ParseError(no, f"n and m must be >= 1, found n={n} m={m}")
    body = lines[2:]
    if len(body) != m + 1:
        last = body[-1][0] if body else no
        raise ParseError(last, f"header declares m={m} constraint lines plus one "
                               f"objective line, found {len(body)} data lines")
    A = np.empty((m, n))
    b = np.empty(m)
    for i, (lno, line) in enumerate(body[:m]):
        vals = _floats(lno, line, n + 1, f"constraint {i}")
        A[i] = vals[:n]
        b[i] = vals[n]
        if not np.any(A[i]):
            raise ZeroRow(i, line_no=lno)
    lno, line = body[m]
    c = np.array(_floats(lno, line, n, "objective"))
    if not np.any(c):
        raise ZeroObjective(line_no=lno)
    problem = LpProblem(A, b, c)
    try:
        validate(problem)
    except ProblemError as exc:
        raise ParseError(lno, str(exc)) from exc
    return problem


def write_trace_csv(report, sink):
    """Write ``k,objective,step_norm,proj_sweeps``; step_norm is empty on the last row."""
    f, own = _open(sink, "w")
    try:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["k", "objective", "step_norm", "proj_sweeps"])
        for rec in report.trace:
            step = "" if rec.step_norm is None else _fmt(rec.step_norm)
            w.writerow([rec.k, _fmt(rec.objective), step, rec.proj_sweeps])
    finally:
        if own:
            f.close()


BENCH_FIELDS = ["n", "m", "workers", "seconds", "speedup"]


def write_bench_csv(records, sink):
    f, own = _open(sink, "w")
    try:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(BENCH_FIELDS)
        for r in records:
            w.writerow([r.n, r.m, r.workers, _fmt(r.seconds), _fmt(r.speedup)])
    finally:
        if own:
            f.close()


def read_bench_csv(source):
    from .bench import BenchRecord

    f, own = _open(source, "r")
    try:
        rows = list(csv.DictReader(f))
    finally:
        if own:
            f.close()
    return [BenchRecord(int(r["n"]), int(r["m"]), int(r["workers"]),
                        float(r["seconds"]), float(r["speedup"])) for r in rows]
