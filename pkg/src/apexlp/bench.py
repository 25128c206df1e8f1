"""
Worker-scaling benchmark of the Fejér displacement kernel.

Each run applies a fixed number of Fejér sweeps to the model problem from
the same infeasible start. Runs with different worker counts must end at
bit-identical points; only then are timings reported.
"""
import os
import time
from dataclasses import dataclass

import numpy as np

from .fejer import DisplacementKernel
from .generator import model_problem


@dataclass(frozen=True)
class BenchRecord:
    n: int
    m: int
    workers: int
    seconds: float
    speedup: float


class DeterminismError(RuntimeError):
    pass


def bench_start(n):
    """All-300 start: violates every ``x_i <= 200`` row and the sum cap."""
    return np.full(n, 300.0)


def run_sweeps(problem, x0, workers, sweeps):
    """Apply `sweeps` Fejér steps with `workers` threads; return ``(x, seconds)``."""
    x = np.array(x0, dtype=np.float64)
    with DisplacementKernel(problem, workers) as kernel:
        kernel(x)  # warm-up: JIT compile and thread start
        t0 = time.perf_counter()
        for _ in range(sweeps):
            phi, h = kernel(x)
            if h == 0:
                break
            x = x - phi
        elapsed = time.perf_counter() - t0
    return x, elapsed


def run_bench(n, workers_list, sweeps, repeats=1, problem=None):
    """
    Time `sweeps` Fejér sweeps on ``model_problem(n)`` for each worker count.

    ``speedup`` is relative to the first entry of `workers_list` when that
    entry is 1, otherwise to an extra single-worker baseline run. The best
    of `repeats` timings is kept.

    Raises
    ------
    DeterminismError
        If any worker count yields a different final point.
    """
    workers_list = [int(w) for w in workers_list]
    if not workers_list or any(w < 1 for w in workers_list):
        raise ValueError("workers_list must contain integers >= 1")
    problem = problem or model_problem(n).problem
    x0 = bench_start(problem.n)
    counts = workers_list if 1 in workers_list else [1] + workers_list
    results = {}
    for w in counts:
        best = np.inf
        for _ in range(max(1, repeats)):
            x, secs = run_sweeps(problem, x0, w, sweeps)
            best = min(best, secs)
        results[w] = (x, best)
    ref = results[1][0]
    for w, (x, _) in results.items():
        if x.tobytes() != ref.tobytes():
            raise DeterminismError(f"workers={w} result differs from workers=1")
    base = results[1][1]
    return [BenchRecord(problem.n, problem.m, w, results[w][1], base / results[w][1])
            for w in workers_list]


def usable_cpus():
    """Best-effort count of CPUs usable by this process."""
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1
