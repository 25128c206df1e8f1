import numpy as np
import pytest

from apexlp.bench import bench_start, run_bench, run_sweeps, usable_cpus
from apexlp.generator import model_problem


def test_start_is_infeasible():
    p = model_problem(10).problem
    assert np.sum(p.A @ bench_start(10) - p.b > 0) == 11


def test_sweeps_deterministic():
    p = model_problem(600).problem
    x0 = bench_start(600)
    a, _ = run_sweeps(p, x0, 1, 10)
    b, _ = run_sweeps(p, x0, 3, 10)
    assert a.tobytes() == b.tobytes()


def test_baseline_added():
    recs = run_bench(100, [2], 3)
    assert [r.workers for r in recs] == [2]
    assert recs[0].speedup > 0


def test_rejects_bad_workers():
    with pytest.raises(ValueError):
        run_bench(100, [0], 1)


def test_usable_cpus():
    assert usable_cpus() >= 1
