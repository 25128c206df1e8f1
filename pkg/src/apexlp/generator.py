"""Test problems with known exact solutions."""
from dataclasses import dataclass

import numpy as np

from .model import LpProblem


@dataclass(frozen=True, eq=False)
class GeneratedInstance:
    problem: LpProblem
    known_solution: np.ndarray | None = None
    known_objective: float | None = None


def model_problem(n):
    """
    Scalable inequality system with optimum ``(200, ..., 200, 100)``.

    Rows, in order: ``x_i <= 200`` (n rows), ``sum(x) <= 200(n-1) + 100``,
    ``-sum(x) <= -100``, ``-x_i <= 0`` (n rows), so ``m = 2n + 2``. The
    objective is ``c = (10n, 10(n-1), ..., 10)`` and the optimal value is
    ``1000 n^2 + 1000 n - 1000``.
    """
    if int(n) != n or n < 2:
        raise ValueError(f"model_problem requires an integer n >= 2, got {n!r}")
    n = int(n)
    m = 2 * n + 2
    A = np.zeros((m, n))
    idx = np.arange(n)
    A[idx, idx] = 1.0
    A[n, :] = 1.0
    A[n + 1, :] = -1.0
    A[n + 2 + idx, idx] = -1.0
    b = np.zeros(m)
    b[:n] = 200.0
    b[n] = 200.0 * (n - 1) + 100.0
    b[n + 1] = -100.0
    c = 10.0 * np.arange(n, 0, -1, dtype=np.float64)
    x_bar = np.full(n, 200.0)
    x_bar[-1] = 100.0
    return GeneratedInstance(LpProblem(A, b, c), x_bar,
                             1000.0 * n * n + 1000.0 * n - 1000.0)


def unit_hypercube(n):
    """``0 <= x_i <= 1`` with ``c = 1``; optimum at the all-ones corner."""
    if int(n) != n or n < 1:
        raise ValueError(f"unit_hypercube requires an integer n >= 1, got {n!r}")
    n = int(n)
    eye = np.eye(n)
    A = np.vstack([eye, -eye])
    b = np.concatenate([np.ones(n), np.zeros(n)])
    return GeneratedInstance(LpProblem(A, b, np.ones(n)), np.ones(n), float(n))
