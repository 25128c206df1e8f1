"""
Fejér displacement and pseudo-projection onto ``M = {x : Ax <= b}``.

For a point ``x`` each violated row contributes the correction

    rho_i(x) = max(<a_i, x> - b_i, 0) / ||a_i||^2 * a_i

and the displacement ``phi(x)`` is the mean of the ``h`` nonzero
corrections. One Fejér step maps ``x`` to ``x - phi(x)``; iterating it until
the step norm drops below ``eps_proj`` gives the pseudo-projection.

"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NotConverged
from .model import _check_point


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    point: np.ndarray
    sweeps: int
    last_step_norm: float
    converged: bool


def violation_correction(problem, x, i):
    """Return ``rho_i(x)``, the zero vector when row `i` is satisfied."""
    x = _check_point(problem, x)
    if not 0 <= i < problem.m:
        raise IndexError(f"row index {i} out of range for m={problem.m}")
    a = problem.A[i]
    r = a @ x - problem.b[i]
    if r > 0.0:
        return (r / problem.row_norms_sq[i]) * a
    return np.zeros(problem.n)


class DisplacementKernel:
    """
    Reusable evaluator of ``phi`` over a fixed problem.

    Rows are split into fixed chunks (see :mod:`apexlp._kernels`); with
    ``workers > 1`` contiguous runs of chunks go to a thread pool. The
    output is bit-identical for every worker count.

    Use as a context manager, or call :meth:`close`, to release the pool.
    """

    def __init__(self, problem, workers=1):
        if int(workers) != workers or workers < 1:
            raise ValueError(f"workers must be an integer >= 1, got {workers!r}")
        self.problem = problem
        self.workers = int(workers)
        self._partials, self._counts = _kernels.empty_workspace(problem.m, problem.n)
        k = self._counts.shape[0]
        w = min(self.workers, k)
        edges = np.linspace(0, k, w + 1).round().astype(int)
        self._blocks = [(int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]
        self._pool = ThreadPoolExecutor(len(self._blocks)) if len(self._blocks) > 1 else None

    def __call__(self, x):
        p = self.problem
        x = np.ascontiguousarray(x, dtype=np.float64)
        if self._pool is None:
            _kernels.chunk_partials(p.A, p.b, p.row_norms_sq, x, 0,
                                    self._counts.shape[0], self._partials, self._counts)
        else:
            futures = [
                self._pool.submit(_kernels.chunk_partials, p.A, p.b, p.row_norms_sq,
                                  x, lo, hi, self._partials, self._counts)
                for lo, hi in self._blocks
            ]
            for f in futures:
                f.result()
        phi = np.empty(p.n)
        h = _kernels.combine(self._partials, self._counts, phi)
        return phi, int(h)

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def parallel_displacement(problem, x, workers):
    """Return ``(phi(x), h)`` computed with `workers` threads."""
    x = _check_point(problem, x)
    with DisplacementKernel(problem, workers) as kernel:
        return kernel(x)


def displacement(problem, x):
    """Return ``(phi(x), h)``; ``phi`` is zero and ``h == 0`` for ``x`` in M."""
    return parallel_displacement(problem, x, 1)


def fejer_step(problem, x):
    x = _check_point(problem, x)
    phi, _ = displacement(problem, x)
    return x - phi


def pseudo_projection(problem, x0, params, kernel=None):
    """
    Iterate Fejér steps from `x0` until ``||x_{k+1} - x_k|| < eps_proj``.

    Parameters
    ----------
    problem : LpProblem
    x0 : array_like(float, ndim=1)
    params : SolverParams
        Uses ``eps_proj``, ``max_proj_sweeps`` and ``workers``.
    kernel : DisplacementKernel, optional
        Pre-built kernel to reuse across calls.

    Returns
    -------
    ProjectionResult
        ``sweeps`` counts the Fejér steps actually taken; a feasible `x0`
        is returned unchanged with ``sweeps == 0``.

    Raises
    ------
    NotConverged
        If the sweep cap is reached; the exception carries the result.

    """
    x = _check_point(problem, x0).copy()
    own = kernel is None
    if own:
        kernel = DisplacementKernel(problem, params.workers)
    try:
        step = 0.0
        for sweep in range(params.max_proj_sweeps):
            phi, h = kernel(x)
            if h == 0:
                return ProjectionResult(x, sweep, 0.0, True)
            x_next = x - phi
            step = float(np.linalg.norm(x_next - x))
            x = x_next
            if step < params.eps_proj:
                return ProjectionResult(x, sweep + 1, step, True)
        raise NotConverged(ProjectionResult(x, params.max_proj_sweeps, step, False))
    finally:
        if own:
            kernel.close()


def boundary_tolerance(problem, params):
    """Residual slack ``10 * eps_proj * max_i ||a_i||`` defining "on the boundary"."""
    return 10.0 * params.eps_proj * float(np.sqrt(np.max(problem.row_norms_sq)))
