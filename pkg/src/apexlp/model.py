"""
LP problem data and the basic queries on the polytope ``M = {x : Ax <= b}``.

The problem solved throughout the package is

    maximize    <c, x>
    subject to  A x <= b

with any sign constraints (``x >= 0``) stored as explicit rows ``-x_i <= 0``.
All arrays are 64-bit floats.

"""
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, ZeroObjective, ZeroRow


def _frozen(a):
    a = np.array(a, dtype=np.float64, order="C", copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class LpProblem:
    """
    Dense LP ``max <c, x> s.t. A x <= b``.

    Parameters
    ----------
    A : array_like(float, ndim=2)
        Constraint matrix of shape (m, n); row ``i`` is ``a_i``.
    b : array_like(float, ndim=1)
        Right-hand side of length m.
    c : array_like(float, ndim=1)
        Objective coefficients of length n.

    The arrays are copied and made read-only, so an instance can be shared
    between worker threads. Construction only checks array ranks and
    lengths; call :func:`validate` for the nonzero-row/objective checks.

    """
    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    row_norms_sq: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        A, b, c = _frozen(self.A), _frozen(self.b), _frozen(self.c)
        if A.ndim != 2:
            raise DimensionMismatch("A.ndim", 2, A.ndim)
        m, n = A.shape
        if b.shape != (m,):
            raise DimensionMismatch("len(b)", m, b.shape)
        if c.shape != (n,):
            raise DimensionMismatch("len(c)", n, c.shape)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(
            self, "row_norms_sq", _frozen(np.einsum("ij,ij->i", A, A))
        )

    @property
    def m(self):
        return self.A.shape[0]

    @property
    def n(self):
        return self.A.shape[1]

    def __repr__(self):
        return f"LpProblem(n={self.n}, m={self.m})"


def _check_point(problem, x):
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (problem.n,):
        raise DimensionMismatch("len(x)", problem.n, x.shape)
    return x


def residuals(problem, x):
    """Return ``A x - b``."""
    x = _check_point(problem, x)
    return problem.A @ x - problem.b


def feasibility_band(problem, eps_feas):
    """Per-row slack ``eps_feas * max(1, |b_i|)`` allowed by :func:`is_member`."""
    return eps_feas * np.maximum(1.0, np.abs(problem.b))


def is_member(problem, x, eps_feas):
    """
    Test ``x`` for membership in M with the relative tolerance band.

    Row ``i`` is satisfied when ``<a_i, x> - b_i <= eps_feas * max(1, |b_i|)``.
    """
    r = residuals(problem, x)
    return bool(np.all(r <= feasibility_band(problem, eps_feas)))


def objective(problem, x):
    x = _check_point(problem, x)
    return float(problem.c @ x)


def validate(problem):
    """
    Check the structural invariants of `problem`.

    Raises
    ------
    DimensionMismatch
        If ``m < 1`` or ``n < 1``.
    ZeroRow
        For the first row ``a_i`` equal to the zero vector.
    ZeroObjective
        If ``c`` is identically zero.
    """
    m, n = problem.A.shape
    if m < 1:
        raise DimensionMismatch("m", ">= 1", m)
    if n < 1:
        raise DimensionMismatch("n", ">= 1", n)
    zero = np.flatnonzero(problem.row_norms_sq == 0.0)
    if zero.size:
        raise ZeroRow(int(zero[0]))
    if not np.any(problem.c):
        raise ZeroObjective()
    if not (np.all(np.isfinite(problem.A)) and np.all(np.isfinite(problem.b))
            and np.all(np.isfinite(problem.c))):
        raise DimensionMismatch("finite entries", "all finite", "non-finite")


@dataclass(frozen=True, eq=False)
class Iterate:
    """A point together with its residuals and violated-row count ``h``."""
    x: np.ndarray
    residuals: np.ndarray
    violated_count: int

    @classmethod
    def at(cls, problem, x, eps_feas):
        x = _frozen(_check_point(problem, x))
        r = _frozen(problem.A @ x - problem.b)
        h = int(np.count_nonzero(r > feasibility_band(problem, eps_feas)))
        return cls(x, r, h)

    @property
    def feasible(self):
        return self.violated_count == 0


@dataclass(frozen=True)
class SolverParams:
    """
    Tolerances and constants of the apex method.

    ``sigma`` and ``delta`` default to ``None`` and are then derived from
    the problem: ``sigma = 20000 * n * max(1, ||b||_inf / n)`` and
    ``delta = 1e-2 * max(1, ||u_0||_inf)``.
    """
    sigma: float | None = None
    delta: float | None = None
    mu: float = 1.0
    eps_proj: float = 1e-9
    eps_gamma: float = 1e-9
    eps_feas: float = 1e-7
    max_proj_sweeps: int = 10**7
    max_target_iters: int = 10**5
    max_gamma_iters: int = 10**7
    max_delta_halvings: int = 20
    workers: int = 1

    def __post_init__(self):
        for name in ("mu", "eps_proj", "eps_gamma", "eps_feas"):
            v = getattr(self, name)
            if not (v > 0 and np.isfinite(v)):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")
        for name in ("sigma", "delta"):
            v = getattr(self, name)
            if v is not None and not (v > 0 and np.isfinite(v)):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")
        for name in ("max_proj_sweeps", "max_target_iters", "max_gamma_iters",
                     "workers"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {v!r}")
        if int(self.max_delta_halvings) != self.max_delta_halvings or self.max_delta_halvings < 0:
            raise ValueError("max_delta_halvings must be an integer >= 0")

    def default_sigma(self, problem):
        if self.sigma is not None:
            return float(self.sigma)
        n = problem.n
        return 20000.0 * n * max(1.0, float(np.max(np.abs(problem.b))) / n)

    def default_delta(self, u0):
        if self.delta is not None:
            return float(self.delta)
        return 1e-2 * max(1.0, float(np.max(np.abs(u0))))
