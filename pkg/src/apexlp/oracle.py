"""
Desk-scale reference solvers used to certify apex-method answers.

`simplex_solve` is a dense two-phase tableau simplex with Bland's rule;
`vertex_brute_force` enumerates every basic solution. Both are exact up to
floating-point tolerances and only meant for small instances.

"""
import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import Infeasible, SizeGuard, Unbounded
from .model import feasibility_band

MAX_SIMPLEX_N = 200
MAX_SIMPLEX_M = 500
MAX_SUBSETS = 10**6
PIVOT_TOL = 1e-11
_TOL = 1e-9


class Status(enum.Enum):
    Optimal = "Optimal"
    Unbounded = "Unbounded"
    Infeasible = "Infeasible"


@dataclass(frozen=True, eq=False)
class OracleResult:
    optimum: np.ndarray
    objective: float
    status: Status


def _pivot(T, row, col):
    T[row] /= T[row, col]
    piv = T[row]
    col_vals = T[:, col].copy()
    col_vals[row] = 0.0
    T -= np.outer(col_vals, piv)


def _run_simplex(T, basis, n_cols, max_iter):
    """Bland's rule on tableau `T` (last row holds negated reduced costs)."""
    m = T.shape[0] - 1
    for _ in range(max_iter):
        obj = T[-1, :n_cols]
        entering = np.flatnonzero(obj < -_TOL)
        if entering.size == 0:
            return True
        col = int(entering[0])
        colv = T[:m, col]
        pos = np.flatnonzero(colv > _TOL)
        if pos.size == 0:
            return False
        ratios = T[pos, -1] / colv[pos]
        best = ratios.min()
        ties = pos[ratios <= best + _TOL * max(1.0, abs(best))]
        row = int(ties[np.argmin(basis[ties])])
        _pivot(T, row, col)
        basis[row] = col
    raise RuntimeError("simplex iteration limit reached")


def simplex_solve(problem, max_iter=50_000):
    """
    Maximize ``<c, x>`` subject to ``A x <= b`` with free ``x``.

    Each variable is split as ``x = x+ - x-``; rows with negative
    right-hand side get an artificial variable for phase 1.

    Raises
    ------
    SizeGuard
        If ``n > 200`` or ``m > 500``.
    Infeasible, Unbounded

    """
    A, b, c = problem.A, problem.b, problem.c
    m, n = A.shape
    if n > MAX_SIMPLEX_N or m > MAX_SIMPLEX_M:
        raise SizeGuard(f"simplex oracle limited to n <= {MAX_SIMPLEX_N}, "
                        f"m <= {MAX_SIMPLEX_M} (got n={n}, m={m})")
    neg = b < 0
    n_art = int(neg.sum())
    n_struct = 2 * n + m
    N = n_struct + n_art
    T = np.zeros((m + 1, N + 1))
    sign = np.where(neg, -1.0, 1.0)
    T[:m, :n] = A * sign[:, None]
    T[:m, n:2 * n] = -A * sign[:, None]
    T[:m, 2 * n:n_struct] = np.diag(sign)
    T[:m, -1] = b * sign
    basis = np.empty(m, dtype=np.int64)
    art_rows = np.flatnonzero(neg)
    T[art_rows, n_struct + np.arange(n_art)] = 1.0
    basis[:] = 2 * n + np.arange(m)
    basis[art_rows] = n_struct + np.arange(n_art)

    if n_art:
        # phase 1: maximize -sum(artificials)
        T[-1, n_struct:N] = 1.0
        T[-1] -= T[art_rows].sum(axis=0)
        _run_simplex(T, basis, N, max_iter)
        if T[-1, -1] < -_TOL * max(1.0, np.abs(b).max()):
            raise Infeasible("phase 1 optimum is positive: Ax <= b has no solution")
        keep = np.ones(m, dtype=bool)
        for r in np.flatnonzero(basis >= n_struct):
            cand = np.flatnonzero(np.abs(T[r, :n_struct]) > _TOL)
            if cand.size:
                _pivot(T, r, int(cand[0]))
                basis[r] = cand[0]
            else:
                keep[r] = False
        T = np.vstack([T[:m][keep], T[-1:]])
        basis = basis[keep]
        T = np.delete(T, np.s_[n_struct:N], axis=1)

    m_eff = T.shape[0] - 1
    T[-1] = 0.0
    T[-1, :n] = -c
    T[-1, n:2 * n] = c
    for r in range(m_eff):
        if T[-1, basis[r]] != 0.0:
            T[-1] -= T[-1, basis[r]] * T[r]
    if not _run_simplex(T, basis, n_struct, max_iter):
        raise Unbounded("objective is unbounded above on Ax <= b")

    z = np.zeros(n_struct)
    z[basis] = T[:m_eff, -1]
    x = z[:n] - z[n:2 * n]
    return OracleResult(x, float(c @ x), Status.Optimal)


def _batched_solve(M, rhs):
    """
    Gaussian elimination with partial pivoting on a stack of systems.

    Returns ``(x, ok)`` where ``ok[k]`` is False when some pivot of system
    ``k`` falls below ``PIVOT_TOL`` times its largest entry.
    """
    M = M.copy()
    rhs = rhs.copy()
    B, n, _ = M.shape
    scale = np.abs(M).reshape(B, -1).max(axis=1)
    ok = scale > 0
    ar = np.arange(B)
    for k in range(n):
        p = k + np.argmax(np.abs(M[:, k:, k]), axis=1)
        row_k, row_p = M[:, k, :].copy(), M[ar, p, :]
        M[:, k, :] = row_p
        M[ar, p, :] = row_k
        r_k, r_p = rhs[:, k].copy(), rhs[ar, p]
        rhs[:, k] = r_p
        rhs[ar, p] = r_k
        piv = M[:, k, k]
        bad = np.abs(piv) <= PIVOT_TOL * scale
        ok &= ~bad
        piv = np.where(bad, 1.0, piv)
        f = M[:, k + 1:, k] / piv[:, None]
        M[:, k + 1:, :] -= f[:, :, None] * M[:, k:k + 1, :]
        rhs[:, k + 1:] -= f * rhs[:, k:k + 1]
    x = np.zeros((B, n))
    for k in range(n - 1, -1, -1):
        piv = np.where(ok, M[:, k, k], 1.0)
        x[:, k] = (rhs[:, k] - np.einsum("bj,bj->b", M[:, k, k + 1:], x[:, k + 1:])) / piv
    return x, ok


def vertex_brute_force(problem, eps_feas=1e-9, batch=4096):
    """
    Enumerate all n-subsets of rows and keep the best feasible vertex.

    Raises
    ------
    SizeGuard
        If ``binomial(m, n) > 1e6``.
    Infeasible
        If no feasible vertex exists.
    """
    A, b, c = problem.A, problem.b, problem.c
    m, n = A.shape
    total = math.comb(m, n)
    if total > MAX_SUBSETS:
        raise SizeGuard(f"binomial({m}, {n}) = {total} exceeds {MAX_SUBSETS}")
    band = feasibility_band(problem, eps_feas)
    best_x, best_f = None, -np.inf
    combos = itertools.combinations(range(m), n)
    while True:
        idx = np.fromiter(itertools.chain.from_iterable(itertools.islice(combos, batch)),
                          dtype=np.int64)
        if idx.size == 0:
            break
        idx = idx.reshape(-1, n)
        x, ok = _batched_solve(A[idx], b[idx])
        if not ok.any():
            continue
        x = x[ok]
        feas = np.all(x @ A.T - b <= band, axis=1)
        if not feas.any():
            continue
        x = x[feas]
        f = x @ c
        k = int(np.argmax(f))
        if f[k] > best_f:
            best_f, best_x = float(f[k]), x[k]
    if best_x is None:
        raise Infeasible("no feasible vertex")
    return OracleResult(best_x, best_f, Status.Optimal)
