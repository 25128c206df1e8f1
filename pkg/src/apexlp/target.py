"""
Apex method: Quest (feasible point by pseudo-projection) followed by the
Target stage walking the boundary of M with strictly increasing objective.

"""
import enum
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import (ApexInsideM, IterationCap, NotConverged, ProjectionFailure,
                     StepDegenerate, UnboundedRay, ZeroObjective)
from .fejer import DisplacementKernel, boundary_tolerance, pseudo_projection
from .model import SolverParams, _check_point, feasibility_band, is_member


class Termination(enum.Enum):
    StopCriterion = "StopCriterion"
    IterationCap = "IterationCap"
    ProjectionFailure = "ProjectionFailure"


@dataclass(frozen=True, eq=False)
class TargetTraceRecord:
    """
    One point ``u_k`` of the Target sequence.

    ``step_norm`` is ``||u_{k+1} - u_k||`` and is ``None`` on the last record.
    ``proj_sweeps`` counts the Fejér sweeps spent on the probe projection(s)
    made from ``u_k`` (on ``k == 0`` the apex projection is included).
    ``active`` is the number of rows within the boundary tolerance.
    """
    k: int
    u: np.ndarray
    objective: float
    step_norm: float | None
    proj_sweeps: int
    active: int


@dataclass(eq=False)
class SolveReport:
    solution: np.ndarray
    objective: float
    iterations: int
    trace: list
    termination: Termination
    wall_time: float
    quest_point: np.ndarray | None = None
    sigma: float | None = None
    delta: float | None = None
    total_sweeps: int = 0
    extra: dict = field(default_factory=dict)


def objective_direction(problem):
    norm = float(np.linalg.norm(problem.c))
    if norm == 0.0:
        raise ZeroObjective()
    return problem.c / norm


def apex_point(x_feasible, e_c, sigma):
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma!r}")
    return np.asarray(x_feasible, dtype=np.float64) + sigma * np.asarray(e_c)


def initial_approximation(problem, z, params, kernel=None, sigma=None):
    """
    Pseudo-project the apex point `z` onto M.

    Returns the :class:`~apexlp.fejer.ProjectionResult`; its ``point`` is
    ``u_0``.

    Raises
    ------
    ApexInsideM
        If `z` already belongs to M, i.e. sigma is too small.
    ProjectionFailure
        If the projection hits ``max_proj_sweeps``.
    """
    z = _check_point(problem, z)
    if is_member(problem, z, params.eps_feas):
        raise ApexInsideM(params.sigma if sigma is None else sigma)
    try:
        return pseudo_projection(problem, z, params, kernel=kernel)
    except NotConverged as exc:
        raise ProjectionFailure(f"apex projection: {exc}") from exc


def gamma_band(problem, params):
    """
    Per-row residual slack used by the ray search.

    The smaller of the membership band ``eps_feas * max(1, |b_i|)`` and half
    the boundary tolerance, so accepted points are members of M and the
    final point sits within the boundary tolerance of its blocking row.
    """
    return np.minimum(feasibility_band(problem, params.eps_feas),
                      0.5 * boundary_tolerance(problem, params))


def gamma_bisect(problem, u_k, w_k, params, band=None):
    """
    Walk from `u_k` along the ray through `w_k` while staying in M.

    Steps of length ``tau`` (starting at ``mu``) are accepted while the
    candidate is in M; a rejected candidate halves ``tau`` and the search
    stops once ``tau < eps_gamma``. The position along the ray is kept as a
    scalar distance so tiny steps are not lost to rounding in the point
    coordinates.

    Parameters
    ----------
    band : ndarray, optional
        Per-row residual slack; defaults to :func:`gamma_band`.

    Raises
    ------
    StepDegenerate
        If ``||w_k - u_k|| < 1e-14``.
    UnboundedRay
        If ``max_gamma_iters`` steps are accepted without any rejection.
    """
    u = _check_point(problem, u_k)
    d = _check_point(problem, w_k) - u
    dist = float(np.linalg.norm(d))
    if dist < 1e-14:
        raise StepDegenerate(f"||w - u|| = {dist:.3e}")
    e = d / dist
    if band is None:
        band = gamma_band(problem, params)
    A, b = problem.A, problem.b
    if np.all(A @ e <= 0.0):
        raise UnboundedRay("ray direction is a recession direction of M")
    s, tau = 0.0, float(params.mu)
    run = 0
    while tau >= params.eps_gamma:
        cand = s + tau
        if np.all(A @ (u + cand * e) - b <= band):
            s = cand
            run += 1
            if run >= params.max_gamma_iters:
                raise UnboundedRay(
                    f"{run} steps accepted along the ray without leaving M")
        else:
            tau *= 0.5
            run = 0
    return u + s * e


def gamma_ratio_test(problem, u_k, w_k):
    """
    Exact farthest point of M on the ray from `u_k` through `w_k`.

    Uses the blocking rows ``<a_i, d> > 1e-12 ||a_i|| ||d||`` with
    ``d = w_k - u_k``; the step ``eta`` is clamped at zero.
    """
    u = _check_point(problem, u_k)
    d = _check_point(problem, w_k) - u
    den = problem.A @ d
    tol = 1e-12 * np.sqrt(problem.row_norms_sq) * np.linalg.norm(d)
    blocking = den > tol
    if not np.any(blocking):
        raise UnboundedRay("no constraint blocks the ray")
    ratios = (problem.b[blocking] - problem.A[blocking] @ u) / den[blocking]
    eta = max(float(np.min(ratios)), 0.0)
    return u + eta * d


def _active_count(problem, u, bnd):
    return int(np.count_nonzero(np.abs(problem.A @ u - problem.b) <= bnd))


def solve(problem, x_start=None, params=None):
    """
    Solve ``max <c, x> s.t. A x <= b`` with the apex method.

    Parameters
    ----------
    problem : LpProblem
        A validated problem with bounded nonempty feasible region.
    x_start : array_like, optional
        Start of the Quest stage; the origin by default.
    params : SolverParams, optional

    Returns
    -------
    SolveReport

    Raises
    ------
    ApexInsideM
        When the apex point is inside M.
    ProjectionFailure, IterationCap
        With the best-so-far report attached as ``report``.

    """
    params = params or SolverParams()
    t_start = time.perf_counter()
    x0 = np.zeros(problem.n) if x_start is None else _check_point(problem, x_start)
    bnd = boundary_tolerance(problem, params)
    band = gamma_band(problem, params)
    e_c = objective_direction(problem)
    c = problem.c
    # gains below this are within the pseudo-projection error and not progress
    gain_floor = float(np.linalg.norm(c)) * max(params.eps_proj, params.eps_gamma)

    trace = []
    total = 0

    def report(u, termination, sigma, delta, x_quest):
        return SolveReport(
            solution=u.copy(), objective=float(c @ u), iterations=len(trace) - 1,
            trace=trace, termination=termination,
            wall_time=time.perf_counter() - t_start, quest_point=x_quest,
            sigma=sigma, delta=delta, total_sweeps=total)

    with DisplacementKernel(problem, params.workers) as kernel:
        try:
            quest = pseudo_projection(problem, x0, params, kernel=kernel)
        except NotConverged as exc:
            raise ProjectionFailure(f"quest stage: {exc}") from exc
        x_quest = quest.point
        total += quest.sweeps

        sigma = params.default_sigma(problem)
        z = apex_point(x_quest, e_c, sigma)
        first = initial_approximation(problem, z, params, kernel=kernel, sigma=sigma)
        total += first.sweeps
        u = first.point
        f_u = float(c @ u)
        delta = params.default_delta(u)
        sweeps_k = first.sweeps
        halvings = 0

        def record(step_norm):
            trace.append(TargetTraceRecord(len(trace), u.copy(), f_u, step_norm,
                                           sweeps_k, _active_count(problem, u, bnd)))

        while len(trace) < params.max_target_iters:
            try:
                probe = pseudo_projection(problem, u + delta * e_c, params, kernel=kernel)
            except NotConverged as exc:
                sweeps_k += exc.result.sweeps
                total += exc.result.sweeps
                record(None)
                raise ProjectionFailure(
                    f"probe projection at iteration {len(trace) - 1}: {exc}",
                    report(u, Termination.ProjectionFailure, sigma, delta, x_quest),
                ) from exc
            sweeps_k += probe.sweeps
            total += probe.sweeps
            w = probe.point
            u_next = None
            if float(c @ w) > f_u + gain_floor:
                try:
                    u_next = gamma_bisect(problem, u, w, params, band=band)
                except StepDegenerate:
                    u_next = None
                if u_next is not None and (
                        np.linalg.norm(u_next - u) < params.eps_gamma
                        or float(c @ u_next) <= f_u + gain_floor):
                    u_next = None
            if u_next is None:
                # stop test tripped (or the ray stalled): retry with a
                # smaller probe before accepting u as the solution
                if halvings < params.max_delta_halvings:
                    halvings += 1
                    delta *= 0.5
                    continue
                record(None)
                return report(u, Termination.StopCriterion, sigma, delta, x_quest)
            record(float(np.linalg.norm(u_next - u)))
            u = u_next
            f_u = float(c @ u)
            sweeps_k = 0

        record(None)
        raise IterationCap(
            f"target stage exceeded {params.max_target_iters} iterations",
            report(u, Termination.IterationCap, sigma, delta, x_quest))
