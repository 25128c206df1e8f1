import numpy as np
import pytest
from numpy.testing import assert_allclose

from apexlp import (ApexInsideM, IterationCap, LpProblem, SolverParams,
                    StepDegenerate, Termination, UnboundedRay, apex_point,
                    gamma_bisect, gamma_ratio_test, initial_approximation,
                    objective_direction, solve)
from apexlp.generator import model_problem, unit_hypercube


class TestApexPoint:
    def test_model_problem_n2(self):
        e_c = objective_direction(model_problem(2).problem)
        assert_allclose(e_c, [2 / np.sqrt(5), 1 / np.sqrt(5)], rtol=1e-15)
        z = apex_point([100.0, 100.0], e_c, 40000.0)
        assert_allclose(z, [100 + 80000 / np.sqrt(5), 100 + 40000 / np.sqrt(5)], rtol=1e-15)

    def test_rejects_nonpositive_sigma(self):
        with pytest.raises(ValueError):
            apex_point([0.0], [1.0], 0.0)


class TestInitialApproximation:
    def test_unit_square(self):
        p = LpProblem(unit_hypercube(2).problem.A, unit_hypercube(2).problem.b, np.ones(2))
        z = apex_point([0.5, 0.5], objective_direction(p), 100.0)
        res = initial_approximation(p, z, SolverParams(sigma=100.0))
        assert_allclose(res.point, [1.0, 1.0], atol=1e-8)

    def test_apex_inside(self):
        p = unit_hypercube(2).problem
        z = apex_point([0.1, 0.1], objective_direction(p), 0.1)
        with pytest.raises(ApexInsideM):
            initial_approximation(p, z, SolverParams(sigma=0.1))


class TestGamma:
    def test_ratio_test_diagonal(self):
        p = unit_hypercube(2).problem
        assert_allclose(gamma_ratio_test(p, [0.0, 0.0], [2.0, 2.0]), [1.0, 1.0])

    def test_bisect_diagonal(self):
        p = unit_hypercube(2).problem
        got = gamma_bisect(p, [0.0, 0.0], [2.0, 2.0], SolverParams(eps_feas=1e-12))
        # exit distance sqrt(2) along the diagonal
        assert abs(np.linalg.norm(got) - np.sqrt(2)) < 2e-9
        assert np.all(got <= 1.0 + 1e-12)

    def test_bisect_matches_ratio_test(self):
        rng = np.random.default_rng(11)
        p = unit_hypercube(3).problem
        params = SolverParams(eps_feas=1e-12)
        for _ in range(50):
            u = rng.uniform(0.1, 0.9, size=3)
            w = u + rng.normal(size=3)
            exact = gamma_ratio_test(p, u, w)
            assert np.linalg.norm(gamma_bisect(p, u, w, params) - exact) < 4e-9

    def test_degenerate(self):
        p = unit_hypercube(2).problem
        with pytest.raises(StepDegenerate):
            gamma_bisect(p, [0.5, 0.5], [0.5, 0.5 + 1e-16], SolverParams())

    def test_unbounded_ray(self):
        p = LpProblem(np.array([[-1.0, 0.0], [0.0, -1.0]]), np.zeros(2), np.ones(2))
        with pytest.raises(UnboundedRay):
            gamma_bisect(p, [0.0, 0.0], [1.0, 1.0], SolverParams())
        with pytest.raises(UnboundedRay):
            gamma_ratio_test(p, [0.0, 0.0], [1.0, 1.0])

    def test_ratio_test_clamps_at_zero(self):
        p = unit_hypercube(2).problem
        got = gamma_ratio_test(p, [1.0 + 1e-10, 0.5], [2.0, 0.5])
        assert_allclose(got, [1.0 + 1e-10, 0.5])


class TestSolve:
    @pytest.mark.parametrize("n", [2, 4, 8])
    def test_model_problem(self, n):
        inst = model_problem(n)
        rep = solve(inst.problem)
        assert rep.termination is Termination.StopCriterion
        assert abs(rep.objective - inst.known_objective) <= 1e-6 * inst.known_objective
        assert np.linalg.norm(rep.solution - inst.known_solution) <= 1e-3 * np.linalg.norm(inst.known_solution)
        assert rep.iterations == len(rep.trace) - 1
        assert [r.k for r in rep.trace] == list(range(len(rep.trace)))
        assert rep.trace[-1].step_norm is None
        assert all(r.step_norm is not None for r in rep.trace[:-1])
        assert rep.total_sweeps >= sum(r.proj_sweeps for r in rep.trace)

    def test_hypercube(self):
        inst = unit_hypercube(3)
        rep = solve(inst.problem)
        assert_allclose(rep.solution, np.ones(3), atol=1e-6)

    def test_custom_start(self):
        inst = model_problem(3)
        rep = solve(inst.problem, x_start=np.full(3, 500.0))
        assert abs(rep.objective - inst.known_objective) <= 1e-6 * inst.known_objective

    def test_workers_do_not_change_result(self):
        inst = model_problem(5)
        a = solve(inst.problem, params=SolverParams(workers=1))
        b = solve(inst.problem, params=SolverParams(workers=3))
        assert a.solution.tobytes() == b.solution.tobytes()
        assert a.iterations == b.iterations

    def test_iteration_cap_attaches_report(self):
        inst = model_problem(4)
        with pytest.raises(IterationCap) as exc:
            solve(inst.problem, params=SolverParams(max_target_iters=3))
        rep = exc.value.report
        assert rep.termination is Termination.IterationCap
        assert len(rep.trace) == 4
        objs = [r.objective for r in rep.trace]
        assert all(b > a for a, b in zip(objs, objs[1:]))

    def test_apex_inside(self):
        with pytest.raises(ApexInsideM):
            solve(model_problem(4).problem, params=SolverParams(sigma=50.0))

    def test_sigma_and_delta_reported(self):
        rep = solve(unit_hypercube(2).problem, params=SolverParams(sigma=10.0))
        assert rep.sigma == 10.0
        assert rep.delta > 0


class TestOperationExamples:
    def test_direction_unit_norm(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            p = LpProblem(np.eye(5), np.ones(5), rng.normal(size=5) * 10 ** rng.uniform(-5, 5))
            assert abs(np.linalg.norm(objective_direction(p)) - 1.0) <= 1e-14

    def test_bisect_short_probe(self):
        p = unit_hypercube(2).problem
        got = gamma_bisect(p, [0.0, 0.0], [0.5, 0.5], SolverParams(eps_feas=1e-12))
        assert_allclose(got, [1.0, 1.0], atol=2e-9)

    def test_bisect_exits_immediately(self):
        p = unit_hypercube(2).problem
        got = gamma_bisect(p, [1.0, 1.0], [1.5, 1.2], SolverParams(eps_feas=1e-12))
        assert np.linalg.norm(got - 1.0) <= 1e-11


@pytest.mark.parametrize("n", [3, 6])
def test_trace_points_are_members(n):
    from apexlp import is_member
    p = model_problem(n).problem
    params = SolverParams()
    rep = solve(p, params=params)
    assert all(is_member(p, r.u, params.eps_feas) for r in rep.trace)
    assert is_member(p, rep.solution, params.eps_feas)
    assert is_member(p, rep.quest_point, params.eps_feas)
