"""Apex method for linear programming."""
from .errors import (ApexError, ApexInsideM, DimensionMismatch, Infeasible,
                     IterationCap, NotConverged, ParseError, ProjectionFailure,
                     SizeGuard, StepDegenerate, Unbounded, UnboundedRay,
                     ZeroObjective, ZeroRow)
from .fejer import (ProjectionResult, boundary_tolerance, displacement,
                    fejer_step, parallel_displacement, pseudo_projection,
                    violation_correction)
from .model import (Iterate, LpProblem, SolverParams, is_member, objective,
                    residuals, validate)
from .target import (SolveReport, TargetTraceRecord, Termination, apex_point,
                     gamma_bisect, gamma_ratio_test, initial_approximation,
                     objective_direction, solve)

__version__ = "0.1.0"
