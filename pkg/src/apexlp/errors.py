"""Exception hierarchy shared by every apexlp module."""


class ApexError(Exception):
    """Base class for all errors raised by apexlp."""


class ProblemError(ApexError, ValueError):
    """The LP data violates a structural invariant."""


class DimensionMismatch(ProblemError):
    def __init__(self, what, expected, got):
        self.what = what
        self.expected = expected
        self.got = got
        super().__init__(f"{what}: expected {expected}, got {got}")


class ZeroRow(ProblemError):
    def __init__(self, row, line_no=None):
        self.row = row
        self.line_no = line_no
        where = f" (line {line_no})" if line_no is not None else ""
        super().__init__(f"constraint row {row} is the zero vector{where}")


class ZeroObjective(ProblemError):
    def __init__(self, line_no=None):
        self.line_no = line_no
        where = f" (line {line_no})" if line_no is not None else ""
        super().__init__(f"objective vector c is zero{where}")


class NotConverged(ApexError):
    """Pseudo-projection hit its sweep cap.

    The partial :class:`~apexlp.fejer.ProjectionResult` is attached as
    ``result`` so the caller can inspect the last point and step norm.
    """

    def __init__(self, result):
        self.result = result
        super().__init__(
            f"pseudo-projection not converged after {result.sweeps} sweeps "
            f"(last step norm {result.last_step_norm:.3e})"
        )


class ApexInsideM(ApexError):
    def __init__(self, sigma):
        self.sigma = sigma
        super().__init__(
            f"apex point lies inside the polytope for sigma={sigma!r}; "
            "increase sigma"
        )


class SolveFailure(ApexError):
    """Base for failures that carry a best-so-far :class:`SolveReport`."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class ProjectionFailure(SolveFailure):
    pass


class IterationCap(SolveFailure):
    pass


class StepDegenerate(ApexError):
    pass


class UnboundedRay(ApexError):
    pass


class SizeGuard(ApexError):
    pass


class Infeasible(ApexError):
    pass


class Unbounded(ApexError):
    pass


class ParseError(ApexError, ValueError):
    def __init__(self, line_no, reason):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")
