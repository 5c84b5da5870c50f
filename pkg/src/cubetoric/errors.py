"""Exception types shared across the package."""


class CubetoricError(Exception):
    """Base class for all package-specific errors."""


class InvalidMatrixError(CubetoricError):
    """A characteristic matrix failed the vertex-minor validity test.

    Carries the offending :class:`~cubetoric.cube.ValidationReport` when one
    is available.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class EngineDefectError(CubetoricError):
    """An internal cross-check failed; the engine itself is suspect.

    Raised when two independent computations of the same quantity disagree
    (e.g. series inversion vs. the closed product formula).  This is never a
    user error.
    """


class ReductionGuardError(EngineDefectError):
    """A reduction or completion loop exceeded its configured iteration guard."""
