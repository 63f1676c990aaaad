"""Exception hierarchy.

Two families matter to callers: :class:`InputError` for data that cannot be
processed as given (bad word, non-interlacing zeros, ...) and
:class:`SolverError` for numerical failures. The CLI maps them to exit
codes 2 and 3.
"""


class PonceletError(Exception):
    """Base class for all errors raised by this package."""


class InputError(PonceletError, ValueError):
    """The input violates a precondition."""


class SolverError(PonceletError, RuntimeError):
    """A numerical procedure failed."""


class DegreeError(InputError):
    pass


class NotSchurStableError(InputError):
    """A polynomial has a root on or outside the unit circle."""


class DegenerateMeasureError(InputError):
    pass


class IllConditionedError(InputError):
    pass


class NotSchurError(InputError):
    """A function fails the Schur bound |f| <= 1."""


class PoleError(InputError):
    pass


class NotContractionError(InputError):
    pass


class NotDefectOneError(InputError):
    pass


class NotCompletelyNonUnitaryError(InputError):
    pass


class DegenerateParametersError(InputError):
    pass


class NotRealizableError(InputError):
    pass


class ProductConditionError(InputError):
    pass


class DegenerateTriangleError(InputError):
    pass


class GeometryError(InputError):
    pass


class ConvergenceError(SolverError):
    """An iteration hit its cap.

    ``residuals`` holds whatever per-item residuals were available when the
    iteration stopped.
    """

    def __init__(self, msg, residuals=None):
        super().__init__(msg)
        self.residuals = residuals


class InversionError(SolverError):
    pass


class InternalConsistencyError(SolverError):
    """An internal cross-check between two computation routes disagreed."""
