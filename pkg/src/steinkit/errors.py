"""Exception hierarchy shared by every steinkit module."""


class SteinError(Exception):
    """Base class for all steinkit errors."""


class DimensionError(SteinError, ValueError):
    pass


class NonSquareError(DimensionError):
    pass


class NonRealInput(SteinError, ValueError):
    pass


class OrderTooLarge(SteinError, ValueError):
    pass


class ConvergenceError(SteinError, ArithmeticError):
    """An inner numerical kernel (eigenvalues, SVD) failed to converge."""


class NotSolvable(SteinError):
    pass


# Alias used by the linear-system layer.
Unsolvable = NotSolvable


class NotUnique(SteinError):
    pass


class SingularDenominator(NotUnique):
    """The polynomial denominator of a closed-form solution is singular."""


class PrecheckFailed(SteinError):
    pass


class IterationFailure(SteinError):
    """Raised by an iteration that stopped without meeting its tolerance.

    The partial :class:`~steinkit.iterative.IterationTrace` is attached as
    ``trace`` so callers can inspect the residual history.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class NoConvergence(IterationFailure):
    pass


class DivergenceDetected(IterationFailure):
    pass
