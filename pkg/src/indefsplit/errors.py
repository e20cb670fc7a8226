"""Exception types raised across the package."""


class ParameterError(ValueError):
    """An argument is outside its documented domain."""


class NumericalError(RuntimeError):
    """Base class for failures that come from the numbers, not the caller."""


class SingularMatrixError(NumericalError):
    """A matrix that must be invertible is singular within tolerance.

    ``inertia`` carries the computed inertia when one is available and
    ``pivot`` the index of the offending pivot.
    """

    def __init__(self, message, inertia=None, pivot=None):
        super().__init__(message)
        self.inertia = inertia
        self.pivot = pivot


class NotPositiveDefiniteError(NumericalError):
    def __init__(self, message, inertia=None):
        super().__init__(message)
        self.inertia = inertia


class ConvergenceError(NumericalError):
    """An iterative kernel hit its iteration cap."""


class GeneratorError(RuntimeError):
    """A generated test problem failed its own post-condition."""
