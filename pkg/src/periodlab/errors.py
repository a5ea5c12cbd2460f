"""Exception taxonomy shared by all periodlab modules."""


class PeriodLabError(Exception):
    """Base class for all periodlab errors."""


class DomainError(PeriodLabError, ValueError):
    """Input outside the mathematical domain of an operation."""


class NoMinimumError(DomainError):
    """The supplied potential has no local minimum with positive curvature."""


class SeparatrixError(DomainError):
    """Energy at or beyond a barrier: the motion is not periodic there."""


class ConvergenceError(PeriodLabError, RuntimeError):
    """A numerical iteration failed to reach its tolerance."""
