"""Exception types shared across the library."""


class MonoresError(Exception):
    """Base class for every error raised by this package."""


class StructuralError(MonoresError):
    """Malformed or mismatched combinatorial data: bad labels, shapes, schemas."""


class DomainError(MonoresError):
    """A value outside the admissible domain of an operation."""


class SingularMatrixError(MonoresError):
    """Exact inversion failed; usually a symptom of corrupt manifold data."""


class ZeroSeriesError(MonoresError):
    """Empty support: the zero series carries no monomial data to work with."""


class ConnectivityError(MonoresError):
    """No edge path between two corners inside the required boundary set."""


class NotEffectiveError(MonoresError):
    """Propagation produced a negative exponent somewhere."""


class AlgorithmInvariantViolation(MonoresError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class BudgetExceededError(MonoresError):
    """The step budget ran out before the loop finished."""

    def __init__(self, message: str, star=None):
        super().__init__(message)
        self.star = star
