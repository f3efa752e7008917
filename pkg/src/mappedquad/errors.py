"""Exception types raised by the library."""


class MappedQuadError(Exception):
    """Base class for all library errors."""


class DomainError(MappedQuadError, ValueError):
    """An argument lies outside the domain of a map or node family."""


class NodeGenerationError(MappedQuadError, RuntimeError):
    """A random node set could not be drawn within the attempt budget."""


class RankDeficiencyError(MappedQuadError, ArithmeticError):
    """The (weighted) design matrix is numerically rank deficient."""

    def __init__(self, message, rank=None, cols=None):
        super().__init__(message)
        self.rank = rank
        self.cols = cols


class SingularSystemError(RankDeficiencyError):
    """A square interpolation system is numerically singular."""


class MomentConvergenceError(MappedQuadError, ArithmeticError):
    """Moment refinement did not settle within the sample budget."""


class IntegrationBudgetError(MappedQuadError, ArithmeticError):
    """Adaptive integration exhausted its panel budget."""
