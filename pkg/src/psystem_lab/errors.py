"""Exception types shared across the library."""


class PSystemError(Exception):
    """Base class for all library errors."""


class DomainError(PSystemError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class VacuumError(PSystemError):
    """A construction would cross the vacuum boundary (density -> 0)."""


class VacuumEncountered(VacuumError):
    """A grid simulation produced a vacuum state and must halt."""


class ConvergenceError(PSystemError):
    """A root search failed to bracket or converge within its budget."""


class SearchError(PSystemError):
    """A parameter scan exhausted its budget without finding a witness."""


class QuadratureError(PSystemError):
    """Adaptive integration could not reach the requested tolerance."""


class DegenerateError(PSystemError):
    """A sign-case analysis is not applicable at the given base point."""
