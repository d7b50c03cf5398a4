"""Exception hierarchy shared by all modules.

The CLI maps ``ValidationError`` to exit code 1 and ``InvariantViolation``
to exit code 2.
"""


class CremonaError(Exception):
    """Base class for every error raised by the library."""


class ValidationError(CremonaError):
    """Bad input: a precondition of an operation is not met."""


class ParseError(ValidationError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DegenerateConfiguration(ValidationError):
    """Collinear points, shared fibres, wrong-rank linear systems."""


class BasePointOutsideField(ValidationError):
    """A base point has coordinates outside the Gaussian rationals."""


class InfinitelyNearBasePoints(ValidationError):
    """Proper base points do not account for the full multiplicity budget."""


class UnsupportedMap(ValidationError):
    """The operation is not implemented for this kind of map."""


class ChartInfinity(ValidationError):
    """The point lies on c1 = 0, the infinity of the pencil chart."""


class UnknownLetter(ValidationError):
    """An amalgam letter could not be certified in either factor."""


class SymbolicOnly(ValidationError):
    """A disc boundary cannot be composed in P^2 coordinates."""


class InvariantViolation(CremonaError):
    """An internal consistency check failed; this indicates a bug."""
