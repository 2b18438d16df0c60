"""Exception types raised across the package."""


class CuttopError(Exception):
    pass


# complex construction / parsing
class ComplexError(CuttopError):
    pass


class MixedDimension(ComplexError):
    pass


class DegenerateSimplex(ComplexError):
    pass


class EmptyComplex(ComplexError):
    pass


class ParseError(ComplexError):
    pass


class BadSpec(CuttopError):
    pass


# algebra
class BadDegree(CuttopError):
    pass


class NotACocycle(CuttopError):
    pass


class NotACycle(CuttopError):
    pass


class DimensionMismatch(CuttopError):
    pass


# searches and constructions
class PreconditionViolated(CuttopError):
    pass


class BudgetExceeded(CuttopError):
    """Raised when a candidate budget runs out; ``partial`` holds what was found."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class SearchExhausted(CuttopError):
    def __init__(self, message, log=None):
        super().__init__(message)
        self.log = list(log or [])


class TrivialClass(CuttopError):
    pass


class EmptySurface(CuttopError):
    pass


class CannotSeparate(CuttopError):
    pass


class NoWrapFixpoint(CuttopError):
    pass


class DisconnectedSide(CuttopError):
    pass


class CoboundaryContradiction(CuttopError):
    """A circle map that should wind was found to be nullhomotopic."""
