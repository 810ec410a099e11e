"""Exception hierarchy.

Validation errors derive from :class:`ValidationError` (CLI exit code 2),
numerical failures from :class:`NumericalError` (CLI exit code 3).
"""


class StableDensityError(Exception):
    pass


class ValidationError(StableDensityError, ValueError):
    pass


class AlphaOutOfRange(ValidationError):
    pass


class ThetaOutOfRange(ValidationError):
    pass


class LambdaNonPositive(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class ZeroCoordinate(ValidationError):
    pass


class ThetaBoundary(ValidationError):
    pass


class AlphaOne(ValidationError):
    pass


class NumericalError(StableDensityError, ArithmeticError):
    pass


class DivergedTerm(NumericalError):
    pass


class SolverError(NumericalError):
    pass


class NoBracket(SolverError):
    pass


class NotConverged(NumericalError):
    pass


class DegenerateAtom(NumericalError):
    """The alpha=1, |theta|=1 law is a point mass; it has no density at the atom."""
