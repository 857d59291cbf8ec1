"""Exception hierarchy shared by all modules."""


class TorsionGammaError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(TorsionGammaError, ValueError):
    pass


class UnsupportedDegree(TorsionGammaError, ValueError):
    pass


class UnsupportedSize(TorsionGammaError, ValueError):
    pass


class NonInvertible(TorsionGammaError, ArithmeticError):
    pass


class DimensionMismatch(TorsionGammaError, ValueError):
    pass


class NotPrimitive(TorsionGammaError, ValueError):
    pass


class NotIsotropic(TorsionGammaError, ValueError):
    pass


class NotSimilitude(TorsionGammaError, ValueError):
    pass


class NonUnitMultiplier(TorsionGammaError, ValueError):
    pass


class NotInAlgebra(TorsionGammaError, ValueError):
    pass


class TooLarge(TorsionGammaError, ValueError):
    """A brute-force computation would exceed its size guard."""


class TooManyFactors(TooLarge):
    pass


class EmptySubset(TorsionGammaError, ValueError):
    pass


class BoundViolation(TorsionGammaError, ValueError):
    pass


class InvalidFiltration(TorsionGammaError, ValueError):
    pass


class ShapeMismatch(TorsionGammaError, ValueError):
    pass


class UnknownSuite(TorsionGammaError, ValueError):
    pass


class ParseError(TorsionGammaError, ValueError):
    """Malformed configuration document; message names the line and field."""


class InvariantViolation(TorsionGammaError, ValueError):
    pass
