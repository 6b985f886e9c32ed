"""Exception hierarchy shared by all modules."""


class OrbigenusError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(OrbigenusError, ZeroDivisionError):
    pass


class IncompatibleModulus(OrbigenusError, ValueError):
    pass


class ZeroDenominator(OrbigenusError, ZeroDivisionError):
    pass


class NonPositiveShift(OrbigenusError, ValueError):
    pass


class NonUnitLeadingTerm(OrbigenusError, ValueError):
    pass


class NonAbelianGroup(OrbigenusError, ValueError):
    pass


class NonAbelianIsotropy(OrbigenusError, ValueError):
    pass


class PoleAtFactor(OrbigenusError, ValueError):
    pass


class NonCoprimeDenominator(OrbigenusError, ValueError):
    pass


class NonCoprimeLevel(OrbigenusError, ValueError):
    pass


class DegenerateAction(OrbigenusError, ValueError):
    pass


class ParseError(OrbigenusError, ValueError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class SchemaError(OrbigenusError, ValueError):
    """Raised when a model file violates a schema invariant.

    ``invariant`` names the violated rule (``"weights"``, ``"character"``, ...).
    """

    def __init__(self, invariant, message=None):
        self.invariant = invariant
        super().__init__(message or invariant)


class TruncationInsufficient(OrbigenusError, ValueError):
    pass


class MissingBundleData(OrbigenusError, ValueError):
    pass


class NonIntegralAge(OrbigenusError, ValueError):
    pass


class UnsupportedDenominator(OrbigenusError, ValueError):
    """A denominator mixing t and formal zeta in a non-separable way."""
