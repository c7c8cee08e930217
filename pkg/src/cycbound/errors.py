"""Exception types shared across the package."""


class CycboundError(Exception):
    pass


class GcdError(CycboundError, ValueError):
    """Raised when gcd(n, q) != 1."""


class NotPrimeError(CycboundError, ValueError):
    pass


class FieldMismatch(CycboundError, ValueError):
    pass


class RangeError(CycboundError, ValueError):
    pass


class CoefficientNotInBaseField(CycboundError, ArithmeticError):
    pass


class LengthMismatch(CycboundError, ValueError):
    pass


class LengthError(CycboundError, ValueError):
    pass


class EmptyPattern(CycboundError, ValueError):
    pass


class PatternSyntaxError(CycboundError, ValueError):
    pass


class CapExceeded(CycboundError, RuntimeError):
    """A desk-scale enumeration limit would be exceeded."""


class ParamError(CycboundError, ValueError):
    pass


class NoNonzero(CycboundError, ValueError):
    pass


class NotFound(CycboundError, LookupError):
    pass
