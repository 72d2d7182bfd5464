"""Exception types raised across the package."""


class DynIrrError(Exception):
    """Base class for all package errors."""


class NotOddCharacteristic(DynIrrError, ValueError):
    pass


class InversionOfZero(DynIrrError, ZeroDivisionError):
    pass


class ElementFromWrongField(DynIrrError, ValueError):
    pass


class ModulusNotIrreducible(DynIrrError, ValueError):
    pass


class ChainTooLong(DynIrrError, ValueError):
    pass


class MixedFields(DynIrrError, ValueError):
    pass


class InternalBoundExceeded(DynIrrError, RuntimeError):
    """A proven bound was violated; this indicates a bug."""


class GuardExceeded(DynIrrError, ValueError):
    pass


class CommonCViolated(DynIrrError, ValueError):
    pass


class HIsZero(DynIrrError, ValueError):
    pass


class HIsSquare(DynIrrError, ValueError):
    pass


class PNotOneModFour(DynIrrError, ValueError):
    pass


class NoAdmissibleA(DynIrrError, RuntimeError):
    pass


class NoAdmissibleB(DynIrrError, RuntimeError):
    pass


class ParseError(DynIrrError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CoefficientOutOfRange(ParseError):
    pass


class BadModulus(ParseError):
    pass
