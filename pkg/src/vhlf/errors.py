"""Exception hierarchy shared by all modules."""


class VHLFError(Exception):
    """Base class for every error raised by the library."""


class InvalidParameter(VHLFError, ValueError):
    pass


class NotPrimeError(InvalidParameter):
    pass


class EvenCharacteristicError(InvalidParameter):
    pass


class DegreeTooLargeError(InvalidParameter):
    pass


class ZeroInputError(VHLFError, ZeroDivisionError):
    pass


class ZeroNormError(InvalidParameter):
    pass


class DegenerateCompositionError(VHLFError, ZeroDivisionError):
    pass


class WrongNormError(InvalidParameter):
    pass


class IntegralityFailure(VHLFError):
    """A splitting produced a non-integral representative: ρ or ζ is wrong."""


class PoleAtOneError(VHLFError):
    pass


class CoincidentInputError(VHLFError, ValueError):
    pass


class DedupMismatch(VHLFError):
    """Equivalent relations did not collapse 4-to-1 into one square."""


class SchemaViolation(VHLFError, ValueError):
    pass


class InvolutionBroken(SchemaViolation):
    pass


class BoundExceeded(VHLFError, ValueError):
    pass


class InternalNonunit(VHLFError):
    pass


class TransportFailure(VHLFError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CountMismatch(VHLFError):
    pass
