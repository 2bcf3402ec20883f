"""Exception hierarchy shared by all eqseq modules."""


class EqseqError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgument(EqseqError, ValueError):
    pass


class EvenModulus(InvalidArgument):
    pass


class ModulusTooSmall(InvalidArgument):
    pass


class NotPrime(InvalidArgument):
    pass


class DivisibilityViolation(InvalidArgument):
    pass


class NonInvertible(InvalidArgument):
    pass


class OutOfRange(InvalidArgument):
    pass


class ShiftOutOfRange(InvalidArgument):
    pass


class TableTooLarge(EqseqError):
    pass


class BudgetExceeded(EqseqError):
    pass


class ConsistencyFailure(EqseqError):
    """An internal cross-check disagreed; points at an arithmetic bug."""


class RoundingResidueTooLarge(ConsistencyFailure):
    pass


class ToleranceExceeded(ConsistencyFailure):
    pass


class CharacterOrderMismatch(InvalidArgument):
    pass


class NoUnitRepresentative(ConsistencyFailure):
    pass
