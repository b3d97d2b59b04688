"""Exception types raised across the package."""


class SemitoricError(Exception):
    """Base class for all errors raised by this package."""


class NotCartan(SemitoricError, ValueError):
    pass


class NotFiniteType(SemitoricError, ValueError):
    pass


class TooManyWords(SemitoricError, RuntimeError):
    pass


class DimensionMismatch(SemitoricError, ValueError):
    pass


class UnsupportedLocalType(SemitoricError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unsupported local type"


class NotSameGroup(SemitoricError, ValueError):
    pass


class WeightNotDominant(SemitoricError, ValueError):
    pass


class PropagationConflict(SemitoricError, RuntimeError):
    pass


class NotTypeA(SemitoricError, ValueError):
    pass


class NotStandardWord(SemitoricError, ValueError):
    pass


class InconsistentCounts(SemitoricError, RuntimeError):
    pass


class NotInG0(SemitoricError, ArithmeticError):
    """A leading principal minor vanishes, so no Gaussian decomposition exists."""


class NotSubtractionFree(SemitoricError, ValueError):
    pass


class ValidationFailed(SemitoricError, RuntimeError):
    pass


class DimensionTooLarge(SemitoricError, ValueError):
    pass


class PreconditionNotMet(SemitoricError, ValueError):
    pass


class Cancelled(SemitoricError, RuntimeError):
    """Raised when a caller-supplied cancellation event is set."""


class CrystalOverflow(SemitoricError, RuntimeError):
    """Closure under the Kashiwara operators exceeded the element limit."""
