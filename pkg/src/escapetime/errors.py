"""Exception types shared across the package."""


class EscapeTimeError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(EscapeTimeError, ZeroDivisionError):
    pass


class NotReal(EscapeTimeError, ValueError):
    pass


class UnsupportedDegree(EscapeTimeError, ValueError):
    pass


class PrecisionCapExceeded(EscapeTimeError, RuntimeError):
    """A refinement loop hit the precision cap. Signals a bug, not an answer."""


class CertificateFailure(EscapeTimeError, RuntimeError):
    pass


class ParseError(EscapeTimeError, ValueError):
    pass


class StartOutside(EscapeTimeError, ValueError):
    pass


class EmpiricalTimeout(EscapeTimeError, RuntimeError):
    pass


class Undecided(EscapeTimeError, RuntimeError):
    pass


class GammaNotExpanding(EscapeTimeError, ValueError):
    pass


class GammaNotShrinking(EscapeTimeError, ValueError):
    pass


class BudgetExceeded(EscapeTimeError, AssertionError):
    pass


class TargetNotInClosure(EscapeTimeError, ValueError):
    pass


class NotFoundWithinCap(EscapeTimeError, RuntimeError):
    pass


class NotModulusOne(EscapeTimeError, ValueError):
    pass


class BoundViolation(EscapeTimeError, AssertionError):
    pass
