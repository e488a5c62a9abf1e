"""Exception hierarchy shared by the engine and the CLI."""


class ArithCurvError(Exception):
    """Base class for all engine errors."""


class ExprParseError(ArithCurvError, ValueError):
    """Raised when an expression string does not parse."""


class NotInvertibleError(ArithCurvError, ZeroDivisionError):
    """Raised when an element that must be inverted is zero or a zero divisor."""


class PrecisionError(ArithCurvError, ValueError):
    """Raised when a p-adic precondition fails (wrong prime, non-unit, u not divisible by p)."""


class AlgebraMismatchError(ArithCurvError, ValueError):
    """Raised when elements of different quotient algebras are combined."""


class TermLimitError(ArithCurvError, OverflowError):
    """Raised when a polynomial exceeds the ARITHCURV_MAX_TERMS guard."""
