"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
1 parse error, 2 validation error, 3 cap exceeded, 4 coefficient mismatch.
"""

from __future__ import annotations


class BredonError(Exception):
    exit_code = 2


# -- parse errors (exit 1) ---------------------------------------------------

class ParseError(BredonError):
    exit_code = 1

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ComplexSyntaxError(ParseError):
    pass


class UnknownGroup(ParseError):
    pass


class UnknownCell(ParseError):
    pass


class BadHomomorphism(ParseError):
    def __init__(self, message: str, line: int | None = None, pair=None):
        self.pair = pair
        super().__init__(message, line)


class DimensionMismatch(ParseError):
    pass


class NonInvertibleGenerator(ParseError):
    pass


# -- validation errors (exit 2) ----------------------------------------------

class NotAComplex(BredonError):
    """Consecutive differentials do not compose to zero."""


class CheckFailed(BredonError):
    pass


# -- caps (exit 3) -------------------------------------------------------------

class CapExceeded(BredonError):
    exit_code = 3


class ClosureExceedsCap(CapExceeded):
    pass


# -- coefficient problems (exit 4) ----------------------------------------------

class CoefficientError(BredonError):
    exit_code = 4


class NonInjectiveHomomorphism(CoefficientError):
    pass


class NotVirtualCharacter(CoefficientError):
    pass


class MissingExtensionData(CoefficientError):
    pass


class ExtensionMismatch(CoefficientError):
    pass


class ConditionDViolated(CoefficientError):
    pass


class UnsupportedVariance(CoefficientError):
    pass
