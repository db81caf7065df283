"""Exception types raised across the package.

Each class carries a short ``code`` so CLI and JSON output can name the
failure without string matching.
"""


class QFockError(Exception):
    code = "ERROR"


class NonDivisibleError(QFockError, ArithmeticError):
    code = "NON_DIVISIBLE"


class ZeroPointError(QFockError, ZeroDivisionError):
    code = "ZERO_POINT"


class IndexRangeError(QFockError, IndexError):
    code = "INDEX_RANGE"


class BadQError(QFockError, ValueError):
    code = "BAD_Q"


class GradeUndefinedError(QFockError, ValueError):
    code = "GRADE_UNDEFINED"


class RequiresNEqMError(QFockError, ValueError):
    code = "REQUIRES_N_EQ_M"


class MalformedRootError(QFockError, ValueError):
    code = "MALFORMED_ROOT"


class UnderdeterminedError(QFockError, ArithmeticError):
    code = "UNDERDETERMINED"


class InconsistentError(QFockError, ArithmeticError):
    code = "INCONSISTENT"


class UnresolvedAtomError(QFockError, KeyError):
    code = "UNRESOLVED_ATOM"

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ArityError(QFockError, ValueError):
    code = "ARITY"


class DSLSyntaxError(QFockError, SyntaxError):
    """Parse failure at a 0-based character ``position``."""

    code = "SYNTAX"

    def __init__(self, message, position, expected=None, text=None):
        super().__init__(message)
        self.msg = message
        self.position = position
        self.expected = expected
        self.text = text

    def __str__(self):
        out = f"{self.msg} at position {self.position}"
        if self.expected:
            out += f" (expected {self.expected})"
        if self.text is not None:
            out += f"\n  {self.text}\n  {' ' * self.position}^"
        return out
