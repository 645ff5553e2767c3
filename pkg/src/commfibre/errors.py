"""Exception types shared across the package.

Every error carries a machine-readable ``kind`` string; the CLI and the
HTTP service map kinds onto exit codes / status codes.
"""

from __future__ import annotations


class CommFibreError(Exception):
    """Base class for all package errors."""

    kind = "error"

    def __init__(self, message: str, **info):
        super().__init__(message)
        self.message = message
        self.info = info


class InputError(CommFibreError):
    """Bad user input (malformed file, invalid field, broken algebra)."""

    kind = "input-error"


class NotPrimeError(InputError):
    kind = "not-prime"


class EvenCharacteristicError(InputError):
    kind = "even-p"


class ReducibleModulusError(InputError):
    kind = "reducible-modulus"


class ParseError(InputError):
    """Algebra-file syntax or semantic error; carries a 1-based line number."""

    kind = "parse-error"

    def __init__(self, message: str, line: int, kind: str | None = None):
        super().__init__(f"line {line}: {message}", line=line)
        self.line = line
        if kind is not None:
            self.kind = kind


class JacobiViolationError(InputError):
    kind = "jacobi-violation"


class NotNilpotentError(InputError):
    kind = "not-nilpotent"


class ClassTooLargeError(InputError):
    kind = "class-too-large"


class AbelianAlgebraError(InputError):
    kind = "abelian-algebra"


class UnknownBuiltinError(InputError):
    kind = "unknown-name"


class BadParamError(InputError):
    kind = "bad-param"


class DimensionMismatchError(InputError):
    kind = "dimension-mismatch"


class NotSkewError(InputError):
    kind = "not-skew"


class UnsupportedClassError(InputError):
    """Oracle restriction: truncated group law covers classes 2 and 3 only."""

    kind = "class-unsupported"


class MismatchedTError(InputError):
    kind = "mismatched-t"


class BudgetExceededError(CommFibreError):
    kind = "budget-exceeded"


class ConsistencyError(CommFibreError):
    """Internal cross-check failed (e.g. a count came out non-integral).

    This is never a user error: it signals a bug and is deliberately fatal.
    """

    kind = "internal-consistency"
