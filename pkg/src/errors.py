"""
Error hierarchy for excross

Every error names the violated axiom or constraint and carries a witness
(triple, row, pair, basis label) that reproduces the failure.

Input errors map to CLI exit status 2, axiom and verification failures to 1.
"""

from typing import Any, Optional


class ExcrossError(ValueError):
    """Base class; `witness` is whatever reproduces the failure."""

    exit_code = 1

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# Input errors (exit 2)
# ---------------------------------------------------------------------------

class InputError(ExcrossError):
    exit_code = 2


class DocumentError(InputError):
    """Malformed JSON (line/column) or schema violation (field path)."""


class BadLabels(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class BaseSizeMismatch(InputError):
    pass


class GroupMismatch(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotSquare(InputError):
    pass


# a group table that is not a group is bad input
class NonLatinSquare(InputError):
    pass


class NonAssociative(InputError):
    pass


class NoIdentity(InputError):
    pass


# ---------------------------------------------------------------------------
# Axiom and verification errors (exit 1)
# ---------------------------------------------------------------------------

class InvalidAction(ExcrossError):
    pass


class NotAnIdeal(ExcrossError):
    pass


class NonAssociativeL(ExcrossError):
    pass


class ProductEscapesIdeal(ExcrossError):
    pass


class SourceMismatch(ExcrossError):
    pass


class NotWellDefined(ExcrossError):
    pass


class GroupTooLarge(ExcrossError):
    pass


class BoundTooSmall(ExcrossError):
    pass


class OracleBudgetExceeded(ExcrossError):
    pass
