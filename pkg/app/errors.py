"""Exception hierarchy shared by every module of the kit."""

from __future__ import annotations


class LnsError(Exception):
    """Root of all errors raised by the kit."""


class PreconditionError(LnsError, ValueError):
    """The caller broke a documented precondition."""


class TableIndexError(PreconditionError, IndexError):
    """An ST index outside 0..SEZ."""


class InvariantError(LnsError, AssertionError):
    """An internal invariant failed. Always a bug, never bad input."""


class SoundnessError(InvariantError):
    """A certified tolerance does not contain the exact value it tracks."""


class AxiomError(LnsError):
    """A table violates one of the axioms (1)-(5)."""

    def __init__(self, axiom: int, index: int | None, detail: str) -> None:
        self.axiom = axiom
        self.index = index
        where = f" at Z={index}" if index is not None else ""
        super().__init__(f"axiom ({axiom}) violated{where}: {detail}")


class TableFormatError(LnsError, ValueError):
    """An LNS1 table file is malformed."""


class ExpressionError(LnsError, ValueError):
    """An expression could not be parsed or certified."""

    def __init__(self, message: str, position: int | None = None) -> None:
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnsupportedOperationError(ExpressionError):
    """Subtraction: Level 1 has no subtraction operation."""
