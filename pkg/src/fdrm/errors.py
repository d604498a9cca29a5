"""Exception types shared across the package."""

from __future__ import annotations


class PreconditionError(ValueError):
    """A construction or operation was called outside its domain."""


class ParseError(ValueError):
    """Malformed diagram, matrix, or code file.

    ``line`` is 1-based when known.
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class FieldMismatchError(ValueError):
    """Operands live in different fields."""


class BudgetExceededError(RuntimeError):
    """Exhaustive enumeration would exceed the codeword budget."""

    def __init__(self, needed: int, budget: int) -> None:
        self.needed = needed
        self.budget = budget
        super().__init__(f"enumeration needs {needed} codewords, budget is {budget}")
