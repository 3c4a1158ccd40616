"""
Exception hierarchy for the prime extension toolkit.
"""


class PrimeExtensionError(Exception):
    """Base class for every error raised by this package."""


class GraphInputError(PrimeExtensionError, ValueError):
    """A graph, vertex set or partition handed to an operation is malformed."""


class Graph6ParseError(GraphInputError):
    """graph6 text could not be decoded; `offset` is the 0-based byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class EdgeListParseError(GraphInputError):
    """Edge-list text could not be decoded; `line` is 1-based."""

    def __init__(self, message: str, line: int):
        super().__init__(f"{message} (line {line})")
        self.line = line


class DomainError(PrimeExtensionError, ValueError):
    """An operation was called outside its precondition."""


class SearchRefusedError(PrimeExtensionError, RuntimeError):
    """An exhaustive search was refused because it exceeds a configured cap."""

    def __init__(self, message: str, cap: int, size: int):
        super().__init__(message)
        self.cap = cap
        self.size = size


class InvariantError(PrimeExtensionError, AssertionError):
    """A structural claim the algorithms rely on did not hold. Always a bug."""
