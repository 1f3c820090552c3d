"""Shared exception types."""


class ContractViolation(Exception):
    """A documented precondition of an operation was violated by the caller."""


class EmptyHeapError(Exception):
    """Extract or find-min was called on an empty heap."""


class GraphParseError(ValueError):
    """Malformed graph input. Carries the offending 1-based line number."""

    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class UsageError(Exception):
    """Bad command-line usage or invalid parameter combination."""
