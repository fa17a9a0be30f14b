"""Exception types shared across the package."""


class MachineParseError(ValueError):
    """A machine description failed to parse or validate."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class ClosureBudgetExceeded(RuntimeError):
    """Closure enumeration hit the element limit before stabilizing."""

    def __init__(self, limit, partial_count):
        self.limit = limit
        self.partial_count = partial_count
        super().__init__(
            f"closure exceeds limit {limit} (enumerated {partial_count} elements)"
        )


class NotSimpleError(ValueError):
    """A structural precondition (simplicity of the closure) is not met."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; signals a bug or bad input."""
