"""Exception hierarchy shared by every module of the toolkit."""
from __future__ import annotations


class QROError(Exception):
    pass


class ConfigError(QROError, ValueError):
    pass


class GraphFormatError(QROError, ValueError):
    """A poag v1 document or graph record set that cannot be accepted.

    ``line`` is the 1-based line of the offending record when the error comes
    from parsing a file, otherwise ``None``.
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParseError(GraphFormatError):
    pass


class SelfLoopError(GraphFormatError):
    pass


class DuplicateEdgeError(GraphFormatError):
    pass


class VertexOutOfRangeError(GraphFormatError):
    pass


class NotFullyOrientedError(QROError, ValueError):
    pass


class PatternTooLargeError(QROError):
    pass


class TooLargeForExactError(QROError):
    pass


class CountOverflowError(QROError, OverflowError):
    pass


class ConvergenceFailure(QROError, RuntimeError):
    def __init__(self, message: str, residual: float, iterations: int) -> None:
        self.residual = residual
        self.iterations = iterations
        super().__init__(f"{message} (residual={residual:.3e} after {iterations} iterations)")


class IncompleteInputsError(QROError):
    pass
