"""Exception hierarchy shared by all modules."""


class DigraphError(ValueError):
    """Base class for every error raised by this package."""


class SelfLoop(DigraphError):
    pass


class OutOfRange(DigraphError):
    pass


class MissingEdge(DigraphError):
    pass


class DimensionMismatch(DigraphError):
    pass


class NotCoReachable(DigraphError):
    """Some vertex has no directed path to the requested target."""


class TooLarge(DigraphError):
    """Exponential-time oracle invoked on a digraph above its size guard."""


class BadLength(DigraphError):
    pass


class DiagonalMinor(DigraphError):
    pass


class InfiniteDistance(DigraphError):
    pass


class NotDistinguishable(DigraphError):
    pass


class NonSquare(DigraphError):
    pass


class ParseError(DigraphError):
    """Malformed graph document; message carries line/column when known."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column
