"""Exception hierarchy shared by every module."""


class GraphIdealError(Exception):
    """Base class for all library errors."""


class ParseError(GraphIdealError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MalformedLine(ParseError):
    pass


class LoopEdge(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class VertexOutOfRange(GraphIdealError):
    """Raised for endpoints or vertex sets outside 1..n.

    When raised by the parser ``line`` carries the offending line number.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class ResourceLimit(GraphIdealError):
    pass


class Disconnected(GraphIdealError):
    pass


class FieldMismatch(GraphIdealError):
    pass


class MapUnavailable(GraphIdealError):
    pass


class RegimeUnsupported(GraphIdealError):
    pass


class NotSupported(GraphIdealError):
    pass


class PreconditionViolated(GraphIdealError):
    pass


class LinearSyzygyPresent(GraphIdealError):
    pass
