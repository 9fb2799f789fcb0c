"""Exception hierarchy shared across the package."""


class HetcompError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(HetcompError):
    """Syntax or static-semantics error in an input text (DOT, script, query)."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None,
                 source: str | None = None):
        self.message = message
        self.line = line
        self.col = col
        self.source = source
        loc = ""
        if line is not None:
            loc = f"{source or '<input>'}:{line}"
            if col is not None:
                loc += f":{col}"
            loc += ": "
        elif source is not None:
            loc = f"{source}: "
        super().__init__(loc + message)


class AlgebraError(HetcompError):
    """Violation of an operator precondition on processes or nets."""


class SemanticsError(HetcompError):
    """Inconsistent global state handed to the interaction semantics."""


class StateBoundExceeded(HetcompError):
    """Raised when exploration would exceed the configured state bound."""

    def __init__(self, bound: int, frontier: int):
        self.bound = bound
        self.frontier = frontier
        super().__init__(
            f"state-space bound of {bound} states exceeded (frontier size {frontier})")


class QueryError(HetcompError):
    """A query references an instance or a local state the net does not have."""


class EmitError(HetcompError):
    """The requested output format cannot represent the given model."""


class ScriptError(HetcompError):
    """Runtime failure while executing a script statement."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.message = message
        self.line = line
        self.source = source
        loc = f"{source or '<script>'}:{line}: " if line is not None else ""
        super().__init__(loc + message)
