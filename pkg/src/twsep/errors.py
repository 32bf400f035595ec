"""Exception types. CLI exit codes key off these classes."""


class TwsepError(Exception):
    pass


class GraphFormatError(TwsepError, ValueError):
    """Malformed graph input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InputError(TwsepError, ValueError):
    """Well-formed input that violates an operation's precondition."""


class SizeLimitError(TwsepError):
    def __init__(self, what: str, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"{what}: graph has {n} vertices, limit is {limit}")


class InconsistencyError(TwsepError):
    """An internal guarantee failed; indicates a bug or a corrupt input object."""
