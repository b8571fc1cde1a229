"""Exception hierarchy shared by every module."""


class FAError(Exception):
    """Base class for all domain errors raised by the workbench."""


class ParseError(FAError, SyntaxError):
    """Malformed surface syntax, with 1-based line and column."""

    def __init__(self, message: str, line: int, column: int, text: str = ""):
        SyntaxError.__init__(self, f"{message} (line {line}, column {column})")
        self.msg = message
        self.lineno = line
        self.offset = column
        self.text = text

    @property
    def line(self) -> int:
        return self.lineno

    @property
    def column(self) -> int:
        return self.offset

    def __str__(self) -> str:
        return f"{self.msg} (line {self.lineno}, column {self.offset})"


class UnboundVariable(FAError):
    def __init__(self, name: str):
        super().__init__(f"unbound variable {name!r}")
        self.name = name


class BudgetExceeded(FAError):
    """Evaluation hit a resource limit. ``kind`` is ``"bits"`` or ``"steps"``."""

    def __init__(self, kind: str, limit: int, needed: int):
        super().__init__(f"{kind} budget exceeded: needed {needed}, limit {limit}")
        self.kind = kind
        self.limit = limit
        self.needed = needed


class NotSigmaB1(FAError):
    pass


class NotASequence(FAError):
    pass


class IndexOutOfRange(FAError, IndexError):
    pass
