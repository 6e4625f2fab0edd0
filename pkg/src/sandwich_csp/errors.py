"""Exception hierarchy shared by every module."""


class SandwichError(Exception):
    """Base class for all errors raised by this package."""


class OverlapError(SandwichError, ValueError):
    """A pair is both forced and forbidden."""


class RangeError(SandwichError, ValueError):
    """A vertex or parameter is out of range (includes self-pairs)."""


class SizeError(SandwichError, ValueError):
    """An input exceeds the size cap of an exponential procedure."""


class SignatureError(SandwichError, ValueError):
    """Relation symbols or arities do not match."""


class NotBipartiteError(SandwichError, ValueError):
    pass


class ParseError(SandwichError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(SandwichError, TimeoutError):
    """A search ran out of its node budget before reaching a verdict."""

    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"search budget of {nodes} nodes exhausted")


class LoopAtomError(SandwichError, ValueError):
    """A gadget produced a reflexive atom, which no loopless template satisfies."""
